#include <doctest.h>

#include <sstream>

#include "scorelab/io.hpp"

using namespace scorelab;

TEST_CASE("forecast CSV parsing") {
  std::istringstream good("# comment\nf1,f2,f3\n0.2,0.3,0.5\n\n0.1,0.1,0.8\n");
  const auto forecasts = read_forecasts_csv(good, "good.csv");
  REQUIRE(forecasts.size() == 2);
  CHECK(forecasts[0].size() == 3);
  CHECK(forecasts[1][2] == doctest::Approx(0.8));

  std::istringstream bad_header("a,b\n0.5,0.5\n");
  CHECK_THROWS_WITH_AS(read_forecasts_csv(bad_header, "h.csv"),
                       doctest::Contains("f1,...,fm"), std::invalid_argument);

  std::istringstream ragged("f1,f2\n0.5,0.5\n0.5\n");
  CHECK_THROWS_WITH_AS(read_forecasts_csv(ragged, "r.csv"),
                       doctest::Contains("r.csv:3"), std::invalid_argument);

  std::istringstream bad_number("f1,f2\n0.5,zero\n");
  CHECK_THROWS_WITH_AS(read_forecasts_csv(bad_number, "n.csv"),
                       doctest::Contains("not a number"),
                       std::invalid_argument);

  std::istringstream bad_sum("f1,f2\n0.6,0.3\n");
  CHECK_THROWS_WITH_AS(read_forecasts_csv(bad_sum, "s.csv"),
                       doctest::Contains("s.csv:2"), std::invalid_argument);

  std::istringstream empty("f1,f2\n");
  CHECK_THROWS_WITH_AS(read_forecasts_csv(empty, "e.csv"),
                       doctest::Contains("no forecast rows"),
                       std::invalid_argument);
}

TEST_CASE("outcome index parsing") {
  std::istringstream good("1\n2\n# note\n1\n");
  const auto outcomes = read_outcome_indices(good, "o.csv");
  REQUIRE(outcomes.size() == 3);
  CHECK(outcomes[1].index == 2);

  std::istringstream fractional("1.5\n");
  CHECK_THROWS_WITH_AS(read_outcome_indices(fractional, "f.csv"),
                       doctest::Contains("1-based integer"),
                       std::invalid_argument);
  std::istringstream zero("0\n");
  CHECK_THROWS_AS(read_outcome_indices(zero, "z.csv"), std::invalid_argument);
  std::istringstream huge("1e12\n");
  CHECK_THROWS_AS(read_outcome_indices(huge, "g.csv"), std::invalid_argument);
}

TEST_CASE("real-valued files") {
  std::istringstream good("0.5\n-1.25\n# skip\n3\n");
  const auto values = read_reals(good, "v.csv");
  CHECK(values == std::vector<double>{0.5, -1.25, 3.0});
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(read_reals(empty, "e.csv"), std::invalid_argument);
}

TEST_CASE("density documents round-trip") {
  const Grid grid{-2.0, 2.0, 33};
  std::vector<double> v(grid.n);
  for (int i = 0; i < grid.n; ++i)
    v[i] = 1.0 + 0.5 * std::sin(grid.x(i));
  const double total = trapezoid(grid, v);
  for (double& y : v) y /= total;
  const GridDensity density = GridDensity::from(grid, std::move(v));

  std::ostringstream doc;
  write_density_doc(doc, density);
  std::istringstream in(doc.str());
  const GridDensity back = read_density_doc(in, "round.density");
  CHECK(back.grid() == density.grid());
  for (int i = 0; i < grid.n; ++i) CHECK(back[i] == density[i]);
}

TEST_CASE("density document validation") {
  std::istringstream no_values("lo 0\nhi 1\nn 5\n");
  CHECK_THROWS_WITH_AS(read_density_doc(no_values, "d.txt"),
                       doctest::Contains("no values"), std::invalid_argument);

  std::istringstream early_values("lo 0\nhi 1\nvalues\n1\n");
  CHECK_THROWS_WITH_AS(read_density_doc(early_values, "d.txt"),
                       doctest::Contains("before lo/hi/n"),
                       std::invalid_argument);

  std::istringstream wrong_count("lo 0\nhi 1\nn 5\nvalues\n1\n1\n1\n");
  CHECK_THROWS_WITH_AS(read_density_doc(wrong_count, "d.txt"),
                       doctest::Contains("expected 5 values"),
                       std::invalid_argument);

  std::istringstream unknown_key("lo 0\nhi 1\nwidth 3\nn 5\nvalues\n");
  CHECK_THROWS_WITH_AS(read_density_doc(unknown_key, "d.txt"),
                       doctest::Contains("unknown density header key"),
                       std::invalid_argument);

  std::istringstream bad_density("lo 0\nhi 1\nn 3\nvalues\n1\n5\n1\n");
  CHECK_THROWS_AS(read_density_doc(bad_density, "d.txt"),
                  std::invalid_argument);

  CHECK_THROWS_WITH_AS(read_density_doc("missing_file.density"),
                       doctest::Contains("cannot open"),
                       std::invalid_argument);
}
