#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "scorelab/report.hpp"

// End-to-end checks of the command-line tool; SCORELAB_CLI_PATH is injected
// by the build.

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

int run_counter = 0;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run_cli(const std::string& args) {
  const std::string tag = std::to_string(run_counter++);
  const std::string out_path = "cli_out_" + tag + ".txt";
  const std::string err_path = "cli_err_" + tag + ".txt";
  const std::string command = std::string(SCORELAB_CLI_PATH) + " " + args +
                              " > " + out_path + " 2> " + err_path;
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return result;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

struct TempFile {
  std::string path;
  TempFile(const std::string& name, const std::string& content)
      : path("cli_tmp_" + std::to_string(run_counter++) + "_" + name) {
    write_file(path, content);
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("score over a categorical forecast file") {
  TempFile forecasts("f.csv", "f1,f2\n0.8,0.2\n0.5,0.5\n0.8,0.2\n");
  TempFile outcomes("o.csv", "1\n1\n2\n");
  const RunResult r = run_cli("score --rule brier --forecasts " +
                              forecasts.path + " --outcomes " + outcomes.path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("mean: 0.31") != std::string::npos);  // (0.04+0.25+0.64)/3
}

TEST_CASE("a row that is not a distribution fails with its line number") {
  TempFile forecasts("f.csv", "f1,f2\n0.8,0.2\n0.6,0.3\n");
  TempFile outcomes("o.csv", "1\n1\n");
  const RunResult r = run_cli("score --rule brier --forecasts " +
                              forecasts.path + " --outcomes " + outcomes.path);
  CHECK(r.exit_code == 1);
  CHECK(r.err.find(":3:") != std::string::npos);
}

TEST_CASE("a materialized zero-probability outcome warns but succeeds") {
  TempFile forecasts("f.csv", "f1,f2\n1,0\n0.5,0.5\n");
  TempFile outcomes("o.csv", "2\n1\n");
  const RunResult r = run_cli("score --rule log --forecasts " +
                              forecasts.path + " --outcomes " + outcomes.path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("mean: inf") != std::string::npos);
  CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("density scoring and out-of-domain outcomes") {
  std::ostringstream doc;
  doc << "lo 0\nhi 1\nn 5\nvalues\n1\n1\n1\n1\n1\n";
  TempFile density("d.txt", doc.str());
  TempFile outcomes("o.txt", "0.25\n0.5\n");
  const RunResult ok = run_cli("score --rule log --density " + density.path +
                               " --outcomes " + outcomes.path);
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("mean: 0") != std::string::npos);

  TempFile bad("o2.txt", "0.25\n1.5\n");
  const RunResult out_of_domain = run_cli("score --rule log --density " +
                                          density.path + " --outcomes " +
                                          bad.path);
  CHECK(out_of_domain.exit_code == 1);
  CHECK(out_of_domain.err.find("case 2") != std::string::npos);
}

TEST_CASE("entropy of an inline distribution") {
  const RunResult r = run_cli("entropy --dist 0.5,0.5");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("0.693147181") != std::string::npos);
}

TEST_CASE("gamma-star prints the root and its residual") {
  const RunResult r = run_cli("gamma-star --p 0.7 --gamma2 0.2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("gamma_star: 0.158") != std::string::npos);
  // out-of-domain arguments are validation failures
  const RunResult bad = run_cli("gamma-star --p 0.4 --gamma2 0.2");
  CHECK(bad.exit_code == 1);
  // an unreachable residual is a numeric failure
  const RunResult stuck = run_cli("gamma-star --p 0.7 --gamma2 0.2 "
                                  "--tol 1e-30");
  CHECK(stuck.exit_code == 2);
  CHECK(stuck.err.find("numeric failure") != std::string::npos);
}

TEST_CASE("extreme margin tolerances shift verdict labels, never "
          "manufacture violations") {
  const RunResult tiny = run_cli("verify --suite binary --grid-steps 3 "
                                 "--tolerance 1e-18");
  CHECK(tiny.exit_code == 0);
  CHECK(tiny.out.find("violated: 0") != std::string::npos);
  const RunResult huge = run_cli("verify --suite binary --grid-steps 3 "
                                 "--tolerance 1e-2");
  CHECK(huge.exit_code == 0);
  CHECK(huge.out.find("violated: 0") != std::string::npos);
  CHECK(huge.out.find("indifferent: 0") == std::string::npos);
}

TEST_CASE("expected score of a categorical forecast") {
  const RunResult r =
      run_cli("expected --rule brier --f 0.8,0.2 --p 0.7,0.3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("0.22") != std::string::npos);
}

TEST_CASE("verify binary exits cleanly and writes a parsable report") {
  const std::string report = "cli_verify_report.json";
  const RunResult r = run_cli("--report " + report +
                              " verify --suite binary --grid-steps 4");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("violated: 0") != std::string::npos);
  const scorelab::Json doc = scorelab::read_report_file(report);
  CHECK(doc.at("manifest").at("command") == "verify");
  CHECK(doc.at("results").at("summary").at("violated") == 0);
  // round trip: the reader sees exactly what the writer wrote
  const auto cases =
      scorelab::cases_from_json(doc.at("results").at("cases"));
  CHECK(scorelab::cases_to_json(cases).dump() ==
        doc.at("results").at("cases").dump());
  std::remove(report.c_str());
}

TEST_CASE("verify reports are byte-identical across reruns") {
  const std::string report_a = "cli_det_a.json";
  const std::string report_b = "cli_det_b.json";
  const std::string args = " verify --suite binary --grid-steps 3";
  CHECK(run_cli("--seed 7 --report " + report_a + args).exit_code == 0);
  CHECK(run_cli("--seed 7 --report " + report_b + args).exit_code == 0);
  CHECK(slurp(report_a) == slurp(report_b));
  std::remove(report_a.c_str());
  std::remove(report_b.c_str());
}

TEST_CASE("records format prints the report document itself") {
  const RunResult r = run_cli("--format records entropy --dist 0.5,0.5");
  CHECK(r.exit_code == 0);
  const scorelab::Json doc = scorelab::Json::parse(r.out);
  CHECK(doc.at("manifest").at("command") == "entropy");
  CHECK(doc.at("results").at("value").get<double>() ==
        doctest::Approx(std::log(2.0)));
}

TEST_CASE("rank orders binary models by mean score") {
  // rows are models; outcomes drawn mostly from category 1
  TempFile models("m.csv", "f1,f2\n0.85,0.15\n0.55,0.45\n");
  std::ostringstream outcome_lines;
  for (int i = 0; i < 20; ++i) outcome_lines << (i < 16 ? 1 : 2) << "\n";
  TempFile outcomes("o.csv", outcome_lines.str());
  const RunResult r = run_cli("rank --rule brier --forecasts " + models.path +
                              " --outcomes " + outcomes.path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("rank 1") != std::string::npos);
  CHECK(r.out.find("row 1") != std::string::npos);
}

TEST_CASE("estimate recovers moments through the log rule") {
  std::ostringstream samples;
  double sum = 0.0, sum_sq = 0.0;
  // a small deterministic sample with known moments
  for (int i = 0; i < 400; ++i) {
    const double x = -1.0 + 2.0 * (i + 0.5) / 400.0;
    samples << x << "\n";
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / 400.0;
  const double sd = std::sqrt(sum_sq / 400.0 - mean * mean);
  TempFile file("s.csv", samples.str());
  const RunResult r = run_cli("estimate --family gaussian --rule log "
                              "--samples " + file.path + " --format records");
  CHECK(r.exit_code == 0);
  const scorelab::Json doc = scorelab::Json::parse(r.out);
  CHECK(doc.at("results").at("converged") == true);
  CHECK(doc.at("results").at("params").at("mu").get<double>() ==
        doctest::Approx(mean).epsilon(1e-3));
  CHECK(doc.at("results").at("params").at("sigma").get<double>() ==
        doctest::Approx(sd).epsilon(1e-3));
}

TEST_CASE("rank handles several density models") {
  const int n = 9;
  auto density_doc = [&](double center) {
    std::vector<double> v(n);
    double integral = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = -3.0 + 6.0 * i / (n - 1);
      v[i] = std::exp(-0.5 * (x - center) * (x - center));
    }
    for (int i = 1; i < n; ++i)
      integral += 0.5 * (v[i - 1] + v[i]) * 6.0 / (n - 1);
    std::ostringstream doc;
    doc << "lo -3\nhi 3\nn " << n << "\nvalues\n";
    for (double value : v) doc << value / integral << "\n";
    return doc.str();
  };
  TempFile truth_file("truth.density", density_doc(0.0));
  TempFile off_file("off.density", density_doc(1.0));
  TempFile outcomes("o.txt", "0.1\n-0.4\n0.3\n0.0\n-0.2\n");
  const RunResult r =
      run_cli("rank --rule quadratic --densities " + truth_file.path + " " +
              off_file.path + " --outcomes " + outcomes.path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("rank 1  ") != std::string::npos);
  CHECK(r.out.find(truth_file.path) < r.out.find(off_file.path));
}

TEST_CASE("unknown flags and missing files are validation failures") {
  CHECK(run_cli("score --rule brier --outcomes nope.csv --forecasts "
                "missing.csv").exit_code == 1);
  CHECK(run_cli("entropy --wobble 3").exit_code == 1);
  CHECK(run_cli("verify --suite nonsense").exit_code == 1);
}
