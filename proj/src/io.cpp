#include "scorelab/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace scorelab {

namespace {

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  return in;
}

[[noreturn]] void fail(const std::string& name, int line,
                       const std::string& what) {
  throw std::invalid_argument(name + ":" + std::to_string(line) + ": " + what);
}

bool skippable(const std::string& line) {
  for (char c : line)
    if (!std::isspace(static_cast<unsigned char>(c))) return c == '#';
  return true;
}

double parse_double(const std::string& name, int line,
                    const std::string& token) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    fail(name, line, "not a number: '" + token + "'");
  }
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    const auto begin = field.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
      fields.push_back("");
      continue;
    }
    const auto end = field.find_last_not_of(" \t\r");
    fields.push_back(field.substr(begin, end - begin + 1));
  }
  return fields;
}

}  // namespace

std::vector<ProbVector> read_forecasts_csv(std::istream& in,
                                           const std::string& name) {
  std::vector<ProbVector> forecasts;
  std::string line;
  int line_no = 0;
  int m = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (!saw_header) {
      for (std::size_t i = 0; i < fields.size(); ++i)
        if (fields[i] != "f" + std::to_string(i + 1))
          fail(name, line_no,
               "expected header f1,...,fm; got field '" + fields[i] + "'");
      m = static_cast<int>(fields.size());
      if (m < 2) fail(name, line_no, "need at least two categories");
      saw_header = true;
      continue;
    }
    if (static_cast<int>(fields.size()) != m)
      fail(name, line_no,
           "expected " + std::to_string(m) + " fields, got " +
               std::to_string(fields.size()));
    std::vector<double> probs(m);
    for (int i = 0; i < m; ++i) probs[i] = parse_double(name, line_no, fields[i]);
    try {
      forecasts.push_back(ProbVector::from(std::move(probs)));
    } catch (const std::invalid_argument& e) {
      fail(name, line_no, e.what());
    }
  }
  if (!saw_header) throw std::invalid_argument(name + ": missing header row");
  if (forecasts.empty())
    throw std::invalid_argument(name + ": no forecast rows");
  return forecasts;
}

std::vector<ProbVector> read_forecasts_csv(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  return read_forecasts_csv(in, path);
}

std::vector<CategoricalOutcome> read_outcome_indices(std::istream& in,
                                                     const std::string& name) {
  std::vector<CategoricalOutcome> outcomes;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const double v = parse_double(name, line_no, split_csv(line)[0]);
    if (!(v >= 1.0 && v <= 1e9) || v != static_cast<int>(v))
      fail(name, line_no, "outcome must be a 1-based integer index");
    outcomes.push_back(CategoricalOutcome{static_cast<int>(v)});
  }
  if (outcomes.empty()) throw std::invalid_argument(name + ": no outcomes");
  return outcomes;
}

std::vector<CategoricalOutcome> read_outcome_indices(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  return read_outcome_indices(in, path);
}

std::vector<double> read_reals(std::istream& in, const std::string& name) {
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    values.push_back(parse_double(name, line_no, split_csv(line)[0]));
  }
  if (values.empty()) throw std::invalid_argument(name + ": no values");
  return values;
}

std::vector<double> read_reals(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  return read_reals(in, path);
}

GridDensity read_density_doc(std::istream& in, const std::string& name) {
  std::string line;
  int line_no = 0;
  double lo = 0.0, hi = 0.0;
  int n = 0;
  bool saw_lo = false, saw_hi = false, saw_n = false, in_values = false;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::istringstream fields(line);
    std::string key;
    fields >> key;
    if (!in_values) {
      std::string value;
      if (key == "values") {
        if (!(saw_lo && saw_hi && saw_n))
          fail(name, line_no, "values section before lo/hi/n header");
        in_values = true;
        continue;
      }
      if (!(fields >> value)) fail(name, line_no, "missing value for " + key);
      if (key == "lo") {
        lo = parse_double(name, line_no, value);
        saw_lo = true;
      } else if (key == "hi") {
        hi = parse_double(name, line_no, value);
        saw_hi = true;
      } else if (key == "n") {
        n = static_cast<int>(parse_double(name, line_no, value));
        saw_n = true;
      } else {
        fail(name, line_no, "unknown density header key: " + key);
      }
      continue;
    }
    values.push_back(parse_double(name, line_no, key));
  }
  if (!in_values) throw std::invalid_argument(name + ": no values section");
  if (static_cast<int>(values.size()) != n)
    throw std::invalid_argument(name + ": expected " + std::to_string(n) +
                                " values, got " +
                                std::to_string(values.size()));
  try {
    return GridDensity::from(Grid{lo, hi, n}, std::move(values));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(name + ": " + e.what());
  }
}

GridDensity read_density_doc(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  return read_density_doc(in, path);
}

void write_density_doc(std::ostream& out, const GridDensity& density) {
  char buf[40];
  auto emit = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf << "\n";
  };
  out << "lo ";
  emit(density.grid().lo);
  out << "hi ";
  emit(density.grid().hi);
  out << "n " << density.grid().n << "\n";
  out << "values\n";
  for (double v : density.values()) emit(v);
}

void write_density_doc(const std::string& path, const GridDensity& density) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  write_density_doc(out, density);
}

}  // namespace scorelab
