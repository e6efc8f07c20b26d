#include "scorelab/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace scorelab {

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return fnv1a64_hex(buffer.str());
}

Json to_json(const RunManifest& manifest) {
  Json j;
  j["command"] = manifest.command;
  j["version"] = manifest.version;
  j["seed"] = manifest.seed;
  Json options = Json::object();
  for (const auto& [k, v] : manifest.options) options[k] = v;
  j["options"] = std::move(options);
  Json digests = Json::object();
  for (const auto& [k, v] : manifest.input_digests) digests[k] = v;
  j["input_digests"] = std::move(digests);
  return j;
}

RunManifest manifest_from_json(const Json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.version = j.at("version").get<std::string>();
  m.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& [k, v] : j.at("options").items())
    m.options.emplace_back(k, v.get<std::string>());
  for (const auto& [k, v] : j.at("input_digests").items())
    m.input_digests.emplace_back(k, v.get<std::string>());
  return m;
}

Json encode_score(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

double decode_score(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    throw std::invalid_argument("unexpected score string: " + s);
  }
  return j.get<double>();
}

Json to_json(const ScoreReport& report) {
  Json j;
  j["rule"] = report.rule;
  j["count"] = report.count();
  j["mean"] = encode_score(report.mean);
  Json scores = Json::array();
  for (double s : report.scores) scores.push_back(encode_score(s));
  j["scores"] = std::move(scores);
  return j;
}

ScoreReport score_report_from_json(const Json& j) {
  std::vector<double> scores;
  for (const auto& s : j.at("scores")) scores.push_back(decode_score(s));
  return ScoreReport::from(j.at("rule").get<std::string>(), std::move(scores));
}

Json to_json(const VerificationCase& c) {
  Json j;
  j["proposition"] = c.proposition;
  Json labels = Json::object();
  for (const auto& [k, v] : c.labels) labels[k] = v;
  j["labels"] = std::move(labels);
  Json inputs = Json::object();
  for (const auto& [k, v] : c.inputs) inputs[k] = v;
  j["inputs"] = std::move(inputs);
  Json computed = Json::object();
  for (const auto& [k, v] : c.computed) computed[k] = encode_score(v);
  j["computed"] = std::move(computed);
  j["verdict"] = to_string(c.verdict);
  j["margin"] = encode_score(c.margin);
  return j;
}

VerificationCase verification_case_from_json(const Json& j) {
  VerificationCase c;
  c.proposition = j.at("proposition").get<std::string>();
  for (const auto& [k, v] : j.at("labels").items())
    c.labels.emplace_back(k, v.get<std::string>());
  for (const auto& [k, v] : j.at("inputs").items())
    c.inputs.emplace_back(k, v.get<double>());
  for (const auto& [k, v] : j.at("computed").items())
    c.computed.emplace_back(k, decode_score(v));
  c.verdict = verdict_from(j.at("verdict").get<std::string>());
  c.margin = decode_score(j.at("margin"));
  return c;
}

Json cases_to_json(const std::vector<VerificationCase>& cases) {
  Json arr = Json::array();
  for (const auto& c : cases) arr.push_back(to_json(c));
  return arr;
}

std::vector<VerificationCase> cases_from_json(const Json& j) {
  std::vector<VerificationCase> cases;
  for (const auto& c : j) cases.push_back(verification_case_from_json(c));
  return cases;
}

Json make_report(const RunManifest& manifest, Json results) {
  Json j;
  j["manifest"] = to_json(manifest);
  j["results"] = std::move(results);
  return j;
}

void write_report_file(const std::string& path, const Json& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write report: " + path);
  out << report.dump(2) << "\n";
}

Json read_report_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read report: " + path);
  return Json::parse(in);
}

}  // namespace scorelab
