// Machine-readable run reports: a manifest block sufficient to reproduce the
// run plus command-specific results, serialized as JSON with stable key
// order so identical runs produce byte-identical files.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "scorelab/verify.hpp"

namespace scorelab {

inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

struct RunManifest {
  std::string command;
  std::string version = kToolVersion;
  std::uint64_t seed = 42;
  std::vector<std::pair<std::string, std::string>> options;
  std::vector<std::pair<std::string, std::string>> input_digests;
};

/// FNV-1a 64-bit digest, hex encoded.
std::string fnv1a64_hex(std::string_view bytes);
/// Digest of a file's raw bytes; throws std::invalid_argument if unreadable.
std::string file_digest(const std::string& path);

Json to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const Json& j);

/// Scores may be infinite; JSON has no literal for that, so +-inf round-trip
/// through the strings "inf" / "-inf".
Json encode_score(double value);
double decode_score(const Json& j);

Json to_json(const ScoreReport& report);
ScoreReport score_report_from_json(const Json& j);

Json to_json(const VerificationCase& c);
VerificationCase verification_case_from_json(const Json& j);
Json cases_to_json(const std::vector<VerificationCase>& cases);
std::vector<VerificationCase> cases_from_json(const Json& j);

/// Full report document: {"manifest": ..., "results": ...}.
Json make_report(const RunManifest& manifest, Json results);
void write_report_file(const std::string& path, const Json& report);
Json read_report_file(const std::string& path);

}  // namespace scorelab
