// File ingestion for the batch front end. Validation failures throw
// std::invalid_argument with line-numbered diagnostics.
//
// Formats:
//   categorical forecasts - CSV with header f1,...,fm, one forecast per row
//   categorical outcomes  - one 1-based category index per line
//   density forecast      - text document: "lo <v>", "hi <v>", "n <v>",
//                           then "values" followed by n reals, one per line
//   real outcomes/samples - one real per line
// Blank lines and lines starting with '#' are ignored everywhere.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "scorelab/categorical.hpp"
#include "scorelab/core.hpp"

namespace scorelab {

std::vector<ProbVector> read_forecasts_csv(std::istream& in,
                                           const std::string& name);
std::vector<ProbVector> read_forecasts_csv(const std::string& path);

std::vector<CategoricalOutcome> read_outcome_indices(std::istream& in,
                                                     const std::string& name);
std::vector<CategoricalOutcome> read_outcome_indices(const std::string& path);

std::vector<double> read_reals(std::istream& in, const std::string& name);
std::vector<double> read_reals(const std::string& path);

GridDensity read_density_doc(std::istream& in, const std::string& name);
GridDensity read_density_doc(const std::string& path);
void write_density_doc(std::ostream& out, const GridDensity& density);
void write_density_doc(const std::string& path, const GridDensity& density);

}  // namespace scorelab
