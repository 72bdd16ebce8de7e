#pragma once

#include <string>

#include "tdc/code.hpp"
#include "tdc/design.hpp"
#include "tdc/orbit_matrix.hpp"
#include "tdc/weight.hpp"

// Text formats. All four round-trip bit-exactly: parse(format(x)) == x.

namespace tdc::io {

/// Design: first line "v k lambda", then v lines of v characters '0'/'1',
/// one block per line.
struct DesignFile {
  design::IncidenceStructure incidence;
  design::DesignParams params;
  friend bool operator==(const DesignFile&, const DesignFile&) = default;
};
std::string format_design(const DesignFile& d);
DesignFile parse_design(const std::string& text);

/// Orbit matrix: line 1 "v k lambda n", line 2 row orbit sizes, line 3 column
/// orbit sizes, then t rows of t integers.
std::string format_orbit_matrix(const om::OrbitMatrix& m);
om::OrbitMatrix parse_orbit_matrix(const std::string& text);

/// Code: line 1 "n k", then k generator rows over {0,1,2}.
std::string format_code(const code::TernaryCode& c);
code::TernaryCode parse_code(const std::string& text);

/// Weight report, key=value lines.
std::string format_weight_report(const weight::WeightReport& r);
weight::WeightReport parse_weight_report(const std::string& text);

/// Weight report as a JSON object with keys n, k, d, classification, counts,
/// beta (beta present only when set).
std::string weight_report_json(const weight::WeightReport& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace tdc::io
