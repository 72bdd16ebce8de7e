#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tdc/code.hpp"

// Minimum weight and low-weight codeword counting by information-set
// enumeration with lower-bound termination, plus the classification and
// 1-design checks built on top of it.

namespace tdc::weight {

enum class Classification { extremal, near_extremal, neither };

std::string to_string(Classification c);

/// Measurement record for one code.
struct WeightReport {
  int n = 0, k = 0;
  int d = 0;
  std::map<int, long long> counts;  // weight -> A_w for every computed weight
  Classification classification = Classification::neither;
  long long beta = -1;  // A_12 / 8, set iff near-extremal at n = 48
};

struct EnumOptions {
  // Maximum weight count_weight will certify. 0 means the default rule:
  // n/4 + 3 for n >= 36, otherwise n (no practical guard needed below that).
  int ceiling = 0;

  int resolve_ceiling(int n) const {
    if (ceiling > 0) return ceiling;
    return n >= 36 ? n / 4 + 3 : n;
  }
};

/// Exact minimum nonzero weight.
int min_weight(const code::TernaryCode& c);

/// Exact number of codewords of weight exactly w (both signs counted).
/// Throws when w exceeds the enumeration ceiling.
long long count_weight(const code::TernaryCode& c, int w, const EnumOptions& opts = {});

/// Supports of all weight-w codewords as coordinate bitmasks; each +-pair
/// contributes its support once, repeated supports are kept. Requires n <= 64.
std::vector<std::uint64_t> weight_supports(const code::TernaryCode& c, int w,
                                           const EnumOptions& opts = {});

/// Full measurement: minimum weight, A_d (and A_12 for length-48 codes),
/// classification, beta. Near-extremal length-48 codes are checked for
/// A_12 = 0 mod 8 and 1 <= beta <= 4324; violations are hard errors.
WeightReport classify(const code::TernaryCode& c, const EnumOptions& opts = {});

/// Whether the weight-w supports cover every coordinate equally often,
/// together with the per-coordinate counts.
std::pair<bool, std::vector<long long>> support_one_design_check(const code::TernaryCode& c, int w,
                                                                 const EnumOptions& opts = {});

// ---- internals exposed for tests -------------------------------------------

/// One information set: a basis in echelon form with respect to a column
/// order that prefers previously unused columns. `deficit` counts how many
/// pivots fell outside the new columns.
struct InfoSet {
  gf3::TritMatrix basis;
  std::vector<int> new_pivots;
  int deficit = 0;
};

/// Greedy disjoint information-set system for a full-rank generator matrix.
std::vector<InfoSet> build_information_sets(const gf3::TritMatrix& gen);

}  // namespace tdc::weight
