#pragma once

#include "tdc/design.hpp"
#include "tdc/gf3.hpp"

// Ternary linear codes and the incidence-matrix construction: a symmetric
// 2-(47,23,11) design augmented by an all-one column spans a self-dual
// [48,24] code over GF(3).

namespace tdc::code {

/// Linear code over GF(3) given by a full-rank generator matrix kept in
/// reduced echelon form (serialized codes compare byte for byte).
struct TernaryCode {
  int n = 0;
  int k = 0;
  gf3::TritMatrix generator;  // k x n, rref
  bool self_dual = false;     // certified: k = n/2 and G G^T = 0

  friend bool operator==(const TernaryCode&, const TernaryCode&) = default;
};

/// Build a code from a generator matrix of any rank: rows are reduced to a
/// full-rank echelon basis. Self-duality is certified when it holds.
TernaryCode code_from_generator(const gf3::TritMatrix& rows);

/// Row space over GF(3) of [M | 1], where M is the incidence matrix of a
/// symmetric design with the given parameters and the all-one column is
/// appended last. Validates the design first. For (v,k,lambda) with
/// k - lambda divisible by 3 but not 9 and 3 not dividing k, the result is a
/// self-dual code of length v+1; for the (47,23,11) input the rank must come
/// out as 24, anything else is reported as an internal invariant violation.
TernaryCode code_from_design(const design::IncidenceStructure& d, const design::DesignParams& p);

/// True iff dimension is n/2 and all pairs of generator rows (including
/// self-pairs) are orthogonal.
bool is_self_dual(const TernaryCode& c);

/// True iff v lies in the code.
bool contains(const TernaryCode& c, const gf3::TritVector& v);

/// Apply a coordinate permutation (and optional per-coordinate signs, values
/// in {1,2}) to a code; the result is re-reduced to echelon form.
TernaryCode monomial_image(const TernaryCode& c, const std::vector<int>& coord_perm,
                           const std::vector<std::uint8_t>& signs);

}  // namespace tdc::code
