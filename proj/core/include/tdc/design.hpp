#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// Incidence structures, symmetric 2-design validation, cyclic actions, and
// the Paley constructions.

namespace tdc::design {

/// Parameters of a symmetric 2-(v,k,lambda) design.
struct DesignParams {
  int v = 0, k = 0, lambda = 0;

  /// Necessary arithmetic condition lambda(v-1) = k(k-1).
  bool admissible() const {
    return v > 0 && k > 0 && lambda >= 0 &&
           static_cast<long long>(lambda) * (v - 1) == static_cast<long long>(k) * (k - 1);
  }
  friend bool operator==(const DesignParams&, const DesignParams&) = default;
};

/// 0/1 point-block incidence matrix; rows are blocks, columns are points.
/// Rows are stored as bitsets (64 points per word).
class IncidenceStructure {
 public:
  IncidenceStructure() = default;
  IncidenceStructure(int v, int b)
      : v_(v), b_(b), wpr_((v + 63) / 64), bits_(static_cast<std::size_t>(b) * wpr_, 0) {
    if (v <= 0 || b <= 0) throw std::invalid_argument("IncidenceStructure: dimensions must be positive");
  }

  int points() const { return v_; }
  int blocks() const { return b_; }
  int words_per_row() const { return wpr_; }

  bool get(int block, int point) const {
    return (bits_[static_cast<std::size_t>(block) * wpr_ + (point >> 6)] >> (point & 63)) & 1u;
  }
  void set(int block, int point, bool value) {
    std::uint64_t& w = bits_[static_cast<std::size_t>(block) * wpr_ + (point >> 6)];
    std::uint64_t m = std::uint64_t{1} << (point & 63);
    w = value ? (w | m) : (w & ~m);
  }

  std::span<const std::uint64_t> row(int block) const {
    return {bits_.data() + static_cast<std::size_t>(block) * wpr_, static_cast<std::size_t>(wpr_)};
  }
  std::span<std::uint64_t> row(int block) {
    return {bits_.data() + static_cast<std::size_t>(block) * wpr_, static_cast<std::size_t>(wpr_)};
  }

  int row_sum(int block) const;
  int pair_intersection(int block_a, int block_b) const;

  /// Column (point) incidence as a bitset over blocks.
  std::vector<std::uint64_t> column_bits(int point) const;

  friend bool operator==(const IncidenceStructure&, const IncidenceStructure&) = default;

 private:
  int v_ = 0, b_ = 0, wpr_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// A cyclic group action of given order on points and blocks of a structure.
struct CyclicAction {
  int order = 0;
  std::vector<int> point_perm;
  std::vector<int> block_perm;
};

/// True iff every row sums to k and M M^T = (k-lambda) I + lambda J over the
/// integers. Throws on shape mismatch.
bool validate_symmetric_design(const IncidenceStructure& d, const DesignParams& p);

/// Symmetric design on Z_q with blocks the translates of the nonzero
/// quadratic residues; q must be a prime congruent to 3 mod 4. Parameters
/// (q, (q-1)/2, (q-3)/4).
IncidenceStructure paley_type1_design(int q);

/// +-1 matrix of order 2(q+1) with H H^T = 2(q+1) I, built in block form from
/// the quadratic character of GF(q); q must be an odd prime. Sign conventions
/// are fixed so the Hadamard identity holds for both residue classes of q mod 4,
/// and are verified at construction.
std::vector<std::vector<int>> paley_type2_hadamard(int q);

/// Normalize a Hadamard matrix of order 4n (first row and column all +1),
/// delete the first row and column, map +1 -> 1 and -1 -> 0. The result is a
/// symmetric 2-(4n-1, 2n-1, n-1) design. Throws if H is not Hadamard.
IncidenceStructure hadamard_to_design(const std::vector<std::vector<int>>& h);

/// Orbits of a permutation, each listed in traversal order p, g(p), g^2(p), ...
/// Orbits are ordered by their smallest element.
std::vector<std::vector<int>> orbits(const std::vector<int>& perm);

/// Order of a permutation (lcm of cycle lengths).
long long permutation_order(const std::vector<int>& perm);

/// The canonical cyclic action used by the expansion engine: points and
/// blocks are labelled orbit by orbit, in the order of the given size list,
/// and the generator is a cyclic shift inside each orbit.
CyclicAction canonical_cyclic_action(int order, const std::vector<int>& orbit_sizes);

/// Relabel a structure: result(block_perm[i], point_perm[j]) = d(i, j).
IncidenceStructure apply_permutations(const IncidenceStructure& d,
                                      const std::vector<int>& point_perm,
                                      const std::vector<int>& block_perm);

/// True iff the structure is fixed by the action.
bool is_invariant(const IncidenceStructure& d, const CyclicAction& a);

bool is_prime(int n);

}  // namespace tdc::design
