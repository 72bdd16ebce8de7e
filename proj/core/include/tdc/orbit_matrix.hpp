#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tdc/design.hpp"

// Orbit matrices of symmetric designs under a cyclic group action: the data
// type, its validity equations, stabilizer-orbit admissibility, exhaustive
// generation, and four bundled reference matrices for the (47,23,11) / C6
// parameter set.

namespace tdc::om {

/// Quotient of an incidence matrix by a group action. Entry s[i][j] counts
/// the points of point-orbit j incident with one block of block-orbit i.
struct OrbitMatrix {
  design::DesignParams params;
  int group_order = 1;
  std::vector<int> row_orbit_sizes;  // block-orbit sizes
  std::vector<int> col_orbit_sizes;  // point-orbit sizes
  std::vector<int> s;                // t x t, row-major

  int t() const { return static_cast<int>(row_orbit_sizes.size()); }
  int at(int i, int j) const { return s[static_cast<std::size_t>(i) * t() + j]; }
  int& at(int i, int j) { return s[static_cast<std::size_t>(i) * t() + j]; }

  friend bool operator==(const OrbitMatrix&, const OrbitMatrix&) = default;
};

struct OrbitMatrixCheck {
  bool ok = true;
  std::string violation;  // e.g. "C2 violated at row 0"; empty when ok
};

/// Checks the validity equations:
///   C1: 0 <= s[i][j] <= omega_j
///   C2: sum_j s[i][j] = k
///   C3: sum_i Omega_i s[i][j] = k omega_j
///   C4: sum_j (Omega_i'/omega_j) s[i][j] s[i'][j] = lambda Omega_i' + delta_ii' (k-lambda)
///   C5: s[i][j] is a multiple of the stabilizer cell length l[i][j]
/// plus the size sums Sum Omega = Sum omega = v. Reports the first violation
/// in the order C1, C2, C3, C4, C5 (row-major scans).
OrbitMatrixCheck validate_orbit_matrix(const OrbitMatrix& m);

/// Cell length of the block-stabilizer acting on a point orbit:
/// l = (n/Omega_i) / gcd(n/Omega_i, n/omega_j).
int stabilizer_cell_length(int n, int block_orbit_size, int point_orbit_size);

/// All values an orbit-matrix entry can take under the stabilizer constraint:
/// multiples of the cell length up to the point-orbit size.
std::vector<int> admissible_values(int n, int block_orbit_size, int point_orbit_size);

/// Exhaustive generation of all orbit matrices for the given parameters,
/// reduced modulo row permutations within equal block-orbit sizes and column
/// permutations within equal point-orbit sizes, returned as canonical
/// (lexicographically minimal) representatives in sorted order.
std::vector<OrbitMatrix> generate_orbit_matrices(const design::DesignParams& params, int n,
                                                 const std::vector<int>& row_sizes,
                                                 const std::vector<int>& col_sizes);

/// Canonical representative under the declared equivalence.
OrbitMatrix canonical_orbit_matrix(const OrbitMatrix& m);

/// The four bundled orbit matrices for (47,23,11) under C6 with orbit length
/// distribution (1,2,2,3,3,6,6,6,6,6,6). id is 1-based.
OrbitMatrix load_appendix(int id);

}  // namespace tdc::om
