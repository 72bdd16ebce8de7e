#include "tdc/design.hpp"

#include <bit>
#include <numeric>

namespace tdc::design {

int IncidenceStructure::row_sum(int block) const {
  int s = 0;
  for (std::uint64_t w : row(block)) s += std::popcount(w);
  return s;
}

int IncidenceStructure::pair_intersection(int a, int b) const {
  auto ra = row(a), rb = row(b);
  int s = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) s += std::popcount(ra[i] & rb[i]);
  return s;
}

std::vector<std::uint64_t> IncidenceStructure::column_bits(int point) const {
  std::vector<std::uint64_t> col((b_ + 63) / 64, 0);
  for (int i = 0; i < b_; ++i)
    if (get(i, point)) col[i >> 6] |= std::uint64_t{1} << (i & 63);
  return col;
}

bool validate_symmetric_design(const IncidenceStructure& d, const DesignParams& p) {
  if (d.points() != p.v || d.blocks() != p.v)
    throw std::invalid_argument("validate_symmetric_design: shape does not match parameters");
  for (int i = 0; i < d.blocks(); ++i)
    if (d.row_sum(i) != p.k) return false;
  for (int i = 0; i < d.blocks(); ++i)
    for (int j = i + 1; j < d.blocks(); ++j)
      if (d.pair_intersection(i, j) != p.lambda) return false;
  return true;
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int f = 2; static_cast<long long>(f) * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

namespace {

// quadratic character on Z_q: 0 -> 0, residues -> +1, non-residues -> -1
std::vector<int> quadratic_character(int q) {
  std::vector<int> chi(q, -1);
  chi[0] = 0;
  for (int x = 1; x < q; ++x) chi[static_cast<long long>(x) * x % q] = 1;
  return chi;
}

}  // namespace

IncidenceStructure paley_type1_design(int q) {
  if (!is_prime(q) || q % 4 != 3)
    throw std::invalid_argument("paley_type1_design: q must be a prime congruent to 3 mod 4");
  auto chi = quadratic_character(q);
  IncidenceStructure d(q, q);
  for (int a = 0; a < q; ++a)
    for (int p = 0; p < q; ++p)
      if (chi[((p - a) % q + q) % q] == 1) d.set(a, p, true);
  return d;
}

std::vector<std::vector<int>> paley_type2_hadamard(int q) {
  if (!is_prime(q) || q % 2 == 0)
    throw std::invalid_argument("paley_type2_hadamard: q must be an odd prime");
  const int m = q + 1;
  auto chi = quadratic_character(q);

  // Conference-type core: C[0][0]=0, borders +-1, C[1+x][1+y] = chi(x-y).
  // For q = 1 mod 4 the core is symmetric, for q = 3 mod 4 it is skew; the
  // corner signs below make C C^T = q I in both cases.
  std::vector<std::vector<int>> c(m, std::vector<int>(m, 0));
  bool skew = q % 4 == 3;
  for (int j = 1; j < m; ++j) {
    c[0][j] = 1;
    c[j][0] = skew ? -1 : 1;
  }
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y) c[1 + x][1 + y] = chi[((x - y) % q + q) % q];

  const int n = 2 * m;
  std::vector<std::vector<int>> h(n, std::vector<int>(n, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int cij = c[i][j], iij = i == j ? 1 : 0;
      if (skew) {
        // [[C+I, C+I], [C-I, -C+I]]
        h[i][j] = cij + iij;
        h[i][m + j] = cij + iij;
        h[m + i][j] = cij - iij;
        h[m + i][m + j] = -cij + iij;
      } else {
        // [[C+I, C-I], [C-I, -C-I]]
        h[i][j] = cij + iij;
        h[i][m + j] = cij - iij;
        h[m + i][j] = cij - iij;
        h[m + i][m + j] = -cij - iij;
      }
    }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      long long dot = 0;
      for (int t = 0; t < n; ++t) dot += static_cast<long long>(h[i][t]) * h[j][t];
      if (dot != (i == j ? n : 0))
        throw std::logic_error("paley_type2_hadamard: construction failed Hadamard check");
    }
  return h;
}

IncidenceStructure hadamard_to_design(const std::vector<std::vector<int>>& h_in) {
  const int n = static_cast<int>(h_in.size());
  if (n < 4 || n % 4 != 0) throw std::invalid_argument("hadamard_to_design: order must be a positive multiple of 4");
  for (const auto& row : h_in) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("hadamard_to_design: not square");
    for (int x : row)
      if (x != 1 && x != -1) throw std::invalid_argument("hadamard_to_design: entries must be +-1");
  }
  auto h = h_in;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      long long dot = 0;
      for (int t = 0; t < n; ++t) dot += static_cast<long long>(h[i][t]) * h[j][t];
      if (dot != (i == j ? n : 0)) throw std::invalid_argument("hadamard_to_design: H H^T != n I");
    }

  // normalize first row, then first column
  for (int j = 0; j < n; ++j)
    if (h[0][j] == -1)
      for (int i = 0; i < n; ++i) h[i][j] = -h[i][j];
  for (int i = 0; i < n; ++i)
    if (h[i][0] == -1)
      for (int j = 0; j < n; ++j) h[i][j] = -h[i][j];

  IncidenceStructure d(n - 1, n - 1);
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j)
      if (h[i][j] == 1) d.set(i - 1, j - 1, true);
  return d;
}

std::vector<std::vector<int>> orbits(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> out;
  for (int p = 0; p < n; ++p) {
    if (seen[p]) continue;
    std::vector<int> orb;
    int x = p;
    do {
      seen[x] = 1;
      orb.push_back(x);
      x = perm[x];
    } while (x != p);
    out.push_back(std::move(orb));
  }
  return out;
}

long long permutation_order(const std::vector<int>& perm) {
  long long ord = 1;
  for (const auto& orb : orbits(perm)) ord = std::lcm(ord, static_cast<long long>(orb.size()));
  return ord;
}

CyclicAction canonical_cyclic_action(int order, const std::vector<int>& orbit_sizes) {
  int v = 0;
  for (int s : orbit_sizes) {
    if (s <= 0 || order % s != 0)
      throw std::invalid_argument("canonical_cyclic_action: orbit sizes must divide the group order");
    v += s;
  }
  CyclicAction a;
  a.order = order;
  a.point_perm.resize(v);
  int base = 0;
  for (int s : orbit_sizes) {
    for (int i = 0; i < s; ++i) a.point_perm[base + i] = base + (i + 1) % s;
    base += s;
  }
  a.block_perm = a.point_perm;
  return a;
}

IncidenceStructure apply_permutations(const IncidenceStructure& d,
                                      const std::vector<int>& point_perm,
                                      const std::vector<int>& block_perm) {
  IncidenceStructure out(d.points(), d.blocks());
  for (int i = 0; i < d.blocks(); ++i)
    for (int j = 0; j < d.points(); ++j)
      if (d.get(i, j)) out.set(block_perm[i], point_perm[j], true);
  return out;
}

bool is_invariant(const IncidenceStructure& d, const CyclicAction& a) {
  return apply_permutations(d, a.point_perm, a.block_perm) == d;
}

}  // namespace tdc::design
