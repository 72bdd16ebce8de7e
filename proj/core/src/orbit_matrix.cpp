#include "tdc/orbit_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace tdc::om {

int stabilizer_cell_length(int n, int block_orbit_size, int point_orbit_size) {
  if (block_orbit_size <= 0 || point_orbit_size <= 0 || n % block_orbit_size != 0 ||
      n % point_orbit_size != 0)
    throw std::invalid_argument("stabilizer_cell_length: orbit sizes must divide the group order");
  int a = n / block_orbit_size;  // block stabilizer order
  int b = n / point_orbit_size;  // point stabilizer order
  return a / std::gcd(a, b);
}

std::vector<int> admissible_values(int n, int block_orbit_size, int point_orbit_size) {
  int l = stabilizer_cell_length(n, block_orbit_size, point_orbit_size);
  std::vector<int> vals;
  for (int v = 0; v <= point_orbit_size; v += l) vals.push_back(v);
  return vals;
}

OrbitMatrixCheck validate_orbit_matrix(const OrbitMatrix& m) {
  const int t = m.t();
  const auto& Om = m.row_orbit_sizes;
  const auto& om = m.col_orbit_sizes;
  const int v = m.params.v, k = m.params.k, lam = m.params.lambda, n = m.group_order;

  auto fail = [](std::string msg) { return OrbitMatrixCheck{false, std::move(msg)}; };

  if (static_cast<int>(om.size()) != t || static_cast<int>(m.s.size()) != t * t)
    return fail("shape inconsistent");
  long long rsum = std::accumulate(Om.begin(), Om.end(), 0LL);
  long long csum = std::accumulate(om.begin(), om.end(), 0LL);
  if (rsum != v) return fail("row orbit sizes do not sum to v");
  if (csum != v) return fail("column orbit sizes do not sum to v");
  for (int i = 0; i < t; ++i)
    if (Om[i] <= 0 || n % Om[i] != 0) return fail("row orbit size does not divide group order");
  for (int j = 0; j < t; ++j)
    if (om[j] <= 0 || n % om[j] != 0) return fail("column orbit size does not divide group order");

  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j)
      if (m.at(i, j) < 0 || m.at(i, j) > om[j])
        return fail("C1 violated at (" + std::to_string(i) + "," + std::to_string(j) + ")");

  for (int i = 0; i < t; ++i) {
    long long sum = 0;
    for (int j = 0; j < t; ++j) sum += m.at(i, j);
    if (sum != k) return fail("C2 violated at row " + std::to_string(i));
  }

  for (int j = 0; j < t; ++j) {
    long long sum = 0;
    for (int i = 0; i < t; ++i) sum += static_cast<long long>(Om[i]) * m.at(i, j);
    if (sum != static_cast<long long>(k) * om[j]) return fail("C3 violated at column " + std::to_string(j));
  }

  int L = 1;
  for (int j = 0; j < t; ++j) L = std::lcm(L, om[j]);
  for (int i = 0; i < t; ++i)
    for (int ip = 0; ip < t; ++ip) {
      long long lhs = 0;
      for (int j = 0; j < t; ++j)
        lhs += static_cast<long long>(L / om[j]) * Om[ip] * m.at(i, j) * m.at(ip, j);
      long long rhs = static_cast<long long>(L) *
                      (static_cast<long long>(lam) * Om[ip] + (i == ip ? k - lam : 0));
      if (lhs != rhs)
        return fail("C4 violated at rows (" + std::to_string(i) + "," + std::to_string(ip) + ")");
    }

  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) {
      int l = stabilizer_cell_length(n, Om[i], om[j]);
      if (m.at(i, j) % l != 0)
        return fail("C5 violated at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }

  return {};
}

OrbitMatrix canonical_orbit_matrix(const OrbitMatrix& m) {
  const int t = m.t();
  // positions grouped by orbit size (first-appearance order)
  auto group_positions = [t](const std::vector<int>& sizes) {
    std::vector<std::pair<int, std::vector<int>>> groups;
    for (int p = 0; p < t; ++p) {
      auto it = std::find_if(groups.begin(), groups.end(),
                             [&](const auto& g) { return g.first == sizes[p]; });
      if (it == groups.end())
        groups.push_back({sizes[p], {p}});
      else
        it->second.push_back(p);
    }
    return groups;
  };
  auto col_groups = group_positions(m.col_orbit_sizes);
  auto row_groups = group_positions(m.row_orbit_sizes);

  std::vector<std::vector<int>> perm;
  for (auto& g : col_groups) perm.push_back(g.second);

  std::vector<int> best;
  std::vector<int> cand(static_cast<std::size_t>(t) * t);
  std::vector<std::vector<int>> row_buf;

  while (true) {
    // column map: output column at position col_groups[g][x] reads input column perm[g][x]
    std::vector<int> colmap(t);
    for (std::size_t g = 0; g < perm.size(); ++g)
      for (std::size_t x = 0; x < perm[g].size(); ++x) colmap[col_groups[g].second[x]] = perm[g][x];

    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j) cand[static_cast<std::size_t>(i) * t + j] = m.at(i, colmap[j]);

    // sort rows within each row group
    for (auto& g : row_groups) {
      row_buf.clear();
      for (int p : g.second)
        row_buf.emplace_back(cand.begin() + static_cast<std::size_t>(p) * t,
                             cand.begin() + static_cast<std::size_t>(p + 1) * t);
      std::sort(row_buf.begin(), row_buf.end());
      for (std::size_t x = 0; x < g.second.size(); ++x)
        std::copy(row_buf[x].begin(), row_buf[x].end(),
                  cand.begin() + static_cast<std::size_t>(g.second[x]) * t);
    }

    if (best.empty() || cand < best) best = cand;

    // odometer over the per-group permutations
    std::size_t g = 0;
    for (; g < perm.size(); ++g) {
      if (std::next_permutation(perm[g].begin(), perm[g].end())) break;
    }
    if (g == perm.size()) break;
  }

  OrbitMatrix out = m;
  out.s = best;
  return out;
}

// ---- exhaustive generation --------------------------------------------------

namespace {

class Generator {
 public:
  Generator(const design::DesignParams& p, int n, std::vector<int> rows, std::vector<int> cols)
      : P(p), n_(n), Om(std::move(rows)), om(std::move(cols)), t_(static_cast<int>(Om.size())) {
    long long rsum = std::accumulate(Om.begin(), Om.end(), 0LL);
    long long csum = std::accumulate(om.begin(), om.end(), 0LL);
    if (rsum != P.v || csum != P.v)
      throw std::invalid_argument("generate_orbit_matrices: orbit sizes must sum to v");
    for (int x : Om)
      if (x <= 0 || n_ % x != 0) throw std::invalid_argument("generate_orbit_matrices: bad row orbit size");
    for (int x : om)
      if (x <= 0 || n_ % x != 0) throw std::invalid_argument("generate_orbit_matrices: bad column orbit size");

    L_ = 1;
    for (int x : om) L_ = std::lcm(L_, x);
    Lw.resize(t_);
    for (int j = 0; j < t_; ++j) Lw[j] = L_ / om[j];

    adm.resize(static_cast<std::size_t>(t_) * t_);
    for (int i = 0; i < t_; ++i)
      for (int j = 0; j < t_; ++j) adm[static_cast<std::size_t>(i) * t_ + j] = admissible_values(n_, Om[i], om[j]);

    omega_suffix.assign(t_ + 1, 0);
    for (int j = t_ - 1; j >= 0; --j) omega_suffix[j] = omega_suffix[j + 1] + om[j];
    Om_suffix.assign(t_ + 1, 0);
    for (int i = t_ - 1; i >= 0; --i) Om_suffix[i] = Om_suffix[i + 1] + Om[i];

    s.assign(static_cast<std::size_t>(t_) * t_, 0);
    col_sums.assign(t_, 0);
    cross_stack.assign(t_ + 1, std::vector<long long>(t_, 0));
    row_suffix.assign(t_, std::vector<long long>(t_ + 1, 0));
  }

  std::vector<OrbitMatrix> run() {
    place_row(0);
    std::vector<OrbitMatrix> out;
    out.reserve(seen_.size());
    for (const auto& key : seen_) {
      OrbitMatrix m;
      m.params = P;
      m.group_order = n_;
      m.row_orbit_sizes = Om;
      m.col_orbit_sizes = om;
      m.s = key;
      out.push_back(std::move(m));
    }
    return out;
  }

 private:
  void place_row(int i) {
    if (i == t_) {
      for (int j = 0; j < t_; ++j)
        if (col_sums[j] != static_cast<long long>(P.k) * om[j]) return;
      OrbitMatrix m;
      m.params = P;
      m.group_order = n_;
      m.row_orbit_sizes = Om;
      m.col_orbit_sizes = om;
      m.s = s;
      seen_.insert(canonical_orbit_matrix(m).s);
      return;
    }
    std::fill(cross_stack[0].begin(), cross_stack[0].end(), 0LL);
    bool tie = i > 0 && Om[i] == Om[i - 1];
    place_entry(i, 0, 0, 0, tie);
  }

  void place_entry(int i, int j, int rowsum, long long diag, bool tie) {
    if (j == t_) {
      if (rowsum != P.k) return;
      if (diag != diag_target(i)) return;
      for (int ip = 0; ip < i; ++ip)
        if (cross_stack[t_][ip] != cross_target()) return;
      // freeze suffix sums of this row for later cross bounds
      auto& suf = row_suffix[i];
      suf[t_] = 0;
      for (int jj = t_ - 1; jj >= 0; --jj) suf[jj] = suf[jj + 1] + s[idx(i, jj)];
      place_row(i + 1);
      return;
    }

    const long long diag_tgt = diag_target(i);
    const long long cross_tgt = cross_target();
    const auto& vals = adm[idx(i, j)];
    const int prev = tie ? s[idx(i - 1, j)] : 0;

    for (int x : vals) {
      if (tie && x < prev) continue;
      if (rowsum + x > P.k) break;  // values ascend
      if (rowsum + x + omega_suffix[j + 1] < P.k) continue;

      long long cs = col_sums[j] + static_cast<long long>(Om[i]) * x;
      long long col_tgt = static_cast<long long>(P.k) * om[j];
      if (cs > col_tgt) break;
      if (cs + static_cast<long long>(om[j]) * Om_suffix[i + 1] < col_tgt) continue;

      long long d2 = diag + static_cast<long long>(Lw[j]) * Om[i] * x * x;
      if (d2 > diag_tgt) break;
      if (d2 + static_cast<long long>(Om[i]) * L_ * omega_suffix[j + 1] < diag_tgt) continue;

      bool ok = true;
      for (int ip = 0; ip < i; ++ip) {
        long long c2 = cross_stack[j][ip] + static_cast<long long>(Lw[j]) * x * s[idx(ip, j)];
        if (c2 > cross_tgt || c2 + static_cast<long long>(L_) * row_suffix[ip][j + 1] < cross_tgt) {
          ok = false;
          break;
        }
        cross_stack[j + 1][ip] = c2;
      }
      if (!ok) continue;

      s[idx(i, j)] = x;
      col_sums[j] = cs;
      place_entry(i, j + 1, rowsum + x, d2, tie && x == prev);
      col_sums[j] = cs - static_cast<long long>(Om[i]) * x;
    }
    s[idx(i, j)] = 0;
  }

  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * t_ + j; }
  long long diag_target(int i) const {
    return static_cast<long long>(L_) * (static_cast<long long>(P.lambda) * Om[i] + (P.k - P.lambda));
  }
  long long cross_target() const { return static_cast<long long>(L_) * P.lambda; }

  design::DesignParams P;
  int n_, t_ = 0, L_ = 1;
  std::vector<int> Om, om, Lw;
  std::vector<int> omega_suffix, Om_suffix;
  std::vector<std::vector<int>> adm;
  std::vector<int> s;
  std::vector<long long> col_sums;
  std::vector<std::vector<long long>> cross_stack;  // cross_stack[j][ip]: partial C4 up to column j
  std::vector<std::vector<long long>> row_suffix;   // suffix sums of placed rows
  std::set<std::vector<int>> seen_;
};

}  // namespace

std::vector<OrbitMatrix> generate_orbit_matrices(const design::DesignParams& params, int n,
                                                 const std::vector<int>& row_sizes,
                                                 const std::vector<int>& col_sizes) {
  Generator g(params, n, row_sizes, col_sizes);
  return g.run();
}

// ---- bundled matrices -------------------------------------------------------

namespace {

constexpr int kAppendix[4][11][11] = {
    {{0, 2, 0, 3, 0, 6, 6, 6, 0, 0, 0},
     {1, 2, 2, 0, 0, 6, 3, 0, 3, 3, 3},
     {0, 2, 0, 0, 3, 3, 3, 3, 6, 3, 0},
     {1, 2, 2, 3, 3, 2, 2, 2, 2, 2, 2},
     {0, 2, 0, 3, 0, 2, 2, 2, 4, 4, 4},
     {1, 1, 1, 1, 1, 2, 3, 4, 2, 5, 2},
     {1, 1, 1, 1, 1, 2, 3, 4, 4, 1, 4},
     {1, 0, 0, 2, 2, 4, 3, 2, 3, 3, 3},
     {0, 0, 2, 2, 1, 3, 3, 3, 4, 3, 2},
     {0, 1, 1, 1, 2, 2, 5, 2, 2, 3, 4},
     {0, 1, 1, 1, 2, 4, 1, 4, 2, 3, 4}},
    {{0, 2, 0, 3, 0, 6, 6, 6, 0, 0, 0},
     {1, 2, 2, 0, 0, 6, 3, 0, 3, 3, 3},
     {0, 2, 0, 0, 3, 3, 3, 3, 6, 3, 0},
     {1, 2, 2, 3, 3, 2, 2, 2, 2, 2, 2},
     {0, 2, 0, 3, 0, 2, 2, 2, 4, 4, 4},
     {1, 1, 1, 1, 1, 3, 1, 5, 3, 3, 3},
     {1, 1, 1, 1, 1, 1, 5, 3, 3, 3, 3},
     {1, 0, 0, 2, 2, 4, 3, 2, 3, 3, 3},
     {0, 0, 2, 2, 1, 3, 3, 3, 4, 3, 2},
     {0, 1, 1, 1, 2, 3, 3, 3, 3, 1, 5},
     {0, 1, 1, 1, 2, 3, 3, 3, 1, 5, 3}},
    {{0, 2, 0, 3, 0, 6, 6, 6, 0, 0, 0},
     {1, 2, 2, 0, 0, 3, 3, 3, 6, 3, 0},
     {0, 2, 0, 0, 3, 6, 3, 0, 3, 3, 3},
     {1, 2, 2, 3, 3, 2, 2, 2, 2, 2, 2},
     {0, 2, 0, 3, 0, 2, 2, 2, 4, 4, 4},
     {1, 1, 1, 1, 1, 2, 5, 2, 2, 3, 4},
     {1, 1, 1, 1, 1, 4, 1, 4, 2, 3, 4},
     {1, 0, 0, 2, 2, 3, 3, 3, 4, 3, 2},
     {0, 0, 2, 2, 1, 4, 3, 2, 3, 3, 3},
     {0, 1, 1, 1, 2, 2, 3, 4, 2, 5, 2},
     {0, 1, 1, 1, 2, 2, 3, 4, 4, 1, 4}},
    {{0, 2, 0, 3, 0, 6, 6, 6, 0, 0, 0},
     {1, 2, 2, 0, 0, 3, 3, 3, 6, 3, 0},
     {0, 2, 0, 0, 3, 6, 3, 0, 3, 3, 3},
     {1, 2, 2, 3, 3, 2, 2, 2, 2, 2, 2},
     {0, 2, 0, 3, 0, 2, 2, 2, 4, 4, 4},
     {1, 1, 1, 1, 1, 3, 3, 3, 3, 1, 5},
     {1, 1, 1, 1, 1, 3, 3, 3, 1, 5, 3},
     {1, 0, 0, 2, 2, 3, 3, 3, 4, 3, 2},
     {0, 0, 2, 2, 1, 4, 3, 2, 3, 3, 3},
     {0, 1, 1, 1, 2, 3, 1, 5, 3, 3, 3},
     {0, 1, 1, 1, 2, 1, 5, 3, 3, 3, 3}}};

}  // namespace

OrbitMatrix load_appendix(int id) {
  if (id < 1 || id > 4) throw std::invalid_argument("load_appendix: id must be in 1..4");
  OrbitMatrix m;
  m.params = {47, 23, 11};
  m.group_order = 6;
  m.row_orbit_sizes = {1, 2, 2, 3, 3, 6, 6, 6, 6, 6, 6};
  m.col_orbit_sizes = m.row_orbit_sizes;
  m.s.resize(121);
  for (int i = 0; i < 11; ++i)
    for (int j = 0; j < 11; ++j) m.s[static_cast<std::size_t>(i) * 11 + j] = kAppendix[id - 1][i][j];
  return m;
}

}  // namespace tdc::om
