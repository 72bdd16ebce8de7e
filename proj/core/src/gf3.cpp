#include "tdc/gf3.hpp"

#include <algorithm>

namespace tdc::gf3 {

TritMatrix TritMatrix::from_strings(const std::vector<std::string>& rows) {
  if (rows.empty()) throw std::invalid_argument("from_strings: no rows");
  TritMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int r = 0; r < m.rows(); ++r) {
    if (static_cast<int>(rows[r].size()) != m.cols())
      throw std::invalid_argument("from_strings: ragged rows");
    for (int c = 0; c < m.cols(); ++c) {
      char ch = rows[r][c];
      if (ch < '0' || ch > '2') throw std::invalid_argument("from_strings: bad digit");
      m.set(r, c, static_cast<std::uint8_t>(ch - '0'));
    }
  }
  return m;
}

std::string TritMatrix::to_string() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(rows_) * (cols_ + 1));
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) out.push_back(static_cast<char>('0' + get(r, c)));
    out.push_back('\n');
  }
  return out;
}

static RrefResult rref_impl(const TritMatrix& m, const std::vector<int>& order) {
  RrefResult res{m, 0, {}};
  TritMatrix& r = res.r;
  int row = 0;
  for (int c : order) {
    if (row >= r.rows()) break;
    int pivot = -1;
    for (int i = row; i < r.rows(); ++i) {
      if (r.get(i, c) != 0) { pivot = i; break; }
    }
    if (pivot < 0) continue;
    r.swap_rows(row, pivot);
    if (r.get(row, c) == 2) row_neg(r.row(row));
    for (int i = 0; i < r.rows(); ++i) {
      if (i == row) continue;
      std::uint8_t e = r.get(i, c);
      if (e) row_addmul(r.row(i), r.row(row), neg3(e));
    }
    res.pivots.push_back(c);
    ++row;
  }
  res.rank = row;
  return res;
}

RrefResult rref(const TritMatrix& m) {
  std::vector<int> order(m.cols());
  for (int c = 0; c < m.cols(); ++c) order[c] = c;
  RrefResult res = rref_impl(m, order);
  // pivots are automatically increasing for the natural order
  return res;
}

RrefResult rref_ordered(const TritMatrix& m, const std::vector<int>& col_order) {
  return rref_impl(m, col_order);
}

TritMatrix mat_mul(const TritMatrix& a, const TritMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: shape mismatch");
  TritMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    auto dst = c.row(i);
    for (int j = 0; j < a.cols(); ++j) {
      std::uint8_t e = a.get(i, j);
      if (e) row_addmul(dst, b.row(j), e);
    }
  }
  return c;
}

TritMatrix transpose(const TritMatrix& m) {
  TritMatrix t(m.cols(), m.rows());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      std::uint8_t e = m.get(r, c);
      if (e) t.set(c, r, e);
    }
  return t;
}

KernelBasis kernel_basis(const TritMatrix& m) {
  RrefResult rr = rref(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (int p : rr.pivots) is_pivot[p] = 1;
  KernelBasis kb;
  kb.dim = m.cols() - rr.rank;
  if (kb.dim == 0) return kb;
  kb.basis = TritMatrix(kb.dim, m.cols());
  int out = 0;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    kb.basis.set(out, f, 1);
    for (int t = 0; t < rr.rank; ++t) kb.basis.set(out, rr.pivots[t], neg3(rr.r.get(t, f)));
    ++out;
  }
  return kb;
}

TritVector reduce_against(const RrefResult& rr, const TritVector& v) {
  if (v.size() != rr.r.cols()) throw std::invalid_argument("reduce_against: length mismatch");
  TritVector res = v;
  for (int t = 0; t < rr.rank; ++t) {
    std::uint8_t e = res.get(rr.pivots[t]);
    if (e) row_addmul(res.span(), rr.r.row(t), neg3(e));
  }
  return res;
}

}  // namespace tdc::gf3
