#include "tdc/code.hpp"

namespace tdc::code {

using gf3::TritMatrix;
using gf3::TritVector;

TernaryCode code_from_generator(const TritMatrix& rows) {
  gf3::RrefResult rr = gf3::rref(rows);
  if (rr.rank == 0) throw std::invalid_argument("code_from_generator: zero-dimensional code");
  TernaryCode c;
  c.n = rows.cols();
  c.k = rr.rank;
  c.generator = TritMatrix(rr.rank, rows.cols());
  for (int i = 0; i < rr.rank; ++i) {
    auto src = rr.r.row(i);
    auto dst = c.generator.row(i);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  c.self_dual = is_self_dual(c);
  return c;
}

TernaryCode code_from_design(const design::IncidenceStructure& d, const design::DesignParams& p) {
  if (!design::validate_symmetric_design(d, p))
    throw std::invalid_argument("code_from_design: not a symmetric design with the given parameters");
  const int v = p.v;
  TritMatrix g(v, v + 1);
  for (int i = 0; i < v; ++i) {
    for (int j = 0; j < v; ++j)
      if (d.get(i, j)) g.set(i, j, 1);
    g.set(i, v, 1);
  }
  TernaryCode c = code_from_generator(g);
  if (p.v == 47 && p.k == 23 && p.lambda == 11) {
    if (c.k != 24 || !c.self_dual)
      throw std::logic_error("code_from_design: rank/self-duality invariant violated");
  }
  return c;
}

bool is_self_dual(const TernaryCode& c) {
  if (c.n % 2 != 0 || c.k != c.n / 2) return false;
  for (int i = 0; i < c.k; ++i)
    for (int j = i; j < c.k; ++j)
      if (gf3::row_dot(c.generator.row(i), c.generator.row(j)) != 0) return false;
  return true;
}

bool contains(const TernaryCode& c, const TritVector& v) {
  gf3::RrefResult rr{c.generator, c.k, {}};
  // generator is already in rref; recover pivot columns
  for (int i = 0; i < c.k; ++i)
    for (int j = 0; j < c.n; ++j)
      if (c.generator.get(i, j) != 0) {
        rr.pivots.push_back(j);
        break;
      }
  return gf3::in_row_space(rr, v);
}

TernaryCode monomial_image(const TernaryCode& c, const std::vector<int>& coord_perm,
                           const std::vector<std::uint8_t>& signs) {
  if (static_cast<int>(coord_perm.size()) != c.n || static_cast<int>(signs.size()) != c.n)
    throw std::invalid_argument("monomial_image: map size mismatch");
  TritMatrix g(c.k, c.n);
  for (int i = 0; i < c.k; ++i)
    for (int j = 0; j < c.n; ++j) {
      std::uint8_t e = c.generator.get(i, j);
      if (e) g.set(i, coord_perm[j], gf3::mul3(e, signs[coord_perm[j]]));
    }
  return code_from_generator(g);
}

}  // namespace tdc::code
