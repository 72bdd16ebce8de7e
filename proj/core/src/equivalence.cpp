#include "tdc/equivalence.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tdc::equiv {

namespace {

constexpr std::uint64_t kHashSeed = 0xcbf29ce484222325ull;

inline std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h * 0x100000001b3ull;
}

using Cells = std::vector<std::vector<int>>;

class Canonizer {
 public:
  explicit Canonizer(const ColoredGraph& g) : g_(g), words_((g.n + 63) / 64) {}

  CanonicalLabeling run() {
    std::map<int, std::vector<int>> by_color;
    for (int v = 0; v < g_.n; ++v) by_color[g_.color[v]].push_back(v);
    Cells cells;
    for (auto& [c, vs] : by_color) cells.push_back(std::move(vs));
    dfs(std::move(cells), 0, kHashSeed);

    CanonicalLabeling out;
    out.aut_order = aut_count_;
    out.certificate = best_cert_;
    out.position.assign(g_.n, -1);
    for (int p = 0; p < g_.n; ++p) out.position[best_labeling_[p]] = p;
    return out;
  }

 private:
  // Splits every refinable cell by degree into the splitter cells, then by
  // common-neighbor counts against singleton cells once degree counts are
  // stable. Returns the accumulated, label-invariant trace hash.
  std::uint64_t refine(Cells& cells, std::uint64_t h) {
    std::vector<std::uint64_t> mask(words_);
    std::vector<std::pair<int, int>> keyed;
    while (true) {
      bool changed = false;
      for (std::size_t ws = 0; ws < cells.size(); ++ws) {
        std::fill(mask.begin(), mask.end(), 0);
        for (int v : cells[ws]) mask[v >> 6] |= std::uint64_t{1} << (v & 63);
        for (std::size_t x = 0; x < cells.size(); ++x) {
          if (cells[x].size() <= 1) continue;
          keyed.clear();
          int first = -1;
          bool uniform = true;
          for (int v : cells[x]) {
            int dv = 0;
            for (int w = 0; w < words_; ++w) dv += std::popcount(g_.adj[v][w] & mask[w]);
            if (first < 0) first = dv;
            uniform &= dv == first;
            keyed.push_back({dv, v});
          }
          if (uniform) continue;
          std::stable_sort(keyed.begin(), keyed.end(),
                           [](const auto& a, const auto& b) { return a.first < b.first; });
          h = mix(h, 0x11);
          h = mix(h, ws);
          h = mix(h, x);
          std::size_t insert_at = x;
          Cells parts;
          std::vector<int> cur;
          for (std::size_t i = 0; i < keyed.size(); ++i) {
            if (i > 0 && keyed[i].first != keyed[i - 1].first) {
              h = mix(h, static_cast<std::uint64_t>(keyed[i - 1].first));
              h = mix(h, cur.size());
              parts.push_back(std::move(cur));
              cur.clear();
            }
            cur.push_back(keyed[i].second);
          }
          h = mix(h, static_cast<std::uint64_t>(keyed.back().first));
          h = mix(h, cur.size());
          parts.push_back(std::move(cur));

          cells.erase(cells.begin() + insert_at);
          cells.insert(cells.begin() + insert_at, std::make_move_iterator(parts.begin()),
                       std::make_move_iterator(parts.end()));
          if (insert_at < ws) ws += parts.size() - 1;
          x += parts.size() - 1;
          changed = true;
        }
      }
      if (changed) continue;

      // common-neighbor counts against singleton cells
      bool cn_changed = false;
      for (std::size_t su = 0; su < cells.size() && !cn_changed; ++su) {
        if (cells[su].size() != 1) continue;
        const auto& au = g_.adj[cells[su][0]];
        for (std::size_t x = 0; x < cells.size(); ++x) {
          if (cells[x].size() <= 1) continue;
          keyed.clear();
          int first = -1;
          bool uniform = true;
          for (int v : cells[x]) {
            int dv = 0;
            for (int w = 0; w < words_; ++w) dv += std::popcount(g_.adj[v][w] & au[w]);
            if (first < 0) first = dv;
            uniform &= dv == first;
            keyed.push_back({dv, v});
          }
          if (uniform) continue;
          std::stable_sort(keyed.begin(), keyed.end(),
                           [](const auto& a, const auto& b) { return a.first < b.first; });
          h = mix(h, 0x22);
          h = mix(h, su);
          h = mix(h, x);
          Cells parts;
          std::vector<int> cur;
          for (std::size_t i = 0; i < keyed.size(); ++i) {
            if (i > 0 && keyed[i].first != keyed[i - 1].first) {
              h = mix(h, static_cast<std::uint64_t>(keyed[i - 1].first));
              h = mix(h, cur.size());
              parts.push_back(std::move(cur));
              cur.clear();
            }
            cur.push_back(keyed[i].second);
          }
          h = mix(h, static_cast<std::uint64_t>(keyed.back().first));
          h = mix(h, cur.size());
          parts.push_back(std::move(cur));
          cells.erase(cells.begin() + x);
          cells.insert(cells.begin() + x, std::make_move_iterator(parts.begin()),
                       std::make_move_iterator(parts.end()));
          cn_changed = true;
          break;
        }
      }
      if (!cn_changed) break;
    }
    for (const auto& cell : cells) h = mix(h, cell.size());
    return h;
  }

  void dfs(Cells cells, int depth, std::uint64_t parent_hash) {
    std::uint64_t h = refine(cells, parent_hash);

    if (depth < static_cast<int>(best_path_.size())) {
      if (h < best_path_[depth]) return;  // canonical path carries the maximal trace
      if (h > best_path_[depth]) {
        best_path_.resize(depth + 1);
        best_path_[depth] = h;
        have_best_ = false;
        best_cert_.clear();
        aut_count_ = 0;
      }
    } else {
      best_path_.push_back(h);
    }

    int target = -1;
    std::size_t best_size = ~std::size_t{0};
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].size() > 1 && cells[i].size() < best_size) {
        best_size = cells[i].size();
        target = static_cast<int>(i);
      }
    }

    if (target < 0) {  // discrete partition: leaf
      std::vector<int> labeling(g_.n);
      for (int p = 0; p < g_.n; ++p) labeling[p] = cells[p][0];
      std::string cert = make_certificate(labeling);
      if (!have_best_ || cert > best_cert_) {
        have_best_ = true;
        best_cert_ = std::move(cert);
        best_labeling_ = labeling;
        aut_count_ = 1;
      } else if (cert == best_cert_) {
        ++aut_count_;
      }
      return;
    }

    for (int v : cells[target]) {
      Cells child = cells;
      auto& tc = child[target];
      tc.erase(std::find(tc.begin(), tc.end(), v));
      child.insert(child.begin() + target, {v});
      dfs(std::move(child), depth + 1, mix(h, 0x33));
    }
  }

  std::string make_certificate(const std::vector<int>& labeling) const {
    std::string cert;
    cert.reserve(g_.n + (static_cast<std::size_t>(g_.n) * g_.n + 7) / 8);
    for (int p = 0; p < g_.n; ++p) cert.push_back(static_cast<char>(g_.color[labeling[p]]));
    unsigned char acc = 0;
    int nb = 0;
    for (int p = 0; p < g_.n; ++p) {
      const auto& row = g_.adj[labeling[p]];
      for (int q = 0; q < g_.n; ++q) {
        int u = labeling[q];
        acc = static_cast<unsigned char>((acc << 1) | ((row[u >> 6] >> (u & 63)) & 1u));
        if (++nb == 8) {
          cert.push_back(static_cast<char>(acc));
          acc = 0;
          nb = 0;
        }
      }
    }
    if (nb) cert.push_back(static_cast<char>(acc << (8 - nb)));
    return cert;
  }

  const ColoredGraph& g_;
  int words_;
  std::vector<std::uint64_t> best_path_;
  bool have_best_ = false;
  std::string best_cert_;
  std::vector<int> best_labeling_;
  long long aut_count_ = 0;
};

}  // namespace

CanonicalLabeling canonical_labeling(const ColoredGraph& g) {
  if (g.n <= 0) throw std::invalid_argument("canonical_labeling: empty graph");
  Canonizer c(g);
  return c.run();
}

// ---- design canonical form ---------------------------------------------------

namespace {

// Histogram of triple intersection sizes seen from one point (pairs of other
// points, counting blocks through all three) or dually from one block.
std::vector<long long> triple_profile(const std::vector<std::vector<std::uint64_t>>& masks, int self,
                                      int maxcount) {
  std::vector<long long> hist(maxcount + 1, 0);
  const int n = static_cast<int>(masks.size());
  const int words = static_cast<int>(masks[self].size());
  for (int a = 0; a < n; ++a) {
    if (a == self) continue;
    for (int b = a + 1; b < n; ++b) {
      if (b == self) continue;
      int t = 0;
      for (int w = 0; w < words; ++w) t += std::popcount(masks[self][w] & masks[a][w] & masks[b][w]);
      ++hist[t];
    }
  }
  return hist;
}

}  // namespace

CanonicalForm canonical_design(const design::IncidenceStructure& d) {
  const int v = d.points(), b = d.blocks();
  const int n = v + b;

  std::vector<std::vector<std::uint64_t>> cols(v), rows(b);
  for (int p = 0; p < v; ++p) cols[p] = d.column_bits(p);
  for (int i = 0; i < b; ++i) rows[i].assign(d.row(i).begin(), d.row(i).end());

  // invariant initial coloring: side first, then the triple profile
  std::vector<std::pair<int, std::vector<long long>>> keys(n);
  for (int p = 0; p < v; ++p) keys[p] = {0, triple_profile(cols, p, b)};
  for (int i = 0; i < b; ++i) keys[v + i] = {1, triple_profile(rows, i, v)};
  std::vector<std::pair<int, std::vector<long long>>> sorted_keys = keys;
  std::sort(sorted_keys.begin(), sorted_keys.end());
  sorted_keys.erase(std::unique(sorted_keys.begin(), sorted_keys.end()), sorted_keys.end());

  ColoredGraph g = ColoredGraph::empty(n);
  for (int u = 0; u < n; ++u)
    g.color[u] = static_cast<int>(
        std::lower_bound(sorted_keys.begin(), sorted_keys.end(), keys[u]) - sorted_keys.begin());
  for (int i = 0; i < b; ++i)
    for (int p = 0; p < v; ++p)
      if (d.get(i, p)) g.add_edge(v + i, p);

  CanonicalLabeling lab = canonical_labeling(g);

  CanonicalForm out;
  out.aut_order = lab.aut_order;
  out.point_perm.resize(v);
  out.block_perm.resize(b);
  for (int p = 0; p < v; ++p) out.point_perm[p] = lab.position[p];
  for (int i = 0; i < b; ++i) out.block_perm[i] = lab.position[v + i] - v;
  out.canonical = design::apply_permutations(d, out.point_perm, out.block_perm);
  return out;
}

std::string design_key(const design::IncidenceStructure& canonical) {
  std::string key = std::to_string(canonical.points()) + "x" + std::to_string(canonical.blocks()) + ":";
  unsigned char acc = 0;
  int nb = 0;
  for (int i = 0; i < canonical.blocks(); ++i)
    for (int j = 0; j < canonical.points(); ++j) {
      acc = static_cast<unsigned char>((acc << 1) | (canonical.get(i, j) ? 1 : 0));
      if (++nb == 8) {
        key.push_back(static_cast<char>(acc));
        acc = 0;
        nb = 0;
      }
    }
  if (nb) key.push_back(static_cast<char>(acc << (8 - nb)));
  return key;
}

// ---- code fingerprints -------------------------------------------------------

std::string CodeFingerprint::key() const {
  std::ostringstream os;
  os << n << ' ' << k << ' ' << d << ' ' << a_d << '|';
  for (const auto& [size, cnt] : intersection_distribution) os << size << ':' << cnt << ',';
  os << '|';
  for (long long x : degree_sequence) os << x << ',';
  return os.str();
}

CodeSupports code_supports(const code::TernaryCode& c, int d, const weight::EnumOptions& opts) {
  CodeSupports s;
  s.d = d;
  s.supports = weight::weight_supports(c, d, opts);
  s.deg.assign(c.n, 0);
  s.pairs.assign(c.n, std::vector<int>(c.n, 0));
  for (std::uint64_t m : s.supports) {
    for (std::uint64_t x = m; x; x &= x - 1) {
      int a = std::countr_zero(x);
      ++s.deg[a];
      for (std::uint64_t y = x & (x - 1); y; y &= y - 1) {
        int b = std::countr_zero(y);
        ++s.pairs[a][b];
        ++s.pairs[b][a];
      }
    }
  }
  return s;
}

CodeFingerprint fingerprint_from(const code::TernaryCode& c, const CodeSupports& s) {
  CodeFingerprint f;
  f.n = c.n;
  f.k = c.k;
  f.d = s.d;
  f.a_d = 2 * static_cast<long long>(s.supports.size());
  f.degree_sequence.assign(s.deg.begin(), s.deg.end());
  std::sort(f.degree_sequence.begin(), f.degree_sequence.end());
  for (std::size_t i = 0; i < s.supports.size(); ++i)
    for (std::size_t j = i + 1; j < s.supports.size(); ++j)
      ++f.intersection_distribution[std::popcount(s.supports[i] & s.supports[j])];
  return f;
}

CodeFingerprint fingerprint(const code::TernaryCode& c, const weight::EnumOptions& opts) {
  int d = weight::min_weight(c);
  return fingerprint_from(c, code_supports(c, d, opts));
}

// ---- monomial equivalence ----------------------------------------------------

MonomialMap inverse(const MonomialMap& m) {
  const int n = static_cast<int>(m.perm.size());
  MonomialMap r;
  r.perm.resize(n);
  r.signs.resize(n);
  for (int j = 0; j < n; ++j) r.perm[m.perm[j]] = j;
  for (int j = 0; j < n; ++j) r.signs[j] = m.signs[m.perm[j]];  // inverse of +-1 is itself
  return r;
}

MonomialMap compose(const MonomialMap& outer, const MonomialMap& inner) {
  const int n = static_cast<int>(outer.perm.size());
  MonomialMap r;
  r.perm.resize(n);
  r.signs.resize(n);
  for (int j = 0; j < n; ++j) r.perm[j] = outer.perm[inner.perm[j]];
  for (int j = 0; j < n; ++j)
    r.signs[outer.perm[inner.perm[j]]] =
        gf3::mul3(outer.signs[outer.perm[inner.perm[j]]], inner.signs[inner.perm[j]]);
  return r;
}

namespace {

class EquivalenceSearch {
 public:
  EquivalenceSearch(const code::TernaryCode& c1, const code::TernaryCode& c2,
                    const CodeSupports& s1, const CodeSupports& s2)
      : c1_(c1), c2_(c2), s1_(s1), s2_(s2), n_(c1.n) {
    sigma_.assign(n_, -1);
    used_.assign(n_, 0);
    cand_.assign(n_, 0);
    for (int a = 0; a < n_; ++a) {
      std::uint64_t m = 0;
      for (int b = 0; b < n_; ++b)
        if (s2_.deg[b] == s1_.deg[a]) m |= std::uint64_t{1} << b;
      cand_[a] = m;
    }
    sorted_s2_ = s2_.supports;  // already sorted by weight_supports
  }

  std::optional<MonomialMap> run() {
    if (search(0)) return found_;
    return std::nullopt;
  }

 private:
  bool search(int depth) {
    if (depth == n_) return finish();
    // most-constrained unassigned coordinate, lowest index on ties
    int a = -1;
    int best = n_ + 1;
    for (int i = 0; i < n_; ++i) {
      if (sigma_[i] >= 0) continue;
      int cnt = live_count(i);
      if (cnt == 0) return false;
      if (cnt < best) {
        best = cnt;
        a = i;
      }
    }
    std::uint64_t m = live_mask(a);
    while (m) {
      int b = std::countr_zero(m);
      m &= m - 1;
      sigma_[a] = b;
      used_[b] = 1;
      if (consistent(a, b) && search(depth + 1)) return true;
      sigma_[a] = -1;
      used_[b] = 0;
    }
    return false;
  }

  std::uint64_t live_mask(int a) const {
    std::uint64_t m = cand_[a];
    for (int b = 0; b < n_; ++b)
      if (used_[b]) m &= ~(std::uint64_t{1} << b);
    std::uint64_t out = 0;
    for (std::uint64_t x = m; x; x &= x - 1) {
      int b = std::countr_zero(x);
      bool ok = true;
      for (int ap = 0; ap < n_ && ok; ++ap)
        if (sigma_[ap] >= 0) ok = s2_.pairs[b][sigma_[ap]] == s1_.pairs[a][ap];
      if (ok) out |= std::uint64_t{1} << b;
    }
    return out;
  }
  int live_count(int a) const { return std::popcount(live_mask(a)); }

  bool consistent(int a, int b) const {
    for (int ap = 0; ap < n_; ++ap)
      if (sigma_[ap] >= 0 && ap != a && s2_.pairs[b][sigma_[ap]] != s1_.pairs[a][ap]) return false;
    return true;
  }

  bool finish() {
    // support multisets must correspond under sigma
    std::vector<std::uint64_t> mapped;
    mapped.reserve(s1_.supports.size());
    for (std::uint64_t m : s1_.supports) {
      std::uint64_t t = 0;
      for (std::uint64_t x = m; x; x &= x - 1) t |= std::uint64_t{1} << sigma_[std::countr_zero(x)];
      mapped.push_back(t);
    }
    std::sort(mapped.begin(), mapped.end());
    if (mapped != sorted_s2_) return false;
    return solve_signs();
  }

  // Sign vector: for each generator row g of C1 and parity row h of C2,
  // sum_t (sigma g)_t h_t x_t = 0; solutions with no zero coordinate are the
  // valid diagonal parts.
  bool solve_signs() {
    gf3::KernelBasis h2 = gf3::kernel_basis(c2_.generator);
    const int rows = c1_.k * (h2.dim == 0 ? 0 : h2.dim);
    if (h2.dim == 0) return false;  // dual is trivial only for k = n, not a real code here
    gf3::TritMatrix sys(rows, n_);
    int r = 0;
    for (int i = 0; i < c1_.k; ++i) {
      std::vector<std::uint8_t> mg(n_, 0);
      for (int j = 0; j < n_; ++j) mg[sigma_[j]] = c1_.generator.get(i, j);
      for (int hrow = 0; hrow < h2.dim; ++hrow, ++r)
        for (int t = 0; t < n_; ++t)
          sys.set(r, t, gf3::mul3(mg[t], h2.basis.get(hrow, t)));
    }
    gf3::KernelBasis ker = gf3::kernel_basis(sys);
    if (ker.dim == 0) return false;
    if (ker.dim > 13) throw std::runtime_error("monomially_equivalent: sign space too large");

    long long combos = 1;
    for (int i = 0; i < ker.dim; ++i) combos *= 3;
    std::vector<std::uint8_t> x(n_);
    for (long long idx = 1; idx < combos; ++idx) {
      std::fill(x.begin(), x.end(), 0);
      long long rem = idx;
      for (int i = 0; i < ker.dim; ++i, rem /= 3) {
        std::uint8_t coef = static_cast<std::uint8_t>(rem % 3);
        if (!coef) continue;
        for (int t = 0; t < n_; ++t)
          x[t] = gf3::add3(x[t], gf3::mul3(coef, ker.basis.get(i, t)));
      }
      if (std::any_of(x.begin(), x.end(), [](std::uint8_t v) { return v == 0; })) continue;
      MonomialMap map;
      map.perm.assign(sigma_.begin(), sigma_.end());
      map.signs = x;
      // verify by re-encoding
      code::TernaryCode image = code::monomial_image(c1_, map.perm, map.signs);
      if (image.generator == c2_.generator) {
        found_ = map;
        return true;
      }
    }
    return false;
  }

  const code::TernaryCode& c1_;
  const code::TernaryCode& c2_;
  const CodeSupports& s1_;
  const CodeSupports& s2_;
  int n_;
  std::vector<int> sigma_;
  std::vector<char> used_;
  std::vector<std::uint64_t> cand_;
  std::vector<std::uint64_t> sorted_s2_;
  MonomialMap found_;
};

}  // namespace

std::optional<MonomialMap> monomially_equivalent(const code::TernaryCode& c1, const CodeSupports& s1,
                                                 const code::TernaryCode& c2, const CodeSupports& s2) {
  if (c1.n != c2.n || c1.k != c2.k)
    throw std::invalid_argument("monomially_equivalent: codes must share n and k");
  if (c1.n > 64) throw std::invalid_argument("monomially_equivalent: n > 64 unsupported");
  if (s1.d != s2.d || s1.supports.size() != s2.supports.size()) return std::nullopt;
  if (!(fingerprint_from(c1, s1) == fingerprint_from(c2, s2))) return std::nullopt;
  EquivalenceSearch search(c1, c2, s1, s2);
  return search.run();
}

std::optional<MonomialMap> monomially_equivalent(const code::TernaryCode& c1,
                                                 const code::TernaryCode& c2,
                                                 const weight::EnumOptions& opts) {
  if (c1.n != c2.n || c1.k != c2.k)
    throw std::invalid_argument("monomially_equivalent: codes must share n and k");
  if (c1.n > 64) throw std::invalid_argument("monomially_equivalent: n > 64 unsupported");
  int d1 = weight::min_weight(c1), d2 = weight::min_weight(c2);
  if (d1 != d2) return std::nullopt;
  CodeSupports s1 = code_supports(c1, d1, opts);
  CodeSupports s2 = code_supports(c2, d2, opts);
  return monomially_equivalent(c1, s1, c2, s2);
}

}  // namespace tdc::equiv
