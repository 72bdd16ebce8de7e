#include "tdc/weight.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace tdc::weight {

using gf3::TritMatrix;
using gf3::Word;

std::string to_string(Classification c) {
  switch (c) {
    case Classification::extremal: return "extremal";
    case Classification::near_extremal: return "near_extremal";
    default: return "neither";
  }
}

std::vector<InfoSet> build_information_sets(const TritMatrix& gen) {
  const int n = gen.cols();
  std::vector<char> used(n, 0);
  std::vector<InfoSet> sets;
  while (true) {
    std::vector<int> order;
    order.reserve(n);
    for (int c = 0; c < n; ++c)
      if (!used[c]) order.push_back(c);
    if (order.empty()) break;
    for (int c = 0; c < n; ++c)
      if (used[c]) order.push_back(c);

    gf3::RrefResult rr = gf3::rref_ordered(gen, order);
    InfoSet is;
    is.basis = rr.r;
    for (int p : rr.pivots)
      if (!used[p]) is.new_pivots.push_back(p);
    is.deficit = rr.rank - static_cast<int>(is.new_pivots.size());
    if (is.new_pivots.empty()) break;
    for (int p : is.new_pivots) used[p] = 1;
    sets.push_back(std::move(is));
  }
  return sets;
}

namespace {

// Enumerates codewords whose message weight with respect to `basis` is
// exactly `target`, with the first nonzero coefficient fixed to 1 (so each
// +-pair appears once per information set). Calls visit(span) for each.
template <typename F>
void enumerate_exact(const TritMatrix& basis, int target, F&& visit) {
  const int k = basis.rows();
  const int w = basis.words_per_row();
  if (target <= 0 || target > k) return;
  std::vector<Word> stack(static_cast<std::size_t>(target + 1) * w, 0);

  // level = number of rows already combined
  auto rec = [&](auto&& self, int start, int level) -> void {
    Word* cur = stack.data() + static_cast<std::size_t>(level) * w;
    Word* nxt = stack.data() + static_cast<std::size_t>(level + 1) * w;
    const int limit = k - (target - level) + 1;
    for (int r = start; r < limit; ++r) {
      auto row = basis.row(r);
      for (int i = 0; i < w; ++i) nxt[i] = gf3::packed_add(cur[i], row[i]);
      if (level + 1 == target)
        visit(std::span<const Word>(nxt, static_cast<std::size_t>(w)));
      else
        self(self, r + 1, level + 1);
      if (level > 0) {
        for (int i = 0; i < w; ++i) nxt[i] = gf3::packed_add(cur[i], gf3::packed_neg(row[i]));
        if (level + 1 == target)
          visit(std::span<const Word>(nxt, static_cast<std::size_t>(w)));
        else
          self(self, r + 1, level + 1);
      }
    }
  };
  rec(rec, 0, 0);
}

int span_weight(std::span<const Word> v) {
  int s = 0;
  for (Word w : v) s += gf3::packed_weight(w);
  return s;
}

// Canonical byte key of the +-pair containing this codeword: the member whose
// first nonzero slot holds 1.
std::string pair_key(std::span<const Word> v) {
  bool flip = false;
  for (Word w : v) {
    Word nz = (w | (w >> 1)) & gf3::kLoBits;
    if (nz == 0) continue;
    int sh = std::countr_zero(nz);  // twice the slot index
    flip = ((w >> sh) & 3u) == 2u;
    break;
  }
  std::string key(v.size() * sizeof(Word), '\0');
  for (std::size_t i = 0; i < v.size(); ++i) {
    Word w = flip ? gf3::packed_neg(v[i]) : v[i];
    std::memcpy(key.data() + i * sizeof(Word), &w, sizeof(Word));
  }
  return key;
}

long long lower_bound_at(const std::vector<InfoSet>& sets, const std::vector<int>& depths) {
  long long lb = 0;
  for (std::size_t j = 0; j < sets.size(); ++j)
    lb += std::max(0, depths[j] + 1 - sets[j].deficit);
  return lb;
}

void require_nonzero_dimension(const code::TernaryCode& c) {
  if (c.k <= 0 || c.generator.rows() != c.k)
    throw std::invalid_argument("weight engine: zero-dimensional code");
}

struct DepthPlan {
  std::vector<int> depths;
  bool full_enumeration = false;  // some set reaches message weight k
};

// Smallest balanced per-set depths certifying completeness for weight w.
DepthPlan plan_depths(const std::vector<InfoSet>& sets, int k, int w) {
  DepthPlan plan;
  plan.depths.assign(sets.size(), 0);
  while (lower_bound_at(sets, plan.depths) < w + 1) {
    int arg = -1;
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if (plan.depths[j] >= k) continue;
      if (arg < 0 || plan.depths[j] < plan.depths[arg]) arg = static_cast<int>(j);
    }
    if (arg < 0) break;  // everything maxed out: full enumeration reached
    ++plan.depths[arg];
  }
  for (std::size_t j = 0; j < sets.size(); ++j)
    if (plan.depths[j] >= k) plan.full_enumeration = true;
  if (!plan.full_enumeration && lower_bound_at(sets, plan.depths) < w + 1)
    throw std::logic_error("weight engine: cannot certify completeness");
  return plan;
}

}  // namespace

int min_weight(const code::TernaryCode& c) {
  require_nonzero_dimension(c);
  auto sets = build_information_sets(c.generator);
  int best = std::numeric_limits<int>::max();
  for (int p = 1; p <= c.k; ++p) {
    for (const auto& is : sets) {
      enumerate_exact(is.basis, p, [&](std::span<const Word> v) {
        int w = span_weight(v);
        if (w < best) best = w;
      });
    }
    std::vector<int> depths(sets.size(), p);
    long long lb = lower_bound_at(sets, depths);
    // weights of a self-dual ternary code are multiples of 3, which lets the
    // bound stop two short
    long long stop = c.self_dual ? best - 2 : best;
    if (best != std::numeric_limits<int>::max() && lb >= stop) break;
  }
  return best;
}

long long count_weight(const code::TernaryCode& c, int w, const EnumOptions& opts) {
  require_nonzero_dimension(c);
  if (w < 0) throw std::invalid_argument("count_weight: negative weight");
  if (w == 0) return 1;
  int ceiling = opts.resolve_ceiling(c.n);
  if (w > ceiling)
    throw std::invalid_argument("count_weight: weight " + std::to_string(w) +
                                " exceeds enumeration ceiling " + std::to_string(ceiling) +
                                " (cost guard; raise EnumOptions::ceiling to override)");
  if (w > c.n) return 0;

  auto sets = build_information_sets(c.generator);
  DepthPlan plan = plan_depths(sets, c.k, w);

  std::unordered_set<std::string> pairs;
  for (std::size_t j = 0; j < sets.size(); ++j) {
    for (int p = 1; p <= plan.depths[j]; ++p) {
      enumerate_exact(sets[j].basis, p, [&](std::span<const Word> v) {
        if (span_weight(v) == w) pairs.insert(pair_key(v));
      });
    }
  }
  long long a = 2 * static_cast<long long>(pairs.size());
  if (c.self_dual && w % 3 != 0 && a != 0)
    throw std::logic_error("count_weight: self-dual code has a weight not divisible by 3");
  return a;
}

std::vector<std::uint64_t> weight_supports(const code::TernaryCode& c, int w,
                                           const EnumOptions& opts) {
  require_nonzero_dimension(c);
  if (c.n > 64) throw std::invalid_argument("weight_supports: n > 64 unsupported");
  if (w <= 0) throw std::invalid_argument("weight_supports: weight must be positive");
  int ceiling = opts.resolve_ceiling(c.n);
  if (w > ceiling) throw std::invalid_argument("weight_supports: weight exceeds enumeration ceiling");

  auto sets = build_information_sets(c.generator);
  DepthPlan plan = plan_depths(sets, c.k, w);

  std::unordered_set<std::string> pairs;
  std::vector<std::uint64_t> supports;
  for (std::size_t j = 0; j < sets.size(); ++j) {
    for (int p = 1; p <= plan.depths[j]; ++p) {
      enumerate_exact(sets[j].basis, p, [&](std::span<const Word> v) {
        if (span_weight(v) != w) return;
        if (!pairs.insert(pair_key(v)).second) return;
        std::uint64_t mask = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
          Word nz = (v[i] | (v[i] >> 1)) & gf3::kLoBits;
          while (nz) {
            int slot = std::countr_zero(nz) / 2;
            mask |= std::uint64_t{1} << (static_cast<int>(i) * gf3::kTritsPerWord + slot);
            nz &= nz - 1;
          }
        }
        supports.push_back(mask);
      });
    }
  }
  std::sort(supports.begin(), supports.end());
  return supports;
}

WeightReport classify(const code::TernaryCode& c, const EnumOptions& opts) {
  WeightReport r;
  r.n = c.n;
  r.k = c.k;
  r.d = min_weight(c);
  if (c.self_dual && r.d % 3 != 0)
    throw std::logic_error("classify: self-dual code with minimum weight not divisible by 3");
  r.counts[r.d] = count_weight(c, r.d, opts);
  if (r.n % 12 == 0) {
    if (r.d == r.n / 4 + 3)
      r.classification = Classification::extremal;
    else if (r.d == r.n / 4)
      r.classification = Classification::near_extremal;
  }
  if (r.classification == Classification::near_extremal && r.n == 48) {
    long long a12 = r.counts.at(12);
    if (a12 % 8 != 0) throw std::logic_error("classify: A_12 not divisible by 8");
    r.beta = a12 / 8;
    if (r.beta < 1 || r.beta > 4324)
      throw std::logic_error("classify: beta outside [1, 4324]");
  }
  return r;
}

std::pair<bool, std::vector<long long>> support_one_design_check(const code::TernaryCode& c, int w,
                                                                 const EnumOptions& opts) {
  auto supports = weight_supports(c, w, opts);
  std::vector<long long> counts(c.n, 0);
  for (std::uint64_t m : supports) {
    while (m) {
      counts[std::countr_zero(m)] += 1;
      m &= m - 1;
    }
  }
  bool uniform = std::all_of(counts.begin(), counts.end(),
                             [&](long long x) { return x == counts[0]; });
  return {uniform, counts};
}

}  // namespace tdc::weight
