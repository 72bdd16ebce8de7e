#include "tdc/verify.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "tdc/equivalence.hpp"
#include "tdc/gamma_tables.hpp"
#include "tdc/indexer.hpp"
#include "tdc/orbit_matrix.hpp"
#include "tdc/weight.hpp"

namespace tdc::verify {

namespace {

void parallel_for(int threads, std::size_t count, const std::function<void(std::size_t)>& fn) {
  threads = std::max(1, std::min<int>(threads, static_cast<int>(count)));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) break;
        fn(i);
      }
    });
  for (auto& th : pool) th.join();
}

void note(const Options& opts, const std::string& line) {
  if (opts.progress) (*opts.progress) << "[verify] " << line << std::endl;
}

std::string fmt_bool(bool b) { return b ? "yes" : "no"; }

// ---- shared fixtures ---------------------------------------------------------

code::TernaryCode tetracode() {
  return code::code_from_generator(gf3::TritMatrix::from_strings({"1110", "0121"}));
}

code::TernaryCode golay12() {
  return code::code_from_design(design::paley_type1_design(11), {11, 5, 2});
}

code::TernaryCode double_tetracode() {
  return code::code_from_generator(gf3::TritMatrix::from_strings(
      {"11100000", "01210000", "00001110", "00000121"}));
}

struct Om1Sample {
  std::vector<indexer::ExpansionResult> designs;
  std::vector<code::TernaryCode> codes;
  std::vector<weight::WeightReport> reports;
};

Om1Sample om1_sample(int count, int threads) {
  Om1Sample s;
  indexer::ExpandOptions eo;
  eo.limit = count;
  s.designs = indexer::expand_collect(om::load_appendix(1), eo);
  s.codes.resize(s.designs.size());
  s.reports.resize(s.designs.size());
  parallel_for(threads, s.designs.size(), [&](std::size_t i) {
    s.codes[i] = code::code_from_design(s.designs[i].incidence, {47, 23, 11});
    s.reports[i] = weight::classify(s.codes[i]);
  });
  return s;
}

// ---- criterion 1: appendix fidelity -------------------------------------------

CriterionResult criterion_appendix_fidelity() {
  CriterionResult r{1, "appendix orbit matrices satisfy C1-C5; single-entry mutations are caught", false, ""};
  int mutations = 0;
  for (int id = 1; id <= 4; ++id) {
    om::OrbitMatrix m = om::load_appendix(id);
    auto check = om::validate_orbit_matrix(m);
    if (!check.ok) {
      r.detail = "bundled matrix " + std::to_string(id) + " failed: " + check.violation;
      return r;
    }
    for (int i = 0; i < m.t(); ++i)
      for (int j = 0; j < m.t(); ++j)
        for (int delta : {+1, -1}) {
          om::OrbitMatrix mut = m;
          mut.at(i, j) += delta;
          auto mc = om::validate_orbit_matrix(mut);
          if (mc.ok || mc.violation.empty() || mc.violation[0] != 'C') {
            r.detail = "mutation at (" + std::to_string(i) + "," + std::to_string(j) +
                       ") of matrix " + std::to_string(id) + " not caught";
            return r;
          }
          ++mutations;
        }
  }
  r.pass = true;
  r.detail = "4 matrices valid; " + std::to_string(mutations) + " single-entry mutations all caught with a named condition";
  return r;
}

// ---- criterion 2: orbit-equation spot check ------------------------------------

CriterionResult criterion_equation_spot_check() {
  CriterionResult r{2, "row-1 self-equation of the first bundled matrix evaluates to 23 = 11 + 12", false, ""};
  om::OrbitMatrix m = om::load_appendix(1);
  long long part2 = 0, part3 = 0, part6 = 0;  // contributions by column orbit size
  for (int j = 0; j < m.t(); ++j) {
    long long sq = static_cast<long long>(m.at(0, j)) * m.at(0, j);
    switch (m.col_orbit_sizes[j]) {
      case 1: part2 += sq; break;  // omega = 1 contributes s^2 exactly (zero here)
      case 2: part2 += sq / 2; if (sq % 2) return r; break;
      case 3: part3 += sq / 3; if (sq % 3) return r; break;
      case 6: part6 += sq / 6; if (sq % 6) return r; break;
      default: return r;
    }
  }
  long long total = part2 + part3 + part6;
  r.pass = total == 23 && part2 == 2 && part3 == 3 && part6 == 18;
  std::ostringstream os;
  os << part2 << " + " << part3 << " + " << part6 << " = " << total << " = 11 + 12";
  r.detail = os.str();
  return r;
}

// ---- criterion 3: oracle equivalence -------------------------------------------

bool distributions_match(const code::TernaryCode& c, std::string& why) {
  std::vector<long long> oracle = brute_force_distribution(c);
  weight::EnumOptions opts;
  opts.ceiling = c.n;
  int d_oracle = 0;
  for (int w = 1; w <= c.n; ++w)
    if (oracle[w] > 0) { d_oracle = w; break; }
  if (weight::min_weight(c) != d_oracle) {
    why = "min_weight mismatch";
    return false;
  }
  int zeros_checked = 0;
  for (int w = 1; w <= c.n; ++w) {
    if (oracle[w] == 0 && zeros_checked >= 2) continue;
    if (oracle[w] == 0) ++zeros_checked;
    if (weight::count_weight(c, w, opts) != oracle[w]) {
      why = "count_weight mismatch at w=" + std::to_string(w);
      return false;
    }
  }
  return true;
}

CriterionResult criterion_oracle_equivalence(const Options& opts) {
  CriterionResult r{3, "enumeration engine agrees with 3^k brute force on reference and random codes", false, ""};

  code::TernaryCode tetra = tetracode();
  auto tetra_dist = brute_force_distribution(tetra);
  if (weight::min_weight(tetra) != 3 || tetra_dist[3] != 8 ||
      weight::count_weight(tetra, 3) != 8) {
    r.detail = "tetracode reference values failed (expect d=3, A3=8)";
    return r;
  }
  code::TernaryCode golay = golay12();
  auto golay_dist = brute_force_distribution(golay);
  if (weight::min_weight(golay) != 6 || golay_dist[6] != 264 ||
      weight::count_weight(golay, 6) != 264) {
    r.detail = "extended Golay reference values failed (expect d=6, A6=264)";
    return r;
  }

  // 100 random self-orthogonal codes with k <= 10: triple-replication base
  // is self-orthogonal, monomial scrambling preserves that.
  std::mt19937 rng(12345);
  std::string why;
  std::vector<code::TernaryCode> codes;
  while (codes.size() < 100) {
    int k = 2 + static_cast<int>(codes.size()) % 9;
    int m = k + static_cast<int>(rng() % 3);
    int n = 3 * m;
    gf3::TritMatrix base(k, n);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < m; ++j) {
        auto v = static_cast<std::uint8_t>(rng() % 3);
        base.set(i, j, v);
        base.set(i, m + j, v);
        base.set(i, 2 * m + j, v);
      }
    if (gf3::rref(base).rank != k) continue;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::uint8_t> signs(n);
    for (auto& s : signs) s = static_cast<std::uint8_t>(1 + rng() % 2);
    codes.push_back(code::monomial_image(code::code_from_generator(base), perm, signs));
  }
  std::atomic<bool> ok{true};
  std::mutex mu;
  parallel_for(opts.threads, codes.size(), [&](std::size_t i) {
    std::string local_why;
    if (!distributions_match(codes[i], local_why)) {
      std::lock_guard<std::mutex> lock(mu);
      ok = false;
      why = "code " + std::to_string(i) + ": " + local_why;
    }
  });
  if (!ok) {
    r.detail = why;
    return r;
  }
  r.pass = true;
  r.detail = "tetracode (d=3, A3=8), extended Golay (d=6, A6=264), and 100 random self-orthogonal codes match brute force";
  return r;
}

// ---- criterion 4: construction at desk scale -----------------------------------

CriterionResult criterion_construction(const Om1Sample& sample) {
  CriterionResult r{4, "Paley code and 25 expanded designs give self-dual rank-24 codes", false, ""};
  code::TernaryCode paley = code::code_from_design(design::paley_type1_design(47), {47, 23, 11});
  if (!paley.self_dual || paley.k != 24) {
    r.detail = "Paley(47) code not certified self-dual of rank 24";
    return r;
  }
  if (sample.designs.size() != 25) {
    r.detail = "expected 25 designs from the capped expansion, got " + std::to_string(sample.designs.size());
    return r;
  }
  om::OrbitMatrix om1 = om::load_appendix(1);
  design::CyclicAction action = indexer::expansion_action(om1);
  for (std::size_t i = 0; i < sample.designs.size(); ++i) {
    const auto& d = sample.designs[i].incidence;
    if (!design::validate_symmetric_design(d, {47, 23, 11})) {
      r.detail = "design " + std::to_string(i) + " is not a 2-(47,23,11) design";
      return r;
    }
    if (!design::is_invariant(d, action)) {
      r.detail = "design " + std::to_string(i) + " is not invariant under the canonical action";
      return r;
    }
    if (!(indexer::collapse(d, om1) == om1)) {
      r.detail = "design " + std::to_string(i) + " does not collapse back to its orbit matrix";
      return r;
    }
    if (!sample.codes[i].self_dual || sample.codes[i].k != 24) {
      r.detail = "code " + std::to_string(i) + " not self-dual of rank 24";
      return r;
    }
  }
  r.pass = true;
  r.detail = "Paley(47) code self-dual rank 24; 25/25 expanded designs valid, invariant, and self-dual rank 24";
  return r;
}

// ---- criterion 5: divisibility and range ---------------------------------------

CriterionResult criterion_divisibility(const Om1Sample& sample) {
  CriterionResult r{5, "every d=12 code in the sample has A12 = 0 mod 8, beta in [1,4324], beta in the OM1 reference set", false, ""};
  int found = 0;
  for (const auto& rep : sample.reports) {
    if (rep.d != 12) continue;
    ++found;
    long long a12 = rep.counts.at(12);
    if (a12 % 8 != 0 || rep.beta < 1 || rep.beta > 4324) {
      r.detail = "A12=" + std::to_string(a12) + " violates divisibility or range";
      return r;
    }
    if (!gamma::contains(gamma::beta_set(1), static_cast<int>(rep.beta))) {
      r.detail = "beta=" + std::to_string(rep.beta) + " not in the OM1 reference set";
      return r;
    }
  }
  if (found == 0) {
    r.detail = "no d=12 codes in the sample";
    return r;
  }
  r.pass = true;
  r.detail = std::to_string(found) + " d=12 codes, all with A12 divisible by 8 and beta in the reference set";
  return r;
}

// ---- criterion 6: the 1-design property ----------------------------------------

CriterionResult criterion_one_design(const Om1Sample& sample) {
  CriterionResult r{6, "weight-12 supports of near-extremal sample codes cover every coordinate equally", false, ""};
  int checked = 0;
  for (std::size_t i = 0; i < sample.reports.size() && checked < 3; ++i) {
    if (sample.reports[i].classification != weight::Classification::near_extremal) continue;
    auto [uniform, counts] = weight::support_one_design_check(sample.codes[i], 12);
    if (!uniform) {
      r.detail = "code " + std::to_string(i) + " has non-uniform coordinate coverage";
      return r;
    }
    if (counts[0] != sample.reports[i].beta) {
      r.detail = "replication number disagrees with beta for code " + std::to_string(i);
      return r;
    }
    ++checked;
  }
  if (checked < 3) {
    r.detail = "fewer than 3 near-extremal codes in the sample (" + std::to_string(checked) + ")";
    return r;
  }
  r.pass = true;
  r.detail = "3 near-extremal codes checked; coordinate coverage uniform and equal to beta";
  return r;
}

// ---- criterion 7: equivalence soundness ----------------------------------------

// Exhaustive monomial-group oracle for small n: coordinate permutations times
// sign patterns, comparing full codeword sets.
bool brute_monomial_equivalent(const code::TernaryCode& a, const code::TernaryCode& b) {
  const int n = a.n;
  if (n != b.n || a.k != b.k || n > 10) throw std::invalid_argument("brute oracle: unsupported size");

  auto codewords = [](const code::TernaryCode& c) {
    std::vector<std::uint32_t> words;
    long long total = 1;
    for (int i = 0; i < c.k; ++i) total *= 3;
    std::vector<std::uint8_t> w(c.n, 0);
    std::vector<std::uint8_t> msg(c.k, 0);
    words.reserve(total);
    for (long long idx = 0;; ++idx) {
      std::uint32_t packed = 0;
      for (int j = 0; j < c.n; ++j) packed |= static_cast<std::uint32_t>(w[j]) << (2 * j);
      words.push_back(packed);
      if (idx + 1 >= total) break;
      int p = 0;
      while (true) {
        for (int j = 0; j < c.n; ++j) w[j] = gf3::add3(w[j], c.generator.get(p, j));
        msg[p] = gf3::add3(msg[p], 1);
        if (msg[p] != 0) break;
        ++p;
      }
    }
    std::sort(words.begin(), words.end());
    return words;
  };

  std::vector<std::uint32_t> wa = codewords(a), wb = codewords(b);
  std::uint32_t probe = 0;
  for (std::uint32_t w : wa)
    if (w != 0) { probe = w; break; }

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint8_t> pa(n);
  do {
    for (std::uint32_t smask = 0; smask < (1u << n); ++smask) {
      auto map_word = [&](std::uint32_t w) {
        std::uint32_t out = 0;
        for (int j = 0; j < n; ++j) {
          std::uint8_t v = (w >> (2 * j)) & 3u;
          if (v && (smask >> j) & 1u) v = gf3::neg3(v);
          out |= static_cast<std::uint32_t>(v) << (2 * perm[j]);
        }
        return out;
      };
      if (!std::binary_search(wb.begin(), wb.end(), map_word(probe))) continue;
      std::vector<std::uint32_t> mapped(wa.size());
      for (std::size_t i = 0; i < wa.size(); ++i) mapped[i] = map_word(wa[i]);
      std::sort(mapped.begin(), mapped.end());
      if (mapped == wb) return true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

CriterionResult criterion_equivalence_soundness(const Om1Sample& sample) {
  CriterionResult r{7, "planted monomial images detected with verified transporters; [8,4] decisions match brute force", false, ""};
  std::mt19937 rng(777);
  code::TernaryCode base8 = double_tetracode();

  auto random_map = [&](int n) {
    equiv::MonomialMap m;
    m.perm.resize(n);
    std::iota(m.perm.begin(), m.perm.end(), 0);
    std::shuffle(m.perm.begin(), m.perm.end(), rng);
    m.signs.resize(n);
    for (auto& s : m.signs) s = static_cast<std::uint8_t>(1 + rng() % 2);
    return m;
  };

  // planted [8,4] images
  for (int t = 0; t < 3; ++t) {
    equiv::MonomialMap planted = random_map(8);
    code::TernaryCode image = code::monomial_image(base8, planted.perm, planted.signs);
    auto found = equiv::monomially_equivalent(base8, image);
    if (!found) {
      r.detail = "planted [8,4] image not detected (trial " + std::to_string(t) + ")";
      return r;
    }
    code::TernaryCode reencoded = code::monomial_image(base8, found->perm, found->signs);
    if (!(reencoded.generator == image.generator)) {
      r.detail = "returned transporter does not carry the code onto its image";
      return r;
    }
  }

  // planted [48,24] image from the expansion sample
  {
    equiv::MonomialMap planted = random_map(48);
    code::TernaryCode image = code::monomial_image(sample.codes[0], planted.perm, planted.signs);
    auto found = equiv::monomially_equivalent(sample.codes[0], image);
    if (!found) {
      r.detail = "planted [48,24] image not detected";
      return r;
    }
    code::TernaryCode reencoded = code::monomial_image(sample.codes[0], found->perm, found->signs);
    if (!(reencoded.generator == image.generator)) {
      r.detail = "[48,24] transporter failed re-encoding";
      return r;
    }
  }

  // [8,4] decisions vs the full monomial-group oracle
  std::vector<std::pair<code::TernaryCode, code::TernaryCode>> pairs;
  pairs.push_back({base8, base8});
  equiv::MonomialMap pm = random_map(8);
  pairs.push_back({base8, code::monomial_image(base8, pm.perm, pm.signs)});
  for (int t = 0; t < 2; ++t) {
    gf3::TritMatrix g1(4, 8), g2(4, 8);
    do {
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 8; ++j) {
          g1.set(i, j, static_cast<std::uint8_t>(rng() % 3));
          g2.set(i, j, static_cast<std::uint8_t>(rng() % 3));
        }
    } while (gf3::rref(g1).rank != 4 || gf3::rref(g2).rank != 4);
    pairs.push_back({code::code_from_generator(g1), code::code_from_generator(g2)});
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    bool oracle = brute_monomial_equivalent(pairs[i].first, pairs[i].second);
    bool mine = equiv::monomially_equivalent(pairs[i].first, pairs[i].second).has_value();
    if (oracle != mine) {
      r.detail = "pair " + std::to_string(i) + ": decision " + fmt_bool(mine) + " vs oracle " + fmt_bool(oracle);
      return r;
    }
  }
  r.pass = true;
  r.detail = "3 planted [8,4] images + 1 planted [48,24] image detected with verified transporters; 4 oracle pairs agree";
  return r;
}

}  // namespace

std::vector<long long> brute_force_distribution(const code::TernaryCode& c) {
  if (c.k > 12) throw std::invalid_argument("brute_force_distribution: k too large");
  std::vector<long long> dist(c.n + 1, 0);
  long long total = 1;
  for (int i = 0; i < c.k; ++i) total *= 3;
  std::vector<std::uint8_t> w(c.n, 0), msg(c.k, 0);
  dist[0] = 1;
  for (long long idx = 1; idx < total; ++idx) {
    int p = 0;
    while (true) {
      for (int j = 0; j < c.n; ++j) w[j] = gf3::add3(w[j], c.generator.get(p, j));
      msg[p] = gf3::add3(msg[p], 1);
      if (msg[p] != 0) break;
      ++p;
    }
    int weight = 0;
    for (int j = 0; j < c.n; ++j) weight += w[j] != 0;
    ++dist[weight];
  }
  return dist;
}

bool all_pass(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
}

std::vector<CriterionResult> run_fast(const Options& opts) {
  std::vector<CriterionResult> out;
  note(opts, "criterion 1: appendix fidelity");
  out.push_back(criterion_appendix_fidelity());
  note(opts, "criterion 2: orbit-equation spot check");
  out.push_back(criterion_equation_spot_check());
  note(opts, "criterion 3: oracle equivalence");
  out.push_back(criterion_oracle_equivalence(opts));
  note(opts, "expanding 25-design sample");
  Om1Sample sample = om1_sample(25, opts.threads);
  note(opts, "criterion 4: construction at desk scale");
  out.push_back(criterion_construction(sample));
  note(opts, "criterion 5: divisibility and range");
  out.push_back(criterion_divisibility(sample));
  note(opts, "criterion 6: 1-design property");
  out.push_back(criterion_one_design(sample));
  note(opts, "criterion 7: equivalence soundness");
  out.push_back(criterion_equivalence_soundness(sample));
  return out;
}

// ---- full tier ----------------------------------------------------------------

namespace {

struct OmRun {
  int id = 0;
  long long raw = 0;
  std::vector<design::IncidenceStructure> classes;
  std::vector<weight::WeightReport> reports;
  long long d12 = 0;
  std::set<long long> distinct_a12;
  std::set<long long> betas;
};

OmRun full_om_run(int id, const Options& opts, bool keep_classes) {
  OmRun run;
  run.id = id;
  om::OrbitMatrix m = om::load_appendix(id);

  std::unordered_map<std::string, std::size_t> seen;
  std::vector<indexer::ExpansionResult> batch;
  std::vector<std::string> keys;
  auto flush = [&]() {
    keys.assign(batch.size(), {});
    parallel_for(opts.threads, batch.size(), [&](std::size_t i) {
      keys[i] = equiv::design_key(equiv::canonical_design(batch[i].incidence).canonical);
    });
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (seen.emplace(keys[i], run.classes.size()).second)
        run.classes.push_back(std::move(batch[i].incidence));
    }
    batch.clear();
  };

  indexer::ExpandOptions eo;
  indexer::expand(m, eo, [&](indexer::ExpansionResult res) {
    ++run.raw;
    batch.push_back(std::move(res));
    if (batch.size() >= 4096) {
      flush();
      note(opts, "matrix " + std::to_string(id) + ": raw " + std::to_string(run.raw) + ", classes " +
                     std::to_string(run.classes.size()));
    }
    return true;
  });
  flush();
  note(opts, "matrix " + std::to_string(id) + " expansion done: raw " + std::to_string(run.raw) +
                 ", classes " + std::to_string(run.classes.size()));

  run.reports.resize(run.classes.size());
  parallel_for(opts.threads, run.classes.size(), [&](std::size_t i) {
    code::TernaryCode c = code::code_from_design(run.classes[i], {47, 23, 11});
    run.reports[i] = weight::classify(c);
  });
  for (const auto& rep : run.reports) {
    if (rep.d == 12) {
      ++run.d12;
      run.distinct_a12.insert(rep.counts.at(12));
      run.betas.insert(rep.beta);
    }
  }
  note(opts, "matrix " + std::to_string(id) + " measured: d12 " + std::to_string(run.d12) +
                 ", distinct A12 " + std::to_string(run.distinct_a12.size()));
  if (!keep_classes) run.classes.clear();
  return run;
}

CriterionResult criterion_qr48_extremal() {
  CriterionResult r{8, "the Paley(47) code has minimum weight 15", false, ""};
  code::TernaryCode c = code::code_from_design(design::paley_type1_design(47), {47, 23, 11});
  int d = weight::min_weight(c);
  r.pass = d == 15;
  r.detail = "min_weight = " + std::to_string(d);
  return r;
}

std::string census_detail(const OmRun& a) {
  std::ostringstream os;
  os << "matrix " << a.id << ": raw " << a.raw << ", non-isomorphic " << (a.reports.size())
     << ", d=12 codes " << a.d12 << ", distinct A12 " << a.distinct_a12.size();
  return os.str();
}

CriterionResult criterion_table_counts(const OmRun& om2, const OmRun& om4) {
  CriterionResult r{9, "the second bundled matrix yields 24576 designs, 11884 d=12 codes, 152 distinct A12; the fourth matches", false, ""};
  bool ok2 = om2.reports.size() == 24576 && om2.d12 == 11884 && om2.distinct_a12.size() == 152;
  bool ok4 = om4.reports.size() == 24576 && om4.d12 == 11884 && om4.distinct_a12.size() == 152;
  r.pass = ok2 && ok4;
  r.detail = census_detail(om2) + "; " + census_detail(om4);
  return r;
}

CriterionResult criterion_beta_sets(const OmRun& om2, const OmRun& om4) {
  CriterionResult r{10, "beta sets of the second and fourth matrices agree and equal the reference set", false, ""};
  const auto& ref = gamma::beta_set(2);
  std::set<long long> refset(ref.begin(), ref.end());
  bool equal24 = om2.betas == om4.betas;
  bool matches_ref = om2.betas == refset;
  bool extremes = om2.betas.count(313) && om2.betas.count(560);
  r.pass = equal24 && matches_ref && extremes;
  std::ostringstream os;
  os << "|beta set| = " << om2.betas.size() << " (reference " << refset.size() << "); sets 2 and 4 equal: "
     << fmt_bool(equal24) << "; equals reference: " << fmt_bool(matches_ref)
     << "; extremes 313/560 present: " << fmt_bool(extremes);
  if (!matches_ref) {
    std::vector<long long> missing, extra;
    for (long long b : refset)
      if (!om2.betas.count(b)) missing.push_back(b);
    for (long long b : om2.betas)
      if (!refset.count(b)) extra.push_back(b);
    os << "; missing from run:";
    for (std::size_t i = 0; i < missing.size() && i < 8; ++i) os << ' ' << missing[i];
    os << "; unexpected in run:";
    for (std::size_t i = 0; i < extra.size() && i < 8; ++i) os << ' ' << extra[i];
  }
  r.detail = os.str();
  return r;
}

CriterionResult criterion_equivalence_classes(const OmRun& om2, const Options& opts) {
  CriterionResult r{11, "the second matrix yields 1073 monomial equivalence classes among d=12 codes", false, ""};

  std::vector<std::size_t> d12_idx;
  for (std::size_t i = 0; i < om2.reports.size(); ++i)
    if (om2.reports[i].d == 12) d12_idx.push_back(i);

  std::vector<code::TernaryCode> codes(d12_idx.size());
  std::vector<std::string> fp_keys(d12_idx.size());
  parallel_for(opts.threads, d12_idx.size(), [&](std::size_t i) {
    codes[i] = code::code_from_design(om2.classes[d12_idx[i]], {47, 23, 11});
    auto s = equiv::code_supports(codes[i], 12);
    fp_keys[i] = equiv::fingerprint_from(codes[i], s).key();
  });
  note(opts, "equivalence: fingerprints done (" + std::to_string(codes.size()) + " codes)");

  std::map<std::string, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < codes.size(); ++i) buckets[fp_keys[i]].push_back(i);

  long long classes = 0;
  long long done = 0;
  for (const auto& [key, members] : buckets) {
    std::vector<equiv::CodeSupports> supports(members.size());
    parallel_for(opts.threads, members.size(), [&](std::size_t i) {
      supports[i] = equiv::code_supports(codes[members[i]], 12);
    });
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < members.size(); ++i) {
      bool matched = false;
      for (std::size_t rep : reps) {
        if (equiv::monomially_equivalent(codes[members[rep]], supports[rep], codes[members[i]],
                                         supports[i])
                .has_value()) {
          matched = true;
          break;
        }
      }
      if (!matched) {
        reps.push_back(i);
        ++classes;
      }
    }
    done += static_cast<long long>(members.size());
    if (opts.progress && done % 1000 < static_cast<long long>(members.size()))
      note(opts, "equivalence: " + std::to_string(done) + "/" + std::to_string(codes.size()) +
                     " codes, " + std::to_string(classes) + " classes");
  }
  r.pass = classes == 1073;
  r.detail = std::to_string(classes) + " classes among " + std::to_string(codes.size()) +
             " d=12 codes across " + std::to_string(buckets.size()) + " fingerprint buckets";
  return r;
}

CriterionResult criterion_census(const Options& opts) {
  CriterionResult r{12, "generated census contains the four bundled matrices; total compared against 32", false, ""};
  std::vector<int> sizes = {1, 2, 2, 3, 3, 6, 6, 6, 6, 6, 6};
  auto census = om::generate_orbit_matrices({47, 23, 11}, 6, sizes, sizes);
  note(opts, "census size " + std::to_string(census.size()));
  std::set<std::vector<int>> keys;
  for (const auto& m : census) keys.insert(m.s);
  int present = 0;
  for (int id = 1; id <= 4; ++id)
    present += keys.count(om::canonical_orbit_matrix(om::load_appendix(id)).s) ? 1 : 0;
  r.pass = present == 4;
  std::ostringstream os;
  os << present << "/4 bundled matrices present; census size " << census.size()
     << (census.size() == 32 ? " (matches the published 32)"
                             : " (published total is 32 under an unstated equivalence; see notes)");
  r.detail = os.str();
  return r;
}

CriterionResult criterion_aut_order(const Options& opts) {
  CriterionResult r{13, "sampled near-extremal designs have automorphism group order exactly 6", false, ""};
  int sampled = 0, aut6 = 0;
  std::map<long long, int> histogram;
  for (int id = 1; id <= 4 && sampled < 12; ++id) {
    indexer::ExpandOptions eo;
    eo.limit = 40;
    auto designs = indexer::expand_collect(om::load_appendix(id), eo);
    int taken = 0;
    for (const auto& res : designs) {
      if (taken >= 3) break;
      code::TernaryCode c = code::code_from_design(res.incidence, {47, 23, 11});
      if (weight::min_weight(c) != 12) continue;
      auto canon = equiv::canonical_design(res.incidence);
      ++histogram[canon.aut_order];
      ++sampled;
      ++taken;
      if (canon.aut_order == 6) ++aut6;
    }
    note(opts, "aut sampling: matrix " + std::to_string(id) + " done");
  }
  r.pass = sampled >= 10 && aut6 >= 10;
  std::ostringstream os;
  os << aut6 << "/" << sampled << " sampled near-extremal designs have |Aut| = 6; orders seen:";
  for (const auto& [ord, cnt] : histogram) os << ' ' << ord << "x" << cnt;
  r.detail = os.str();
  return r;
}

}  // namespace

std::vector<CriterionResult> run_full(const Options& opts) {
  std::vector<CriterionResult> out;
  note(opts, "criterion 8: extremality");
  out.push_back(criterion_qr48_extremal());
  note(opts, "criterion 9/10/11: full runs of bundled matrices 2 and 4");
  OmRun om2 = full_om_run(2, opts, /*keep_classes=*/true);
  OmRun om4 = full_om_run(4, opts, /*keep_classes=*/false);
  out.push_back(criterion_table_counts(om2, om4));
  out.push_back(criterion_beta_sets(om2, om4));
  out.push_back(criterion_equivalence_classes(om2, opts));
  note(opts, "criterion 12: orbit-matrix census");
  out.push_back(criterion_census(opts));
  note(opts, "criterion 13: automorphism orders");
  out.push_back(criterion_aut_order(opts));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

}  // namespace tdc::verify
