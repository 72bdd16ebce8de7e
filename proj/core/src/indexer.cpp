#include "tdc/indexer.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <condition_variable>
#include <mutex>
#include <numeric>
#include <thread>

#include "tdc/equivalence.hpp"

namespace tdc::indexer {

namespace {

using Mask = std::uint64_t;

inline Mask rot_bits(Mask m, int x, int width) {
  x %= width;
  if (x == 0) return m;
  Mask lo = (width == 64) ? ~Mask{0} : ((Mask{1} << width) - 1);
  return ((m << x) | (m >> (width - x))) & lo;
}

inline std::uint8_t rot_cells(std::uint8_t ch, int x, int d) {
  x %= d;
  if (x == 0) return ch;
  return static_cast<std::uint8_t>(((ch << x) | (ch >> (d - x))) & ((1u << d) - 1));
}

struct RowChoice {
  std::vector<std::uint8_t> cell_masks;  // per point orbit, chosen cells as a bitmask
  Mask rep = 0;                          // representative block as a point bitmask
};

class Engine {
 public:
  Engine(const om::OrbitMatrix& m, const ExpandOptions& opts)
      : M(m), opts_(opts), t_(m.t()) {
    if (m.params.v > 64) throw std::invalid_argument("expand: more than 64 points unsupported");
    auto check = om::validate_orbit_matrix(m);
    if (!check.ok) throw std::invalid_argument("expand: invalid orbit matrix: " + check.violation);

    row_sizes_ = m.row_orbit_sizes;
    col_sizes_ = m.col_orbit_sizes;
    pbase_.resize(t_ + 1, 0);
    for (int j = 0; j < t_; ++j) pbase_[j + 1] = pbase_[j] + col_sizes_[j];
    v_ = pbase_[t_];

    d_.assign(static_cast<std::size_t>(t_) * t_, 0);
    mchoose_.assign(static_cast<std::size_t>(t_) * t_, 0);
    cellmask_.assign(static_cast<std::size_t>(t_) * t_, {});
    for (int i = 0; i < t_; ++i)
      for (int j = 0; j < t_; ++j) {
        int d = std::gcd(row_sizes_[i], col_sizes_[j]);
        int ell = col_sizes_[j] / d;
        d_[idx(i, j)] = d;
        mchoose_[idx(i, j)] = M.at(i, j) / ell;
        auto& cm = cellmask_[idx(i, j)];
        cm.assign(d, 0);
        for (int q = 0; q < col_sizes_[j]; ++q) cm[q % d] |= Mask{1} << (pbase_[j] + q);
      }

    placed_rows_.reserve(v_);
    placed_choice_.resize(t_);
    emask_.resize(t_);
    row_selfcap_.assign(t_ + 1, 0);
  }

  long long run(const std::function<bool(ExpansionResult)>& emit) {
    emit_ = &emit;
    emitted_ = 0;
    seen_ = 0;
    stop_ = false;
    if (opts_.threads > 1 && opts_.limit < 0 && opts_.skip == 0)
      run_parallel();
    else
      place_block_orbit(0);
    return emitted_;
  }

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * t_ + j; }
  Mask orbit_window(int j) const { return ((Mask{1} << col_sizes_[j]) - 1) << pbase_[j]; }

  // Applies g^e to a point bitmask (rotate every orbit window left by e).
  Mask rotate_points(Mask m, int e) const {
    Mask out = 0;
    for (int j = 0; j < t_; ++j) {
      Mask window = (m >> pbase_[j]) & ((Mask{1} << col_sizes_[j]) - 1);
      out |= rot_bits(window, e % col_sizes_[j], col_sizes_[j]) << pbase_[j];
    }
    return out;
  }

  // ---- candidate enumeration for one block orbit -----------------------------

  struct SearchFrame {
    std::vector<int> placed_int;      // partial intersections with placed rows
    std::vector<int> self_int;        // partial self-shift intersections, index c-1
    std::vector<std::uint8_t> cells;  // chosen cell masks per orbit so far
    Mask mask = 0;
  };

  void for_each_candidate(int i, const std::function<bool(const RowChoice&)>& sink) {
    const int nplaced = static_cast<int>(placed_rows_.size());
    caps_.assign(nplaced, std::vector<int>(t_ + 1, 0));
    for (int b = 0; b < nplaced; ++b)
      for (int j = t_ - 1; j >= 0; --j) {
        int cnt = std::popcount(placed_rows_[b] & orbit_window(j));
        caps_[b][j] = caps_[b][j + 1] + std::min(M.at(i, j), cnt);
      }
    for (int j = t_ - 1; j >= 0; --j) row_selfcap_[j] = row_selfcap_[j + 1] + M.at(i, j);

    SearchFrame f;
    f.placed_int.assign(nplaced, 0);
    f.self_int.assign(std::max(0, row_sizes_[i] - 1), 0);
    cand_rec(i, 0, f, sink);
  }

  bool cand_rec(int i, int j, SearchFrame& f, const std::function<bool(const RowChoice&)>& sink) {
    if (stop_) return false;
    if (j == t_) {
      for (int b = 0; b < static_cast<int>(placed_rows_.size()); ++b)
        if (f.placed_int[b] != M.params.lambda) return true;
      for (int c = 1; c < row_sizes_[i]; ++c)
        if (f.self_int[c - 1] != M.params.lambda) return true;
      RowChoice rc;
      rc.cell_masks = f.cells;
      rc.rep = f.mask;
      return sink(rc);
    }

    const int d = d_[idx(i, j)];
    const int m = mchoose_[idx(i, j)];
    const auto& cm = cellmask_[idx(i, j)];
    const int lam = M.params.lambda;
    const int width = col_sizes_[j];
    const int nplaced = static_cast<int>(placed_rows_.size());

    std::vector<int> pick(m);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      Mask bits = 0;
      std::uint8_t cmask = 0;
      for (int x : pick) {
        bits |= cm[x];
        cmask |= static_cast<std::uint8_t>(1u << x);
      }

      bool ok = true;
      for (int b = 0; b < nplaced && ok; ++b) {
        int pi = f.placed_int[b] + std::popcount(placed_rows_[b] & bits);
        ok = pi <= lam && lam - pi <= caps_[b][j + 1];
      }
      Mask window = bits >> pbase_[j];
      if (ok) {
        for (int c = 1; c < row_sizes_[i] && ok; ++c) {
          int si = f.self_int[c - 1] + std::popcount(window & rot_bits(window, c, width));
          ok = si <= lam && lam - si <= row_selfcap_[j + 1];
        }
      }
      if (ok) {
        SearchFrame g = f;
        g.mask |= bits;
        g.cells.push_back(cmask);
        for (int b = 0; b < nplaced; ++b) g.placed_int[b] += std::popcount(placed_rows_[b] & bits);
        for (int c = 1; c < row_sizes_[i]; ++c)
          g.self_int[c - 1] += std::popcount(window & rot_bits(window, c, width));
        if (!cand_rec(i, j + 1, g, sink)) return false;
      }

      if (m == 0) break;
      int x = m - 1;
      while (x >= 0 && pick[x] == d - m + x) --x;
      if (x < 0) break;
      ++pick[x];
      for (int y = x + 1; y < m; ++y) pick[y] = pick[y - 1] + 1;
    }
    return !stop_;
  }

  // ---- rotation-symmetry canonicity cut ---------------------------------------

  // For placed block orbit r and point orbit j: emask[r][j][c] = block
  // rotations e of orbit r such that rotating row r's cell choice by
  // (c + e) mod d fixes it. The cut group is generated by per-point-orbit
  // rotations (shared across rows) and per-block-orbit rotations.
  void compute_emask(int r) {
    auto& em = emask_[r];
    em.assign(t_, {});
    for (int j = 0; j < t_; ++j) {
      int d = d_[idx(r, j)];
      std::uint8_t ch = placed_choice_[r][j];
      std::uint8_t fix = 0;
      for (int x = 0; x < d; ++x)
        if (rot_cells(ch, x, d) == ch) fix |= static_cast<std::uint8_t>(1u << x);
      em[j].assign(6, 0);
      for (int c = 0; c < 6; ++c) {
        std::uint8_t allowed = 0;
        for (int e = 0; e < row_sizes_[r]; ++e)
          if (fix & (1u << ((c + e) % d))) allowed |= static_cast<std::uint8_t>(1u << e);
        em[j][c] = allowed;
      }
    }
  }

  // True iff a rotation consistent with every placed row maps the candidate
  // to a lexicographically smaller choice vector.
  bool rotation_reducible(int i, const RowChoice& rc) const {
    std::vector<std::uint8_t> live(placed_choice_count_);
    for (int r = 0; r < placed_choice_count_; ++r)
      live[r] = static_cast<std::uint8_t>((1u << row_sizes_[r]) - 1);
    for (int e_own = 0; e_own < row_sizes_[i]; ++e_own)
      if (cut_rec(i, rc, 0, false, e_own, live)) return true;
    return false;
  }

  bool cut_rec(int i, const RowChoice& rc, int j, bool strictly_less, int e_own,
               const std::vector<std::uint8_t>& live) const {
    if (j == t_) return strictly_less;
    const int d = d_[idx(i, j)];
    const std::uint8_t ch = rc.cell_masks[j];
    for (int c = 0; c < col_sizes_[j]; ++c) {
      std::uint8_t rot = rot_cells(ch, (c + e_own) % d, d);
      bool less = strictly_less;
      if (!less) {
        if (rot > ch) continue;
        less = rot < ch;
      }
      std::vector<std::uint8_t> next = live;
      bool dead = false;
      for (std::size_t r = 0; r < next.size() && !dead; ++r) {
        next[r] &= emask_[r][j][c];
        dead = next[r] == 0;
      }
      if (dead) continue;
      if (cut_rec(i, rc, j + 1, less, e_own, next)) return true;
    }
    return false;
  }

  // ---- main DFS over block orbits ---------------------------------------------

  void place_block_orbit(int i) {
    if (stop_) return;
    if (i == t_) {
      emit_current();
      return;
    }
    for_each_candidate(i, [&](const RowChoice& rc) {
      if (opts_.symmetry_cut && rotation_reducible(i, rc)) return !stop_;
      push_row(i, rc);
      place_block_orbit(i + 1);
      pop_row(i);
      return !stop_;
    });
  }

  void push_row(int i, const RowChoice& rc) {
    for (int m = 0; m < row_sizes_[i]; ++m) placed_rows_.push_back(rotate_points(rc.rep, m));
    placed_choice_[placed_choice_count_] = rc.cell_masks;
    compute_emask(placed_choice_count_);
    ++placed_choice_count_;
    choice_stack_.push_back(rc);
  }

  void pop_row(int i) {
    placed_rows_.resize(placed_rows_.size() - row_sizes_[i]);
    --placed_choice_count_;
    choice_stack_.pop_back();
  }

  void emit_current() {
    ++seen_;
    if (seen_ <= opts_.skip) return;
    if (opts_.limit >= 0 && emitted_ >= opts_.limit) {
      stop_ = true;
      return;
    }
    ExpansionResult res;
    res.incidence = design::IncidenceStructure(v_, v_);
    for (int r = 0; r < v_; ++r) {
      Mask m = placed_rows_[r];
      while (m) {
        res.incidence.set(r, std::countr_zero(m), true);
        m &= m - 1;
      }
    }
    for (const auto& rc : choice_stack_)
      for (int j = 0; j < t_; ++j) {
        std::uint8_t cm = rc.cell_masks[j];
        while (cm) {
          res.choice.push_back(std::countr_zero(static_cast<unsigned>(cm)));
          cm &= cm - 1;
        }
      }
    ++emitted_;
    if (!(*emit_)(std::move(res))) stop_ = true;
  }

  // ---- parallel exhaustive mode -----------------------------------------------

  void collect_prefixes(int i, int depth, std::vector<std::vector<RowChoice>>& out,
                        std::vector<RowChoice>& cur) {
    if (i == depth) {
      out.push_back(cur);
      return;
    }
    for_each_candidate(i, [&](const RowChoice& rc) {
      if (opts_.symmetry_cut && rotation_reducible(i, rc)) return true;
      push_row(i, rc);
      cur.push_back(rc);
      collect_prefixes(i + 1, depth, out, cur);
      cur.pop_back();
      pop_row(i);
      return true;
    });
  }

  void run_parallel();

  const om::OrbitMatrix& M;
  ExpandOptions opts_;
  int t_, v_ = 0;
  std::vector<int> row_sizes_, col_sizes_, pbase_;
  std::vector<int> d_, mchoose_;
  std::vector<std::vector<Mask>> cellmask_;

  std::vector<Mask> placed_rows_;
  std::vector<std::vector<std::uint8_t>> placed_choice_;
  int placed_choice_count_ = 0;
  std::vector<std::vector<std::vector<std::uint8_t>>> emask_;
  std::vector<RowChoice> choice_stack_;
  std::vector<std::vector<int>> caps_;
  std::vector<int> row_selfcap_;

  const std::function<bool(ExpansionResult)>* emit_ = nullptr;
  long long emitted_ = 0;
  long long seen_ = 0;
  bool stop_ = false;
};

void Engine::run_parallel() {
  const int depth = std::min(t_, 4);
  std::vector<std::vector<RowChoice>> prefixes;
  std::vector<RowChoice> cur;
  collect_prefixes(0, depth, prefixes, cur);

  const int nthreads = std::max(1, opts_.threads);
  std::vector<std::vector<ExpansionResult>> buffers(prefixes.size());
  std::vector<char> done(prefixes.size(), 0);
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::condition_variable cv;

  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= prefixes.size()) break;
      ExpandOptions sub_opts;
      sub_opts.symmetry_cut = opts_.symmetry_cut;
      Engine sub(M, sub_opts);
      for (int r = 0; r < depth; ++r) sub.push_row(r, prefixes[i][r]);
      std::vector<ExpansionResult> local;
      std::function<bool(ExpansionResult)> sink = [&](ExpansionResult res) {
        local.push_back(std::move(res));
        return true;
      };
      sub.emit_ = &sink;
      sub.place_block_orbit(depth);
      {
        std::lock_guard<std::mutex> lock(mu);
        buffers[i] = std::move(local);
        done[i] = 1;
      }
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int w = 0; w < nthreads; ++w) pool.emplace_back(worker);

  std::size_t flush = 0;
  {
    std::unique_lock<std::mutex> lock(mu);
    while (flush < prefixes.size()) {
      cv.wait(lock, [&] { return done[flush] != 0; });
      while (flush < prefixes.size() && done[flush]) {
        auto batch = std::move(buffers[flush]);
        ++flush;
        lock.unlock();
        for (auto& r : batch) {
          ++emitted_;
          (*emit_)(std::move(r));
        }
        lock.lock();
      }
    }
  }
  for (auto& th : pool) th.join();
}

}  // namespace

long long expand(const om::OrbitMatrix& m, const ExpandOptions& opts,
                 const std::function<bool(ExpansionResult)>& emit) {
  Engine e(m, opts);
  return e.run(emit);
}

std::vector<ExpansionResult> expand_collect(const om::OrbitMatrix& m, const ExpandOptions& opts) {
  std::vector<ExpansionResult> out;
  expand(m, opts, [&](ExpansionResult r) {
    out.push_back(std::move(r));
    return true;
  });
  return out;
}

design::CyclicAction expansion_action(const om::OrbitMatrix& m) {
  return design::canonical_cyclic_action(m.group_order, m.col_orbit_sizes);
}

om::OrbitMatrix collapse(const design::IncidenceStructure& d, const om::OrbitMatrix& shape) {
  om::OrbitMatrix out = shape;
  int bbase = 0;
  for (int i = 0; i < shape.t(); ++i) {
    int pbase = 0;
    for (int j = 0; j < shape.t(); ++j) {
      int count = 0;
      for (int q = 0; q < shape.col_orbit_sizes[j]; ++q)
        if (d.get(bbase, pbase + q)) ++count;
      out.at(i, j) = count;
      pbase += shape.col_orbit_sizes[j];
    }
    bbase += shape.row_orbit_sizes[i];
  }
  return out;
}

bool IsomorphRejector::insert(const design::IncidenceStructure& d) {
  auto canon = equiv::canonical_design(d);
  return seen_.insert(equiv::design_key(canon.canonical)).second;
}

std::vector<ExpansionResult> isomorph_reject(std::vector<ExpansionResult> results) {
  IsomorphRejector rej;
  std::vector<ExpansionResult> out;
  for (auto& r : results)
    if (rej.insert(r.incidence)) out.push_back(std::move(r));
  return out;
}

}  // namespace tdc::indexer
