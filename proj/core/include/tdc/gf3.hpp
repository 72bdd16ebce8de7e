#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// Exact arithmetic and linear algebra over GF(3).
//
// Matrices and vectors store entries in a packed layout: each entry occupies a
// fixed two-bit slot (value 3 is forbidden), 32 entries per 64-bit word, rows
// padded to a word boundary. Row operations are word-parallel; a 48-column row
// fits in two words, which keeps codeword enumeration cache-resident. The
// layout is an internal contract: padding slots are always zero.

namespace tdc::gf3 {

using Word = std::uint64_t;

inline constexpr int kTritsPerWord = 32;
inline constexpr Word kLoBits = 0x5555555555555555ull;  // low bit of every slot
inline constexpr Word kEvenSlots = 0x3333333333333333ull;  // slots 0,2,4,... widened to 4 bits
inline constexpr Word kLaneOnes = 0x1111111111111111ull;
inline constexpr Word kLaneFours = 0x4444444444444444ull;

// scalar arithmetic, values in {0,1,2}
inline constexpr std::uint8_t add3(std::uint8_t a, std::uint8_t b) {
  std::uint8_t s = static_cast<std::uint8_t>(a + b);
  return s >= 3 ? static_cast<std::uint8_t>(s - 3) : s;
}
inline constexpr std::uint8_t neg3(std::uint8_t a) { return static_cast<std::uint8_t>((3 - a) % 3); }
inline constexpr std::uint8_t sub3(std::uint8_t a, std::uint8_t b) { return add3(a, neg3(b)); }
inline constexpr std::uint8_t mul3(std::uint8_t a, std::uint8_t b) { return static_cast<std::uint8_t>((a * b) % 3); }
inline constexpr std::uint8_t inv3(std::uint8_t a) { return a; }  // 1 and 2 are self-inverse

/// One GF(3) residue. Addition/multiplication are those of integers mod 3;
/// negation swaps 1 and 2.
struct Trit {
  std::uint8_t v = 0;

  constexpr Trit() = default;
  constexpr explicit Trit(int x) : v(static_cast<std::uint8_t>(((x % 3) + 3) % 3)) {}

  friend constexpr Trit operator+(Trit a, Trit b) { return Trit{add3(a.v, b.v)}; }
  friend constexpr Trit operator-(Trit a, Trit b) { return Trit{sub3(a.v, b.v)}; }
  friend constexpr Trit operator*(Trit a, Trit b) { return Trit{mul3(a.v, b.v)}; }
  constexpr Trit operator-() const { return Trit{neg3(v)}; }
  friend constexpr bool operator==(Trit a, Trit b) { return a.v == b.v; }

 private:
  constexpr explicit Trit(std::uint8_t raw) : v(raw) {}
  friend constexpr Trit trit_raw(std::uint8_t);
};

constexpr Trit trit_raw(std::uint8_t raw) { return Trit{raw}; }

// ---- word-parallel kernels ------------------------------------------------

// Per-slot addition mod 3. Slots are processed as two interleaved families so
// each sum (max 4) has headroom in a 4-bit lane.
inline Word packed_add(Word a, Word b) {
  Word se = (a & kEvenSlots) + (b & kEvenSlots);
  Word me = ((se + kLaneOnes) & kLaneFours) >> 2;  // lanes holding 3 or 4
  se -= me + (me << 1);
  Word so = ((a >> 2) & kEvenSlots) + ((b >> 2) & kEvenSlots);
  Word mo = ((so + kLaneOnes) & kLaneFours) >> 2;
  so -= mo + (mo << 1);
  return se | (so << 2);
}

// Negation swaps the two bits of every slot (1 <-> 2, 0 fixed).
inline Word packed_neg(Word a) {
  return ((a & kLoBits) << 1) | ((a >> 1) & kLoBits);
}

inline Word packed_scale(Word a, std::uint8_t c) {
  switch (c) {
    case 0: return 0;
    case 1: return a;
    default: return packed_neg(a);
  }
}

// Per-slot product. Nonzero iff both slots nonzero; the product is 2 exactly
// when the factors differ.
inline Word packed_mul(Word a, Word b) {
  Word nz = (a | (a >> 1)) & (b | (b >> 1)) & kLoBits;
  Word hi = ((a ^ b) >> 1) & nz;
  return (hi << 1) | (nz & ~hi);
}

/// Number of nonzero slots.
inline int packed_weight(Word a) {
  return std::popcount((a | (a >> 1)) & kLoBits);
}

/// Sum of all slots mod 3 (slots holding 1 contribute 1, slots holding 2 contribute 2).
inline std::uint8_t packed_slot_sum(Word a) {
  unsigned ones = static_cast<unsigned>(std::popcount(a & kLoBits));
  unsigned twos = static_cast<unsigned>(std::popcount(a & (kLoBits << 1)));
  return static_cast<std::uint8_t>((ones + 2 * twos) % 3);
}

inline void row_add(std::span<Word> dst, std::span<const Word> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = packed_add(dst[i], src[i]);
}
inline void row_sub(std::span<Word> dst, std::span<const Word> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = packed_add(dst[i], packed_neg(src[i]));
}
inline void row_addmul(std::span<Word> dst, std::span<const Word> src, std::uint8_t c) {
  if (c == 0) return;
  if (c == 1) { row_add(dst, src); } else { row_sub(dst, src); }
}
inline void row_neg(std::span<Word> row) {
  for (Word& w : row) w = packed_neg(w);
}
inline int row_weight(std::span<const Word> row) {
  int s = 0;
  for (Word w : row) s += packed_weight(w);
  return s;
}
inline std::uint8_t row_dot(std::span<const Word> a, std::span<const Word> b) {
  unsigned acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Word p = packed_mul(a[i], b[i]);
    acc += static_cast<unsigned>(std::popcount(p & kLoBits));
    acc += 2u * static_cast<unsigned>(std::popcount(p & (kLoBits << 1)));
  }
  return static_cast<std::uint8_t>(acc % 3);
}

// ---- vectors and matrices -------------------------------------------------

/// Dense GF(3) vector in the packed layout.
class TritVector {
 public:
  TritVector() = default;
  explicit TritVector(int n) : n_(n), w_((n + kTritsPerWord - 1) / kTritsPerWord, 0) {
    if (n <= 0) throw std::invalid_argument("TritVector: length must be positive");
  }

  int size() const { return n_; }
  int words() const { return static_cast<int>(w_.size()); }

  std::uint8_t get(int i) const {
    return static_cast<std::uint8_t>((w_[i >> 5] >> ((i & 31) * 2)) & 3u);
  }
  void set(int i, std::uint8_t v) {
    Word& w = w_[i >> 5];
    int sh = (i & 31) * 2;
    w = (w & ~(Word{3} << sh)) | (Word{v} << sh);
  }

  int weight() const { return row_weight(w_); }

  std::span<Word> span() { return w_; }
  std::span<const Word> span() const { return w_; }

  friend bool operator==(const TritVector&, const TritVector&) = default;

 private:
  int n_ = 0;
  std::vector<Word> w_;
};

/// Dense row-major GF(3) matrix in the packed layout.
class TritMatrix {
 public:
  TritMatrix() = default;
  TritMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), wpr_((cols + kTritsPerWord - 1) / kTritsPerWord),
        w_(static_cast<std::size_t>(rows) * wpr_, 0) {
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("TritMatrix: dimensions must be positive");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int words_per_row() const { return wpr_; }

  std::uint8_t get(int r, int c) const {
    return static_cast<std::uint8_t>((w_[static_cast<std::size_t>(r) * wpr_ + (c >> 5)] >> ((c & 31) * 2)) & 3u);
  }
  void set(int r, int c, std::uint8_t v) {
    Word& w = w_[static_cast<std::size_t>(r) * wpr_ + (c >> 5)];
    int sh = (c & 31) * 2;
    w = (w & ~(Word{3} << sh)) | (Word{v} << sh);
  }

  std::span<Word> row(int r) { return {w_.data() + static_cast<std::size_t>(r) * wpr_, static_cast<std::size_t>(wpr_)}; }
  std::span<const Word> row(int r) const {
    return {w_.data() + static_cast<std::size_t>(r) * wpr_, static_cast<std::size_t>(wpr_)};
  }

  TritVector row_vector(int r) const {
    TritVector v(cols_);
    auto src = row(r);
    std::copy(src.begin(), src.end(), v.span().begin());
    return v;
  }
  void set_row(int r, const TritVector& v) {
    auto dst = row(r);
    std::copy(v.span().begin(), v.span().end(), dst.begin());
  }

  void swap_rows(int a, int b) {
    if (a == b) return;
    auto ra = row(a), rb = row(b);
    for (std::size_t i = 0; i < ra.size(); ++i) std::swap(ra[i], rb[i]);
  }

  static TritMatrix identity(int n) {
    TritMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  /// Rows given as strings over {0,1,2}, e.g. {"120", "001"}.
  static TritMatrix from_strings(const std::vector<std::string>& rows);

  std::string to_string() const;  // newline-separated rows over {0,1,2}

  friend bool operator==(const TritMatrix&, const TritMatrix&) = default;

 private:
  int rows_ = 0, cols_ = 0, wpr_ = 0;
  std::vector<Word> w_;
};

struct RrefResult {
  TritMatrix r;
  int rank = 0;
  std::vector<int> pivots;  // strictly increasing column indices
};

/// Reduced row echelon form with first-nonzero pivot selection.
RrefResult rref(const TritMatrix& m);

/// Like rref but pivot columns are searched in the given column order.
/// Pivot list is reported in search order.
RrefResult rref_ordered(const TritMatrix& m, const std::vector<int>& col_order);

TritMatrix mat_mul(const TritMatrix& a, const TritMatrix& b);
TritMatrix transpose(const TritMatrix& m);

/// Basis of {x : M x = 0}, one row per basis vector. May have zero rows
/// (full column rank), in which case an empty 0-row marker is returned via
/// the optional-like result below.
struct KernelBasis {
  int dim = 0;
  TritMatrix basis;  // dim x cols when dim > 0; unspecified when dim == 0
};
KernelBasis kernel_basis(const TritMatrix& m);

/// Reduce v against the rows of an rref matrix; returns the residual.
TritVector reduce_against(const RrefResult& rr, const TritVector& v);

/// True iff v lies in the row space described by rr.
inline bool in_row_space(const RrefResult& rr, const TritVector& v) {
  return reduce_against(rr, v).weight() == 0;
}

}  // namespace tdc::gf3
