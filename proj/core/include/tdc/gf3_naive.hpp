#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

// Unpacked per-entry GF(3) reference implementation. Slow on purpose: it is
// the oracle the packed kernels are tested against and shares no code with
// them.

namespace tdc::gf3::naive {

struct Mat {
  int rows = 0, cols = 0;
  std::vector<std::uint8_t> e;  // row-major, values 0..2

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), e(static_cast<std::size_t>(r) * c, 0) {}
  std::uint8_t& at(int r, int c) { return e[static_cast<std::size_t>(r) * cols + c]; }
  std::uint8_t at(int r, int c) const { return e[static_cast<std::size_t>(r) * cols + c]; }
  friend bool operator==(const Mat&, const Mat&) = default;
};

inline std::uint8_t add(std::uint8_t a, std::uint8_t b) { return static_cast<std::uint8_t>((a + b) % 3); }
inline std::uint8_t mul(std::uint8_t a, std::uint8_t b) { return static_cast<std::uint8_t>((a * b) % 3); }
inline std::uint8_t neg(std::uint8_t a) { return static_cast<std::uint8_t>((3 - a) % 3); }

inline Mat matmul(const Mat& a, const Mat& b) {
  if (a.cols != b.rows) throw std::invalid_argument("naive matmul: shape mismatch");
  Mat c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      std::uint8_t f = a.at(i, k);
      if (!f) continue;
      for (int j = 0; j < b.cols; ++j) c.at(i, j) = add(c.at(i, j), mul(f, b.at(k, j)));
    }
  return c;
}

inline int rank(Mat m) {
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c)) { p = i; break; }
    if (p < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.e[static_cast<std::size_t>(r) * m.cols + j], m.e[static_cast<std::size_t>(p) * m.cols + j]);
    std::uint8_t inv = m.at(r, c);  // 1 or 2, self-inverse
    for (int j = 0; j < m.cols; ++j) m.at(r, j) = mul(m.at(r, j), inv);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || !m.at(i, c)) continue;
      std::uint8_t f = neg(m.at(i, c));
      for (int j = 0; j < m.cols; ++j) m.at(i, j) = add(m.at(i, j), mul(f, m.at(r, j)));
    }
    ++r;
  }
  return r;
}

inline std::vector<std::uint8_t> add_rows(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  std::vector<std::uint8_t> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = add(a[i], b[i]);
  return r;
}

inline int weight(const std::vector<std::uint8_t>& v) {
  int w = 0;
  for (auto x : v) w += x != 0;
  return w;
}

}  // namespace tdc::gf3::naive
