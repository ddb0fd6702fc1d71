#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace gfk {

// Dense bit matrix over GF(2), rows packed into 64-bit words.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    check(r, c);
    return (data_[r * words_ + c / 64] >> (c % 64)) & 1u;
  }

  void set(std::size_t r, std::size_t c, bool v) {
    check(r, c);
    std::uint64_t& w = data_[r * words_ + c / 64];
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    w = v ? (w | bit) : (w & ~bit);
  }

  void xor_row(std::size_t dst, std::size_t src) {
    for (std::size_t k = 0; k < words_; ++k) {
      data_[dst * words_ + k] ^= data_[src * words_ + k];
    }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t k = 0; k < words_; ++k) {
      std::swap(data_[a * words_ + k], data_[b * words_ + k]);
    }
  }

  // Rank via forward elimination on a working copy's storage (destructive).
  std::size_t rank_destructive() {
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t pivot = rows_;
      for (std::size_t i = r; i < rows_; ++i) {
        if ((data_[i * words_ + c / 64] >> (c % 64)) & 1u) {
          pivot = i;
          break;
        }
      }
      if (pivot == rows_) continue;
      swap_rows(r, pivot);
      for (std::size_t i = pivot + 1; i < rows_; ++i) {
        if ((data_[i * words_ + c / 64] >> (c % 64)) & 1u) {
          xor_row(i, r);
        }
      }
      ++r;
    }
    return r;
  }

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) {
      throw std::out_of_range("BitMatrix: index out of range");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> data_;
};

inline std::size_t gf2_rank(BitMatrix m) { return m.rank_destructive(); }

}  // namespace gfk
