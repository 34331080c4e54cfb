#include "engel/bitmatrix.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace engel::gf2 {

namespace {

void xor_into(std::span<Word> dst, std::span<const Word> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

}  // namespace

bool BitVector::none() const {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

std::size_t BitVector::count() const {
  return std::accumulate(words_.begin(), words_.end(), std::size_t{0},
                         [](std::size_t acc, Word w) { return acc + static_cast<std::size_t>(std::popcount(w)); });
}

std::size_t BitVector::first_set() const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] != 0) return i * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[i]));
  }
  return bits_;
}

BitVector& BitVector::operator^=(const BitVector& o) {
  if (o.bits_ != bits_) throw std::invalid_argument("BitVector size mismatch");
  xor_into(words_, o.words_);
  return *this;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * words_for(cols), 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

bool BitMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Word w) { return w == 0; });
}

bool BitMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    auto rw = row(r);
    for (std::size_t w = 0; w < stride_; ++w) {
      const Word expect = (r / kWordBits == w) ? Word{1} << (r % kWordBits) : 0;
      if (rw[w] != expect) return false;
    }
  }
  return true;
}

std::size_t BitMatrix::count() const {
  std::size_t n = 0;
  for (Word w : data_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

BitVector BitMatrix::flatten() const {
  BitVector v(rows_ * cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    auto rw = row(r);
    for (std::size_t w = 0; w < stride_; ++w) {
      for (Word bits = rw[w]; bits != 0; bits &= bits - 1) {
        v.set(r * cols_ + w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
      }
    }
  }
  return v;
}

BitMatrix BitMatrix::unflatten(const BitVector& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) throw std::invalid_argument("unflatten: size mismatch");
  BitMatrix m(rows, cols);
  auto words = v.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    for (Word bits = words[w]; bits != 0; bits &= bits - 1) {
      const std::size_t idx = w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
      m.set(idx / cols, idx % cols);
    }
  }
  return m;
}

BitMatrix& BitMatrix::operator^=(const BitMatrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw std::invalid_argument("BitMatrix shape mismatch");
  xor_into(data_, o.data_);
  return *this;
}

BitVector BitMatrix::apply(const BitVector& v) const {
  if (v.size() != rows_) throw std::invalid_argument("BitMatrix::apply: size mismatch");
  BitVector out(cols_);
  auto vw = v.words();
  for (std::size_t w = 0; w < vw.size(); ++w) {
    for (Word bits = vw[w]; bits != 0; bits &= bits - 1) {
      xor_into(out.words(), row(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits))));
    }
  }
  return out;
}

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimension mismatch");
  BitMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto src = a.row(r);
    auto dst = out.row(r);
    for (std::size_t w = 0; w < src.size(); ++w) {
      for (Word bits = src[w]; bits != 0; bits &= bits - 1) {
        xor_into(dst, b.row(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits))));
      }
    }
  }
  return out;
}

void Gf2Span::reduce(BitVector& v) const {
  if (v.size() != bits_) throw std::invalid_argument("Gf2Span: vector size mismatch");
  // Rows are kept fully reduced, so one pass over the pivots set in v suffices.
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (v.test(pivot_col_[i])) v ^= rows_[i];
  }
}

bool Gf2Span::contains(BitVector v) const {
  reduce(v);
  return v.none();
}

bool Gf2Span::insert(BitVector v) {
  reduce(v);
  if (v.none()) return false;
  const std::size_t pivot = v.first_set();
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].test(pivot)) rows_[i] ^= v;
  }
  pivot_row_[pivot] = rows_.size();
  pivot_col_.push_back(pivot);
  rows_.push_back(std::move(v));
  return true;
}

std::vector<BitVector> Gf2Span::basis() const {
  std::vector<BitVector> out;
  out.reserve(rows_.size());
  for (std::size_t c = 0; c < bits_; ++c) {
    if (pivot_row_[c] != kNoRow) out.push_back(rows_[pivot_row_[c]]);
  }
  return out;
}

std::vector<BitVector> left_null_space(const BitMatrix& m) {
  // Row-reduce [M | I]; rows whose M-part vanishes carry kernel vectors.
  const std::size_t n = m.rows();
  const std::size_t width = m.cols() + n;
  std::vector<BitVector> aug;
  aug.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    BitVector v(width);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m.test(r, c)) v.set(c);
    }
    v.set(m.cols() + r);
    aug.push_back(std::move(v));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < n; ++c) {
    std::size_t piv = rank;
    while (piv < n && !aug[piv].test(c)) ++piv;
    if (piv == n) continue;
    std::swap(aug[rank], aug[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r != rank && aug[r].test(c)) aug[r] ^= aug[rank];
    }
    ++rank;
  }
  Gf2Span kernel(n);
  for (std::size_t r = rank; r < n; ++r) {
    BitVector k(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (aug[r].test(m.cols() + i)) k.set(i);
    }
    kernel.insert(std::move(k));
  }
  return kernel.basis();
}

}  // namespace engel::gf2
