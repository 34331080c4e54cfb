#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace engel::gf2 {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

/// Fixed-length GF(2) vector packed into 64-bit words. Bits past size() stay zero.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t bits) : bits_(bits), words_(words_for(bits), 0) {}

  std::size_t size() const { return bits_; }
  std::span<Word> words() { return words_; }
  std::span<const Word> words() const { return words_; }

  bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i) { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  bool none() const;
  std::size_t count() const;
  /// Index of the lowest set bit, or size() when none.
  std::size_t first_set() const;

  BitVector& operator^=(const BitVector& o);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend bool operator==(const BitVector&, const BitVector&) = default;
  friend auto operator<=>(const BitVector& a, const BitVector& b) {
    if (auto c = a.bits_ <=> b.bits_; c != 0) return c;
    return a.words_ <=> b.words_;
  }

 private:
  std::size_t bits_ = 0;
  std::vector<Word> words_;
};

/// Dense GF(2) matrix, row-major, acting on row vectors from the right (v -> v * M).
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t stride() const { return stride_; }

  std::span<Word> row(std::size_t r) { return {data_.data() + r * stride_, stride_}; }
  std::span<const Word> row(std::size_t r) const { return {data_.data() + r * stride_, stride_}; }

  bool test(std::size_t r, std::size_t c) const { return (row(r)[c / kWordBits] >> (c % kWordBits)) & 1U; }
  void set(std::size_t r, std::size_t c) { row(r)[c / kWordBits] |= Word{1} << (c % kWordBits); }
  void flip(std::size_t r, std::size_t c) { row(r)[c / kWordBits] ^= Word{1} << (c % kWordBits); }

  bool is_zero() const;
  bool is_identity() const;
  std::size_t count() const;

  /// Row-major flattening into a rows*cols bit vector.
  BitVector flatten() const;
  static BitMatrix unflatten(const BitVector& v, std::size_t rows, std::size_t cols);

  BitMatrix& operator^=(const BitMatrix& o);
  friend BitMatrix operator^(BitMatrix a, const BitMatrix& b) { return a ^= b; }
  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

  /// v * M for a row vector v of length rows().
  BitVector apply(const BitVector& v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> data_;
};

/// a * b. Cost is proportional to the number of set bits in a times b's row width,
/// so sparse left factors are cheap.
BitMatrix multiply(const BitMatrix& a, const BitMatrix& b);

/// Incrementally maintained span of GF(2) vectors in reduced row-echelon form.
class Gf2Span {
 public:
  explicit Gf2Span(std::size_t bits) : bits_(bits), pivot_row_(bits, kNoRow) {}

  std::size_t dimension() const { return rows_.size(); }
  std::size_t ambient() const { return bits_; }

  /// Reduces v against the current basis in place; v becomes zero iff v was in the span.
  void reduce(BitVector& v) const;
  bool contains(BitVector v) const;
  /// Adds v to the span; returns true iff the span grew.
  bool insert(BitVector v);

  /// Basis in reduced row-echelon form, rows ordered by ascending pivot column.
  std::vector<BitVector> basis() const;

 private:
  static constexpr std::size_t kNoRow = static_cast<std::size_t>(-1);
  std::size_t bits_;
  std::vector<BitVector> rows_;
  std::vector<std::size_t> pivot_col_;
  std::vector<std::size_t> pivot_row_;
};

/// Basis of {v : v * M = 0}, in reduced row-echelon form.
std::vector<BitVector> left_null_space(const BitMatrix& m);

}  // namespace engel::gf2
