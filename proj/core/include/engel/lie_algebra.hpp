#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "engel/report.hpp"

namespace engel::lie {

/// Parameters of L(m): n = 2^m - 2, dim = n + 2 = 2^m.
class LParams {
 public:
  static constexpr unsigned kMinM = 2;
  /// Elements are single machine words, so dim = 2^m must not exceed 64.
  static constexpr unsigned kMaxM = 6;

  explicit LParams(unsigned m);

  unsigned m() const { return m_; }
  unsigned n() const { return n_; }
  unsigned dim() const { return n_ + 2; }

  friend bool operator==(const LParams&, const LParams&) = default;

 private:
  unsigned m_;
  unsigned n_;
};

/// Basis slot in the fixed order V(0) < ... < V(n-1) < W < X.
struct LBasis {
  std::uint8_t slot = 0;

  static LBasis v(unsigned i) { return {static_cast<std::uint8_t>(i)}; }
  static LBasis w(const LParams& p) { return {static_cast<std::uint8_t>(p.n())}; }
  static LBasis x(const LParams& p) { return {static_cast<std::uint8_t>(p.n() + 1)}; }

  friend constexpr auto operator<=>(LBasis, LBasis) = default;
};

/// Element of L; bit k is the coefficient of basis slot k.
struct LElement {
  std::uint64_t bits = 0;

  static LElement basis(LBasis b) { return {std::uint64_t{1} << b.slot}; }

  bool is_zero() const { return bits == 0; }
  bool has(LBasis b) const { return (bits >> b.slot) & 1U; }

  LElement& operator+=(LElement o) {
    bits ^= o.bits;
    return *this;
  }
  friend LElement operator+(LElement a, LElement b) { return a += b; }
  friend constexpr auto operator<=>(LElement, LElement) = default;
};

/// dim x dim matrix over GF(2); row k is the image of basis slot k (right action).
class LMatrix {
 public:
  LMatrix() = default;
  explicit LMatrix(unsigned dim) : rows_(dim, 0) {}

  static LMatrix identity(unsigned dim);

  unsigned dim() const { return static_cast<unsigned>(rows_.size()); }
  std::uint64_t row(unsigned k) const { return rows_[k]; }
  void set_row(unsigned k, std::uint64_t bits) { rows_[k] = bits; }
  const std::vector<std::uint64_t>& rows() const { return rows_; }

  LElement apply(LElement e) const;
  bool is_zero() const;

  LMatrix& operator+=(const LMatrix& o);
  friend LMatrix operator+(LMatrix a, const LMatrix& b) { return a += b; }
  /// Composition "apply a, then b".
  friend LMatrix operator*(const LMatrix& a, const LMatrix& b);
  friend auto operator<=>(const LMatrix&, const LMatrix&) = default;

 private:
  std::vector<std::uint64_t> rows_;
};

/// The Lie algebra L(m) over GF(2).
class LAlgebra {
 public:
  explicit LAlgebra(LParams params);

  const LParams& params() const { return params_; }
  unsigned dim() const { return params_.dim(); }
  LBasis v(unsigned i) const;
  LBasis w() const { return LBasis::w(params_); }
  LBasis x() const { return LBasis::x(params_); }

  /// i ⊕ j: the representative of i + j mod (n - 1) in {0, ..., n-2}.
  unsigned oplus(unsigned i, unsigned j) const;

  /// Every basis product is zero or a single basis vector; returns the slot or -1.
  int basis_product_slot(LBasis a, LBasis b) const { return table_[a.slot * dim() + b.slot]; }
  LElement basis_product(LBasis a, LBasis b) const;
  LElement multiply(LElement a, LElement b) const;

  /// Matrix of right multiplication by y.
  LMatrix ad(LElement y) const;

  VerificationReport verify_alternating() const;
  VerificationReport verify_jacobi() const;
  /// Pairwise C(j+1, n-i) == C(i+1, n-j) mod 2 over all V indices.
  VerificationReport verify_structure_symmetry() const;

  /// Basis (reduced row-echelon) of the center.
  std::vector<LElement> center() const;
  /// Smallest ideal containing y, in reduced row-echelon form. Throws on y == 0.
  std::vector<LElement> ideal_closure(LElement y) const;
  /// Basis of W = span{v(0), ..., v(n-1), w}, in the same canonical form as ideal_closure.
  std::vector<LElement> w_ideal() const;
  /// GF(2) dimension of the (non-unital) associative algebra generated by ad(x), ad(v(i)), ad(w).
  unsigned enveloping_algebra_dim() const;

  std::string format(LElement e) const;
  /// Inverse of format; accepts "0", "x", "w", "v3", joined by '+'.
  LElement parse(std::string_view text) const;

 private:
  void require_element(LElement e) const;

  LParams params_;
  std::vector<std::int8_t> table_;
};

}  // namespace engel::lie
