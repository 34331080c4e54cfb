#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "engel/bitmatrix.hpp"
#include "engel/lie_algebra.hpp"
#include "engel/report.hpp"
#include "engel/star_algebra.hpp"

namespace engel::multideg {

using lie::LMatrix;

/// Multi-degree (i1, ..., ir).
using Degree = std::vector<std::uint8_t>;

std::string format_degree(const Degree& d);

/// GF(2) combination of superfixed operators e^(d), one E-matrix per degree. Since e -> e^(d) is linear,
/// two terms of the same degree add their matrices and equal pairs cancel.
class MultiDegElement {
 public:
  explicit MultiDegElement(unsigned r) : r_(r) {}
  static MultiDegElement term(const LMatrix& op, Degree deg);

  unsigned r() const { return r_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Degree, LMatrix>& terms() const { return terms_; }

  void add_term(const LMatrix& op, const Degree& deg);
  MultiDegElement& operator+=(const MultiDegElement& o);
  friend MultiDegElement operator+(MultiDegElement a, const MultiDegElement& b) { return a += b; }
  friend bool operator==(const MultiDegElement&, const MultiDegElement&) = default;

 private:
  unsigned r_;
  std::map<Degree, LMatrix> terms_;
};

/// e^(i) f^(j) = prod_k C(i_k + j_k, i_k) (ef)^(i + j), coefficients mod 2.
MultiDegElement multideg_product(const MultiDegElement& a, const MultiDegElement& b);

/// The generators e_1 = ad(v(0)), ..., e_n = ad(v(n-1)), e_{n+1} = ad(w) and f_(i,k) for a fixed r.
class Superfix {
 public:
  Superfix(lie::LParams params, unsigned r);

  const lie::LAlgebra& base() const { return base_; }
  unsigned r() const { return r_; }
  unsigned n() const { return base_.params().n(); }

  /// e_i, 1 <= i <= n+1.
  LMatrix e(unsigned i) const;
  /// f_(i,k) = e_i^(0,..,i,..,0) with i in coordinate k (1-based).
  MultiDegElement f(unsigned i, unsigned k) const;
  /// (ad(x), 0).
  MultiDegElement ad_x() const;
  Degree unit(unsigned k, unsigned value) const;

  std::vector<MultiDegElement> f_generators() const;
  std::vector<MultiDegElement> q_generators() const;

 private:
  lie::LAlgebra base_;
  unsigned r_;
};

struct IndexResult {
  unsigned index = 0;
  unsigned bound = 0;
  /// Dimension of each nonzero product level, level 1 first.
  std::vector<std::size_t> level_dims;
  bool within_bound() const { return index <= bound; }
};

/// Least L with every L-fold product of the (homogeneous) generators zero.
IndexResult nilpotency_index(std::span<const MultiDegElement> generators, std::size_t basis_cap = 2'000'000);

/// F = <f_(i,k)>; bound 4r.
IndexResult nilpotency_index_F(const lie::LParams& params, unsigned r);

struct QIndexResult : IndexResult {
  /// ad(x) f_(n+1,k) = f_(n+1,k) ad(x) + e_1^((n+1) in coordinate k), for every k.
  bool rewriting_identity_holds = false;
  /// The same identity with the last term replaced by f_(1,k) (degree 1 instead of n+1).
  bool rewriting_identity_degree_one_holds = false;
  /// ad(x) f_(n+1,k1) ad(x) f_(n+1,k2) = 0 for all k1, k2.
  bool alternating_products_vanish = false;
};

/// Q = <ad(x), F>; bound 4r + 1.
QIndexResult nilpotency_index_Q(const lie::LParams& params, unsigned r);

/// C(i+j, i) even whenever i + j >= n + 2, 0 <= i, j <= n + 1.
VerificationReport check_binomial_vanishing(const lie::LParams& params);
/// e_i e_j = 0 whenever i + j <= n - 1, 1 <= i, j <= n.
VerificationReport check_short_products_vanish(const lie::LParams& params);
/// f_(i,k) f_(j,s) nonzero implies n <= i + j <= n + 1, for k = s and k != s (r = 2).
VerificationReport check_product_degree_window(const lie::LParams& params);

/// Concrete realization of superfixed operators on a truncation whose ground set is split into r blocks.
class ConcreteRealization {
 public:
  ConcreteRealization(lie::LParams params, std::vector<unsigned> block_sizes);

  const star::StarAlgebra& algebra() const { return alg_; }
  const std::vector<gf2::SubsetCode>& blocks() const { return blocks_; }

  /// e(B) on the truncation; B may be empty (then x maps to zero).
  gf2::BitMatrix e_of(const LMatrix& e, gf2::SubsetCode b) const;
  /// Sum over B_l within block l with |B_l| = d_l of e(B_1 ∪ ... ∪ B_r).
  gf2::BitMatrix superfix(const LMatrix& e, const Degree& d) const;
  gf2::BitMatrix realize(const MultiDegElement& a) const;

 private:
  star::StarAlgebra alg_;
  std::vector<gf2::SubsetCode> blocks_;
};

/// (i) each conjugate of 1 + ad(x) by the singletons of block k equals 1 + ad(x) + sum_i f_(i,k) concretely;
/// (ii) multideg_product agrees with operator composition on `pairs` seeded random pairs.
/// Throws std::invalid_argument unless the block sizes partition a ground set of `ground_size` elements.
VerificationReport cross_validate_concrete(const lie::LParams& params, const std::vector<unsigned>& set_sizes,
                                           unsigned ground_size, unsigned pairs, std::uint64_t seed);

}  // namespace engel::multideg
