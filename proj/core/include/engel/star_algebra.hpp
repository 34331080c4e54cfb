#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "engel/bitmatrix.hpp"
#include "engel/gf2.hpp"
#include "engel/lie_algebra.hpp"
#include "engel/report.hpp"
#include "engel/rng.hpp"

namespace engel::star {

using gf2::GroundSet;
using gf2::SubsetCode;

/// Basis element of L*: z_A for a basis slot z of W and nonempty A, or x (slot n+1, empty subset).
struct StarIndex {
  std::uint8_t slot = 0;
  std::uint64_t set = 0;

  SubsetCode subset() const { return {set}; }

  /// Text order: V(0..n-1) by subset, then W by subset, then x.
  friend constexpr auto operator<=>(const StarIndex&, const StarIndex&) = default;
};

/// GF(2) combination of star basis elements, kept as a sorted duplicate-free list.
class StarElement {
 public:
  StarElement() = default;
  explicit StarElement(StarIndex term) : terms_{term} {}
  /// Sorts and cancels repeated terms in pairs.
  static StarElement from_terms(std::vector<StarIndex> terms);

  const std::vector<StarIndex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  StarElement& operator+=(const StarElement& o);
  friend StarElement operator+(StarElement a, const StarElement& b) { return a += b; }
  friend bool operator==(const StarElement&, const StarElement&) = default;

 private:
  std::vector<StarIndex> terms_;
};

class StarAlgebra;

/// Linear operator on the truncation, stored column-sparse: images_[p] is the image of basis position p.
class StarOperator {
 public:
  StarOperator() = default;
  explicit StarOperator(std::vector<StarElement> images) : images_(std::move(images)) {}

  std::size_t dim() const { return images_.size(); }
  const StarElement& image(std::size_t pos) const { return images_[pos]; }
  bool is_zero() const;

  StarElement apply(const StarAlgebra& alg, const StarElement& e) const;
  /// "this, then next".
  StarOperator then(const StarAlgebra& alg, const StarOperator& next) const;
  StarOperator& operator+=(const StarOperator& o);

  /// Dense row-vector matrix over the truncated basis.
  gf2::BitMatrix to_dense(const StarAlgebra& alg) const;

  friend bool operator==(const StarOperator&, const StarOperator&) = default;

 private:
  std::vector<StarElement> images_;
};

/// The truncation L*_N over nonempty subsets of {0, ..., N-1}.
class StarAlgebra {
 public:
  StarAlgebra(lie::LParams params, GroundSet ground);

  const lie::LAlgebra& base() const { return base_; }
  const lie::LParams& params() const { return base_.params(); }
  const GroundSet& ground() const { return ground_; }
  unsigned n() const { return base_.params().n(); }

  /// (2^N - 1)(n + 1) + 1; saturates at UINT64_MAX for very large N.
  std::uint64_t dim() const;

  StarIndex x() const { return {static_cast<std::uint8_t>(n() + 1), 0}; }
  StarIndex v(unsigned i, SubsetCode a) const;
  StarIndex w(SubsetCode a) const;
  bool is_x(StarIndex s) const { return s.slot == n() + 1; }

  /// Throws std::invalid_argument unless s is a basis element of this truncation.
  void require_index(StarIndex s) const;
  void require_element(const StarElement& e) const;

  /// Enumeration order: x, then V(i, A) by i then bitmask, then W(A) by bitmask.
  std::uint64_t position(StarIndex s) const;
  StarIndex index_at(std::uint64_t pos) const;

  /// Product of basis elements: a single basis element or zero. No ground-set validation.
  std::optional<StarIndex> basis_product(StarIndex a, StarIndex b) const;
  StarElement multiply(const StarElement& a, const StarElement& b) const;

  /// Right multiplication by y on the truncation.
  StarOperator ad(const StarElement& y) const;

  StarIndex random_index(Rng& rng) const;
  /// Random element with 1..max_support basis terms.
  StarElement random_element(Rng& rng, unsigned max_support = 8) const;

  std::string format(StarIndex s) const;
  std::string format(const StarElement& e) const;
  StarIndex parse_index(std::string_view text) const;
  StarElement parse(std::string_view text) const;

 private:
  lie::LAlgebra base_;
  GroundSet ground_;
};

struct NilpotencyClass {
  unsigned nilpotency_class = 0;
  unsigned bound = 0;
  bool within_bound() const { return nilpotency_class <= bound; }
};

/// ad(x)^2 = 0 and ad(x) ad(y) ad(x) = 0 for every basis y and `samples` random y.
VerificationReport check_sandwich(const StarAlgebra& alg, unsigned samples, std::uint64_t seed);

/// Nilpotency class of the subalgebra generated by `generators`, with bound 2 * (number of non-x generators)
/// (at least 1, the class of a nonzero abelian algebra).
NilpotencyClass check_local_nilpotency(const StarAlgebra& alg, const std::vector<StarIndex>& generators);

/// Alternating and Jacobi laws on basis triples; exhaustive when dim <= exhaustive_cap, else sampled.
VerificationReport verify_star_jacobi(const StarAlgebra& alg, std::uint64_t exhaustive_cap, unsigned samples,
                                      std::uint64_t seed);

}  // namespace engel::star
