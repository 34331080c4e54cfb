#include <doctest.h>

#include <stdexcept>

#include "engel/bitmatrix.hpp"
#include "engel/gf2.hpp"
#include "engel/lie_algebra.hpp"
#include "engel/rng.hpp"

using namespace engel;
using namespace engel::lie;

namespace {

// Product table rebuilt from the defining rules, with parities from Pascal's triangle.
LElement reference_product(unsigned n, unsigned a, unsigned b) {
  const unsigned w = n, x = n + 1;
  auto e = [](unsigned s) { return LElement{std::uint64_t{1} << s}; };
  if (a < n && b < n) {
    if (!gf2::binom_parity_oracle(b + 1, n - a).odd()) return {};
    return e((a + b) % (n - 1));
  }
  if (a < n && b == w) return a == n - 1 ? e(w) : e(a + 1);
  if (a == w && b < n) return reference_product(n, b, a);
  if ((a == w && b == x) || (a == x && b == w)) return e(0);
  return {};
}

}  // namespace

TEST_CASE("parameters") {
  CHECK(LParams(2).n() == 2);
  CHECK(LParams(3).dim() == 8);
  CHECK_THROWS_AS(LParams(1), std::invalid_argument);
  CHECK_THROWS_AS(LParams(7), std::invalid_argument);
}

TEST_CASE("oplus") {
  const LAlgebra l3{LParams(3)};
  CHECK(l3.oplus(4, 3) == 2);
  CHECK(l3.oplus(0, 0) == 0);
  const LAlgebra l2{LParams(2)};
  CHECK(l2.oplus(1, 1) == 0);
  CHECK_THROWS(l3.oplus(6, 0));
}

TEST_CASE("basis products") {
  const LAlgebra l3{LParams(3)};
  auto b = [](LBasis s) { return LElement::basis(s); };
  CHECK(l3.basis_product(l3.v(5), l3.w()) == b(l3.w()));
  CHECK(l3.basis_product(l3.w(), l3.x()) == b(l3.v(0)));
  CHECK(l3.basis_product(l3.v(2), l3.v(2)).is_zero());
  const LAlgebra l2{LParams(2)};
  CHECK(l2.basis_product(l2.v(0), l2.v(1)) == b(l2.v(0)));
}

TEST_CASE("product table matches the defining rules") {
  for (unsigned m = 2; m <= 6; ++m) {
    const LAlgebra alg{LParams(m)};
    const unsigned n = alg.params().n();
    for (unsigned a = 0; a < alg.dim(); ++a) {
      for (unsigned c = 0; c < alg.dim(); ++c) {
        const auto got = alg.basis_product({static_cast<std::uint8_t>(a)}, {static_cast<std::uint8_t>(c)});
        REQUIRE(got == reference_product(n, a, c));
      }
    }
  }
}

TEST_CASE("bilinear multiply") {
  const LAlgebra l3{LParams(3)};
  CHECK(l3.multiply({}, l3.parse("x")).is_zero());
  CHECK(l3.multiply(l3.parse("w+x"), l3.parse("x")) == l3.parse("v0"));
  CHECK(l3.multiply(l3.parse("v0+v1"), l3.parse("w")) == l3.parse("v1+v2"));
  CHECK_THROWS(l3.multiply(LElement{1ULL << 9}, l3.parse("x")));
}

TEST_CASE("Lie laws exhaustively") {
  for (unsigned m = 2; m <= 4; ++m) {
    const LAlgebra alg{LParams(m)};
    const auto alt = alg.verify_alternating();
    const auto jac = alg.verify_jacobi();
    const unsigned d = alg.dim();
    CHECK(alt.ok());
    CHECK(alt.cases_total == d + d * (d - 1) / 2);
    CHECK(jac.ok());
    CHECK(jac.cases_total == d * d * d);
    CHECK(alg.verify_structure_symmetry().ok());
  }
}

TEST_CASE("v(i) v(j) vanishes when i + j <= n - 2") {
  for (unsigned m = 2; m <= 4; ++m) {
    const LAlgebra alg{LParams(m)};
    const unsigned n = alg.params().n();
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned j = 0; i + j + 2 <= n; ++j) CHECK(alg.basis_product(alg.v(i), alg.v(j)).is_zero());
    }
  }
}

TEST_CASE("ad is a Lie homomorphism into right multiplications") {
  const LAlgebra alg{LParams(3)};
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    const LElement a{rng.below(256)}, b{rng.below(256)}, y{rng.below(256)};
    CHECK(alg.ad(a).apply(y) == alg.multiply(y, a));
    // ad(a b) = ad(a) ad(b) + ad(b) ad(a) (right action, characteristic 2)
    CHECK(alg.ad(alg.multiply(a, b)) == alg.ad(a) * alg.ad(b) + alg.ad(b) * alg.ad(a));
  }
  CHECK(alg.ad({}).is_zero());
}

TEST_CASE("trivial center") {
  for (unsigned m = 2; m <= 4; ++m) CHECK(LAlgebra{LParams(m)}.center().empty());
}

TEST_CASE("ideal closures") {
  const LAlgebra l2{LParams(2)};
  CHECK(l2.ideal_closure(l2.parse("w")) == l2.w_ideal());
  for (std::uint64_t bits = 1; bits < 8; ++bits) CHECK(l2.ideal_closure(LElement{bits}) == l2.w_ideal());
  const auto xc = l2.ideal_closure(l2.parse("x"));
  CHECK(xc.size() == 4);  // x generates everything: x w = v0, then W
  CHECK_THROWS(l2.ideal_closure({}));

  const LAlgebra l3{LParams(3)};
  CHECK(l3.ideal_closure(l3.parse("v3+w")) == l3.w_ideal());
  CHECK(l3.w_ideal().size() == 7);
}

TEST_CASE("enveloping algebra dimension") {
  for (unsigned m = 2; m <= 3; ++m) {
    const LAlgebra alg{LParams(m)};
    // independent closure: span of all products of ad(basis), grown until stable
    const unsigned d = alg.dim();
    gf2::Gf2Span span(d * d);
    auto flat = [d](const LMatrix& mat) {
      gf2::BitVector v(d * d);
      for (unsigned r = 0; r < d; ++r) {
        for (unsigned c = 0; c < d; ++c) {
          if ((mat.row(r) >> c) & 1U) v.set(r * d + c);
        }
      }
      return v;
    };
    std::vector<LMatrix> gens, frontier;
    for (unsigned s = 0; s < d; ++s) gens.push_back(alg.ad(LElement::basis({static_cast<std::uint8_t>(s)})));
    for (const auto& g : gens) {
      if (span.insert(flat(g))) frontier.push_back(g);
    }
    while (!frontier.empty()) {
      std::vector<LMatrix> next;
      for (const auto& p : frontier) {
        for (const auto& g : gens) {
          const auto q = p * g;
          if (span.insert(flat(q))) next.push_back(q);
        }
      }
      frontier = std::move(next);
    }
    CHECK(alg.enveloping_algebra_dim() == span.dimension());
    CHECK(alg.enveloping_algebra_dim() <= d * d);
  }
}

TEST_CASE("text round trip") {
  const LAlgebra alg{LParams(3)};
  CHECK(alg.format(alg.parse("v3+w")) == "v3+w");
  CHECK(alg.format({}) == "0");
  CHECK(alg.format(alg.parse("x")) == "x");
  for (std::uint64_t bits = 0; bits < 256; ++bits) CHECK(alg.parse(alg.format(LElement{bits})) == LElement{bits});
  CHECK_THROWS(alg.parse("v9"));
  CHECK_THROWS(alg.parse("y"));
}
