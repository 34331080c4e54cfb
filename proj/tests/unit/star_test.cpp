#include <doctest.h>

#include <stdexcept>

#include "engel/rng.hpp"
#include "engel/star_algebra.hpp"

using namespace engel;
using namespace engel::star;
using gf2::GroundSet;
using gf2::SubsetCode;

namespace {

SubsetCode S(std::initializer_list<unsigned> e) { return SubsetCode::of(e); }

// z_A y_B = (z y)_{A ⊔ B}, z_A x = (z x)_A, x x = 0.
std::optional<StarIndex> reference_product(const StarAlgebra& alg, StarIndex a, StarIndex b) {
  const auto prod = alg.base().basis_product({a.slot}, {b.slot});
  if (prod.is_zero()) return std::nullopt;
  const auto slot = static_cast<std::uint8_t>(std::countr_zero(prod.bits));
  std::uint64_t set;
  if (alg.is_x(a) || alg.is_x(b)) {
    set = a.set | b.set;
  } else {
    const auto u = gf2::disjoint_union(a.subset(), b.subset());
    if (!u) return std::nullopt;
    set = u->bits;
  }
  return StarIndex{slot, set};
}

}  // namespace

TEST_CASE("dimension and enumeration") {
  const StarAlgebra alg(lie::LParams(2), GroundSet(3));
  CHECK(alg.dim() == 22);
  for (std::uint64_t p = 0; p < alg.dim(); ++p) CHECK(alg.position(alg.index_at(p)) == p);
  CHECK(alg.position(alg.x()) == 0);
  CHECK_THROWS(alg.index_at(22));
  CHECK_THROWS(alg.require_index(StarIndex{0, 0}));
  CHECK_THROWS(alg.require_index(StarIndex{0, 0b1000}));
}

TEST_CASE("basis products from the definition") {
  const StarAlgebra alg(lie::LParams(3), GroundSet(4));
  CHECK(alg.basis_product(alg.w(S({1})), alg.x()) == alg.v(0, S({1})));
  CHECK(alg.basis_product(alg.v(5, S({1})), alg.w(S({2}))) == alg.w(S({1, 2})));
  CHECK_FALSE(alg.basis_product(alg.v(0, S({1, 2})), alg.w(S({2, 3}))));
  for (unsigned i = 0; i < alg.n(); ++i) {
    CHECK_FALSE(alg.basis_product(alg.v(i, S({0})), alg.v(i, S({1}))));
  }
  CHECK_FALSE(alg.basis_product(alg.w(S({0})), alg.w(S({1}))));
}

TEST_CASE("product table matches the reference on every pair") {
  const StarAlgebra alg(lie::LParams(2), GroundSet(3));
  for (std::uint64_t p = 0; p < alg.dim(); ++p) {
    for (std::uint64_t q = 0; q < alg.dim(); ++q) {
      const auto a = alg.index_at(p), b = alg.index_at(q);
      REQUIRE(alg.basis_product(a, b) == reference_product(alg, a, b));
    }
  }
}

TEST_CASE("bilinear multiply") {
  const StarAlgebra alg(lie::LParams(2), GroundSet(3));
  CHECK(alg.multiply(alg.parse("w{0}+x"), alg.parse("w{1}")) == alg.parse("v0{1}"));
  CHECK(alg.multiply(alg.parse("v0{0}"), alg.parse("v0{1}")).is_zero());
  CHECK(alg.multiply(alg.parse("x"), StarElement{}).is_zero());
}

TEST_CASE("ad") {
  const StarAlgebra alg(lie::LParams(3), GroundSet(3));
  CHECK(alg.ad(StarElement{}).is_zero());
  const auto adx = alg.ad(StarElement(alg.x()));
  CHECK(adx.then(alg, adx).is_zero());
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    const auto y = alg.random_element(rng);
    const auto z = alg.random_element(rng);
    CHECK(alg.ad(y).apply(alg, z) == alg.multiply(z, y));
  }
}

TEST_CASE("sandwich identities") {
  for (unsigned m : {2U, 3U}) {
    const StarAlgebra alg(lie::LParams(m), GroundSet(4));
    const auto rep = check_sandwich(alg, 200, 99);
    CHECK(rep.ok());
    CHECK(rep.consistent());
  }
  const StarAlgebra alg(lie::LParams(3), GroundSet(4));
  const auto adx = alg.ad(StarElement(alg.x()));
  const auto y = alg.ad(StarElement(alg.w(S({0}))));
  CHECK(adx.then(alg, y).then(alg, adx).is_zero());
}

TEST_CASE("Lie laws on truncations") {
  const StarAlgebra a(lie::LParams(2), GroundSet(3));
  const auto rep = verify_star_jacobi(a, 64, 0, 1);
  CHECK(rep.ok());
  CHECK(rep.measured_values["exhaustive"] == true);
  const StarAlgebra b(lie::LParams(3), GroundSet(3));
  CHECK(verify_star_jacobi(b, 64, 2000, 1).ok());
}

TEST_CASE("local nilpotency") {
  const StarAlgebra alg(lie::LParams(2), GroundSet(4));
  const auto only_x = check_local_nilpotency(alg, {alg.x()});
  CHECK(only_x.nilpotency_class == 1);
  CHECK(only_x.within_bound());
  const auto xw = check_local_nilpotency(alg, {alg.x(), alg.w(S({0}))});
  CHECK(xw.within_bound());
  CHECK(xw.nilpotency_class >= 2);  // x w = v0 is nonzero
  CHECK_THROWS(check_local_nilpotency(alg, {alg.x(), alg.x()}));
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    std::vector<StarIndex> gens;
    while (gens.size() < 3) {
      const auto g = alg.random_index(rng);
      if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
    }
    CHECK(check_local_nilpotency(alg, gens).within_bound());
  }
}

TEST_CASE("text round trip") {
  const StarAlgebra alg(lie::LParams(3), GroundSet(5));
  CHECK(alg.format(alg.parse("v3{1,4}+w{2}+x")) == "v3{1,4}+w{2}+x");
  CHECK(alg.format(StarElement{}) == "0");
  Rng rng(6);
  for (int t = 0; t < 200; ++t) {
    const auto e = alg.random_element(rng);
    CHECK(alg.parse(alg.format(e)) == e);
  }
  CHECK_THROWS(alg.parse("v3{}"));
  CHECK_THROWS(alg.parse("w{7}"));
  CHECK_THROWS(alg.parse("v6{1}"));
}

TEST_CASE("equal terms cancel") {
  const StarAlgebra alg(lie::LParams(2), GroundSet(3));
  const auto e = StarElement::from_terms({alg.x(), alg.w(S({0})), alg.x()});
  CHECK(e == StarElement(alg.w(S({0}))));
  CHECK((e + e).is_zero());
}
