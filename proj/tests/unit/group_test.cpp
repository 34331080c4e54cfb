#include <doctest.h>

#include <stdexcept>

#include "engel/group.hpp"
#include "engel/rng.hpp"

using namespace engel;
using namespace engel::group;
using gf2::GroundSet;
using gf2::SubsetCode;

namespace {

SubsetCode S(std::initializer_list<unsigned> e) { return SubsetCode::of(e); }

UnipotentOp gen(const StarAlgebra& alg, StarIndex y) { return generator_matrix(alg, StarElement(y)); }

// Product of generator matrices by plain dense multiplication, no shortcuts.
UnipotentOp slow_realize(const StarAlgebra& alg, const GroupWord& w) {
  UnipotentOp out = UnipotentOp::identity(alg.dim());
  for (const auto& g : w.letters) out = out * gen(alg, g);
  return out;
}

}  // namespace

TEST_CASE("generators are unipotent involutions") {
  const StarAlgebra alg(lie::LParams(2), GroundSet(3));
  for (std::uint64_t p = 0; p < alg.dim(); ++p) {
    const auto g = gen(alg, alg.index_at(p));
    CHECK(g.is_involution());
    CHECK(g.is_unipotent());
    CHECK(g.inverse() == g);
  }
}

TEST_CASE("realize") {
  const StarAlgebra alg(lie::LParams(2), GroundSet(3));
  CHECK(realize(alg, GroupWord{}).is_identity());
  CHECK(realize(alg, GroupWord{{alg.x(), alg.x()}}).is_identity());
  const GroupWord comm{{alg.w(S({0})), alg.x(), alg.w(S({0})), alg.x()}};
  CHECK(realize(alg, comm) == gen(alg, alg.v(0, S({0}))));
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto w = random_word(alg, 12, s);
    CHECK(w.letters.size() == 12);
    const auto r = realize(alg, w);
    CHECK(r == slow_realize(alg, w));
    CHECK(r.is_unipotent());
    CHECK((r * r.inverse()).is_identity());
  }
  CHECK(random_word(alg, 0, 1).letters.empty());
}

TEST_CASE("dimension cap") {
  const StarAlgebra alg(lie::LParams(3), GroundSet(10));
  CHECK_THROWS_AS(realize(alg, GroupWord{{alg.x()}}), ResourceCapError);
  CHECK_NOTHROW(realize(alg, GroupWord{{alg.x()}}, 1 << 14));
}

TEST_CASE("commutator basics") {
  const StarAlgebra alg(lie::LParams(3), GroundSet(4));
  const auto one = UnipotentOp::identity(alg.dim());
  const auto gx = gen(alg, alg.x());
  CHECK(commutator(gx, one).is_identity());
  for (unsigned i = 0; i < alg.n(); ++i) CHECK(commutator(gen(alg, alg.v(i, S({0}))), gx).is_identity());
  for (unsigned i = 0; i + 2 <= alg.n(); ++i) {
    CHECK(commutator(gen(alg, alg.v(i, S({0}))), gen(alg, alg.w(S({1})))) == gen(alg, alg.v(i + 1, S({0, 1}))));
  }
}

TEST_CASE("structured commutators agree with matrices") {
  const StarAlgebra alg(lie::LParams(2), GroundSet(3));
  const auto one = UnipotentOp::identity(alg.dim());
  for (std::uint64_t p = 0; p < alg.dim(); ++p) {
    for (std::uint64_t q = 0; q < alg.dim(); ++q) {
      const auto a = alg.index_at(p), b = alg.index_at(q);
      const auto s = structured_commutator(alg, a, b);
      REQUIRE(commutator(gen(alg, a), gen(alg, b)) == (s ? gen(alg, *s) : one));
    }
  }
}

TEST_CASE("commutator relations") {
  const StarAlgebra alg(lie::LParams(3), GroundSet(4));
  const auto rep = check_commutator_relations(alg, 50, 5);
  CHECK(rep.ok());
  CHECK(rep.consistent());
}

TEST_CASE("normal form examples") {
  const StarAlgebra alg(lie::LParams(2), GroundSet(3));
  const auto nx = collect_normal_form(alg, GroupWord{{alg.x()}});
  CHECK(nx.epsilon);
  CHECK(nx.w_block.empty());
  for (const auto& b : nx.v_blocks) CHECK(b.empty());

  const auto nf = collect_normal_form(alg, GroupWord{{alg.w(S({0})), alg.x()}});
  CHECK(nf.epsilon);
  CHECK(nf.v_blocks[0] == std::vector<SubsetCode>{S({0})});
  CHECK(nf.v_blocks[1].empty());
  CHECK(nf.w_block == std::vector<SubsetCode>{S({0})});

  const auto id = collect_normal_form(alg, GroupWord{{alg.w(S({0})), alg.w(S({0}))}});
  CHECK(id == NormalForm{false, {{}, {}}, {}});
}

TEST_CASE("collection preserves the group element") {
  for (auto [m, N] : std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {3, 4}}) {
    const StarAlgebra alg{lie::LParams(m), GroundSet(N)};
    for (std::uint64_t s = 0; s < 100; ++s) {
      Rng rng(s);
      const auto w = random_word(alg, 1 + rng.below(12), s);
      const auto nf = collect_normal_form(alg, w);
      const auto nw = normal_form_word(alg, nf);
      REQUIRE(realize(alg, w) == realize(alg, nw));
      CHECK(collect_normal_form(alg, nw) == nf);
      CHECK(normal_form_from_json(normal_form_to_json(nf), alg.params()) == nf);
    }
  }
}

TEST_CASE("word text round trip") {
  const StarAlgebra alg(lie::LParams(3), GroundSet(4));
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto w = random_word(alg, 7, s);
    CHECK(parse_word(alg, format_word(alg, w)) == w);
  }
  CHECK(parse_word(alg, "").letters.empty());
  CHECK_THROWS(parse_word(alg, "x q"));
}

TEST_CASE("conjugate expansion") {
  const lie::LParams p2(2);
  CHECK(conjugate_expansion(p2, {}) == StarElement(StarIndex{3, 0}));
  const StarAlgebra alg(p2, GroundSet(3));
  const std::vector<SubsetCode> one{S({0})};
  CHECK(conjugate_expansion(p2, one) == alg.parse("x+v0{0}"));
  const std::vector<SubsetCode> two{S({0}), S({1})};
  // x + v0_{0} + v0_{1} + v1_{0,1}
  CHECK(conjugate_expansion(p2, two) == alg.parse("x+v0{0}+v0{1}+v1{0,1}"));
  for (unsigned k = 0; k <= 3; ++k) {
    std::vector<SubsetCode> sets;
    for (unsigned i = 0; i < k; ++i) sets.push_back(S({i}));
    const auto conj = realize(alg, conjugate_word(alg, sets));
    CHECK(conj == generator_matrix(alg, conjugate_expansion(p2, sets)));
  }
  const std::vector<SubsetCode> overlap{S({0}), S({0, 1})};
  CHECK_THROWS_AS(conjugate_expansion(p2, overlap), std::invalid_argument);
}

TEST_CASE("left 3-Engel") {
  const StarAlgebra a(lie::LParams(2), GroundSet(3));
  CHECK(engel3_check(a, GroupWord{}));
  CHECK(engel3_check(a, GroupWord{{a.w(S({0})), a.w(S({1})), a.w(S({2}))}}));
  const StarAlgebra b(lie::LParams(3), GroundSet(4));
  for (std::uint64_t s = 0; s < 40; ++s) CHECK(engel3_check(b, random_word(b, 12, s)));
}

TEST_CASE("witness") {
  const lie::LParams p2(2);
  CHECK(witness_ground_size(p2) == 7);
  CHECK(witness_ground_size(lie::LParams(3)) == 25);
  const auto res = witness_commutator(p2);
  CHECK(res.entries.size() == 1 + 3 * (1 + 2));
  CHECK(res.matches_expected());
  CHECK(res.proper_prefixes_nontrivial());
  const StarAlgebra alg(p2, GroundSet(7));
  CHECK(alg.format(*res.value()) == "w{0,1,2,3,4,5,6}");
  const auto dense = witness_commutator_dense(p2);
  REQUIRE(dense.size() == res.entries.size());
  for (std::size_t k = 0; k + 1 < dense.size(); ++k) CHECK_FALSE(dense[k].is_identity());
  CHECK(dense.back() == generator_matrix(alg, StarElement(res.expected)));
  CHECK(witness_commutator(lie::LParams(3)).matches_expected());
  CHECK_THROWS_AS(witness_pattern(lie::LParams(4)), ResourceCapError);
}

TEST_CASE("class bound on conjugates") {
  const StarAlgebra alg(lie::LParams(2), GroundSet(3));
  const std::vector<std::vector<SubsetCode>> one{{S({0}), S({1}), S({2})}};
  const auto r1 = conjugates_class_bound(alg, one, 20, 3);
  CHECK(r1.within_bound());
  CHECK(r1.commutator_checks.ok());
  const std::vector<std::vector<SubsetCode>> two{{S({0})}, {S({1}), S({2})}};
  const auto r2 = conjugates_class_bound(alg, two, 20, 3);
  CHECK(r2.bound == 9);
  CHECK(r2.within_bound());
  CHECK(r2.commutator_checks.ok());
}
