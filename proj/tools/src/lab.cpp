#include "lab.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "engel/group.hpp"
#include "engel/lie_algebra.hpp"
#include "engel/multideg.hpp"
#include "engel/parallel.hpp"
#include "engel/rng.hpp"
#include "engel/star_algebra.hpp"

namespace engel::lab {

namespace {

using group::ResourceCapError;

constexpr Suite kEach[] = {Suite::lie,     Suite::star,        Suite::group,    Suite::engel,
                           Suite::witness, Suite::class_bound, Suite::sandwich};

/// Stream tags keep the per-suite seed streams apart.
enum Stream : std::uint64_t { kLie = 1, kStar, kGroup, kEngel, kClass, kSandwich };

std::uint64_t max_dim(const RunConfig& c) { return c.force ? std::numeric_limits<std::uint64_t>::max() : kMaxDim; }

star::StarAlgebra truncation(const RunConfig& c) {
  star::StarAlgebra alg(lie::LParams(c.m), gf2::GroundSet(c.ground));
  if (alg.dim() > max_dim(c)) {
    throw ResourceCapError("truncation dimension " + std::to_string(alg.dim()) + " exceeds " +
                           std::to_string(kMaxDim) + " (use --force)");
  }
  return alg;
}

/// Contiguous blocks of the ground set, block k holding the singletons of its elements.
std::vector<std::vector<gf2::SubsetCode>> singleton_blocks(unsigned ground, unsigned r) {
  if (r == 0 || r > ground) throw UsageError("--r must be between 1 and --ground");
  std::vector<std::vector<gf2::SubsetCode>> blocks(r);
  for (unsigned e = 0; e < ground; ++e) blocks[e * r / ground].push_back(gf2::SubsetCode::of({e}));
  return blocks;
}

std::vector<unsigned> block_sizes(unsigned ground, unsigned r) {
  std::vector<unsigned> sizes;
  for (const auto& b : singleton_blocks(ground, r)) sizes.push_back(static_cast<unsigned>(b.size()));
  return sizes;
}

VerificationReport lie_suite(const RunConfig& c) {
  const lie::LAlgebra alg{lie::LParams(c.m)};
  VerificationReport rep("lie");
  rep.merge(alg.verify_alternating());
  rep.merge(alg.verify_jacobi());
  rep.merge(alg.verify_structure_symmetry());

  const auto center = alg.center();
  rep.check(center.empty(), [&] { return Failure{"center", "m=" + std::to_string(c.m), "{0}", "dim " + std::to_string(center.size())}; });

  const auto w = alg.w_ideal();
  const unsigned wdim = alg.params().n() + 1;
  auto closure_case = [&](std::uint64_t bits) {
    const lie::LElement y{bits};
    rep.check(alg.ideal_closure(y) == w, [&] { return Failure{"ideal/" + alg.format(y), alg.format(y), "W", "proper ideal"}; });
  };
  if (wdim <= 12) {
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << wdim); ++bits) closure_case(bits);
  } else {
    for (unsigned s = 0; s < c.samples; ++s) {
      Rng rng(mix_seed(mix_seed(c.seed, kLie), s));
      closure_case(1 + rng.below((std::uint64_t{1} << wdim) - 1));
    }
  }
  rep.measured_values["center_dim"] = center.size();
  rep.measured_values["enveloping_algebra_dim"] = alg.enveloping_algebra_dim();
  rep.measured_values["dim"] = alg.dim();
  return rep;
}

VerificationReport star_suite(const RunConfig& c) {
  const auto alg = truncation(c);
  const std::uint64_t seed = mix_seed(c.seed, kStar);
  VerificationReport rep("star");
  rep.merge(star::check_sandwich(alg, c.samples, seed));
  rep.merge(star::verify_star_jacobi(alg, 24, c.samples, seed));

  VerificationReport nil("star.local_nilpotency");
  auto nil_case = [&](const std::vector<star::StarIndex>& gens) {
    const auto res = star::check_local_nilpotency(alg, gens);
    std::string label;
    for (const auto& g : gens) label += (label.empty() ? "" : " ") + alg.format(g);
    nil.check(res.within_bound(), [&] {
      return Failure{"class/" + label, label, "<= " + std::to_string(res.bound), std::to_string(res.nilpotency_class)};
    });
    return res.nilpotency_class;
  };
  nil.measured_values["class_x_w0"] = nil_case({alg.x(), alg.w(gf2::SubsetCode::of({0}))});
  for (unsigned s = 0; s < c.samples; ++s) {
    Rng rng(mix_seed(seed, 1'000'000 + s));
    std::vector<star::StarIndex> gens;
    const auto count = 1 + rng.below(3);
    while (gens.size() < count) {
      const auto g = alg.random_index(rng);
      if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
    }
    nil_case(gens);
  }
  rep.merge(nil);
  rep.measured_values["dim"] = alg.dim();
  return rep;
}

VerificationReport group_suite(const RunConfig& c) {
  const auto alg = truncation(c);
  const std::uint64_t seed = mix_seed(c.seed, kGroup);
  const std::uint64_t cap = max_dim(c);
  VerificationReport rep("group");
  rep.merge(group::check_commutator_relations(alg, c.samples, seed, cap));

  struct Outcome {
    bool realize_ok;
    bool idempotent;
    bool json_round_trip;
    std::string word;
  };
  const auto outcomes = parallel_map(c.samples, c.jobs, [&](std::size_t s) {
    Rng rng(mix_seed(seed, 2'000'000 + s));
    const auto word = group::random_word(alg, 1 + rng.below(12), rng.next());
    const auto nf = group::collect_normal_form(alg, word);
    const auto nf_word = group::normal_form_word(alg, nf);
    return Outcome{group::realize(alg, word, cap) == group::realize(alg, nf_word, cap),
                   group::collect_normal_form(alg, nf_word) == nf,
                   group::normal_form_from_json(group::normal_form_to_json(nf), alg.params()) == nf,
                   group::format_word(alg, word)};
  });
  VerificationReport nf("group.normal_form");
  for (std::size_t s = 0; s < outcomes.size(); ++s) {
    const auto& o = outcomes[s];
    const std::string id = "word/" + std::to_string(s);
    nf.check(o.realize_ok, [&] { return Failure{id + "/realize", o.word, "realize(word) == realize(collect(word))", "differs"}; });
    nf.check(o.idempotent, [&] { return Failure{id + "/idempotent", o.word, "collect(collect(word)) == collect(word)", "differs"}; });
    nf.check(o.json_round_trip, [&] { return Failure{id + "/json", o.word, "round trip", "differs"}; });
  }
  rep.merge(nf);
  return rep;
}

VerificationReport engel_suite(const RunConfig& c) {
  const auto alg = truncation(c);
  const std::uint64_t seed = mix_seed(c.seed, kEngel);
  const std::uint64_t cap = max_dim(c);
  struct Outcome {
    bool ok;
    std::string word;
  };
  const auto outcomes = parallel_map(c.samples, c.jobs, [&](std::size_t s) {
    Rng rng(mix_seed(seed, s));
    const auto word = group::random_word(alg, 1 + rng.below(12), rng.next());
    return Outcome{group::engel3_check(alg, word, cap), group::format_word(alg, word)};
  });
  VerificationReport rep("engel");
  for (std::size_t s = 0; s < outcomes.size(); ++s) {
    rep.check(outcomes[s].ok, [&] {
      return Failure{"word/" + std::to_string(s), outcomes[s].word, "[(1+ad x)^g, 1+ad x, 1+ad x] = 1", "non-identity"};
    });
  }
  rep.measured_values["dim"] = alg.dim();
  return rep;
}

VerificationReport witness_suite(const RunConfig& c) {
  const lie::LParams params(c.m);
  VerificationReport rep("witness");
  const auto res = group::witness_commutator(params);
  const star::StarAlgebra alg(params, gf2::GroundSet(group::witness_ground_size(params)));
  std::string pattern;
  for (const auto& e : res.entries) pattern += (pattern.empty() ? "" : " ") + alg.format(e);
  rep.check(res.matches_expected(), [&] {
    return Failure{"structured", pattern, "1+ad(" + alg.format(res.expected) + ")",
                   res.value() ? "1+ad(" + alg.format(*res.value()) + ")" : "1"};
  });
  rep.check(res.proper_prefixes_nontrivial(), [&] { return Failure{"prefixes", pattern, "all non-identity", "identity prefix"}; });
  rep.measured_values["witness"] = res.value() ? alg.format(*res.value()) : "1";
  rep.measured_values["pattern_length"] = res.entries.size();
  rep.measured_values["ground_size"] = group::witness_ground_size(params);

  // The dense cross-check runs whenever the truncation fits under the cap.
  if (alg.dim() <= max_dim(c)) {
    const auto dense = group::witness_commutator_dense(params, max_dim(c));
    for (std::size_t k = 0; k < dense.size(); ++k) {
      const auto& expected = res.prefix_values[k];
      const auto want = expected ? group::generator_matrix(alg, star::StarElement(*expected), max_dim(c))
                                 : group::UnipotentOp::identity(alg.dim());
      rep.check(dense[k] == want, [&] {
        return Failure{"dense/prefix" + std::to_string(k + 1), pattern, "structured value", "matrix differs"};
      });
    }
    rep.measured_values["dense_dim"] = alg.dim();
  } else {
    rep.vacuous();
    rep.measured_values["dense_dim"] = nullptr;
  }
  return rep;
}

VerificationReport class_bound_suite(const RunConfig& c) {
  const auto alg = truncation(c);
  const auto blocks = singleton_blocks(c.ground, c.r);
  const auto res = group::conjugates_class_bound(alg, blocks, c.samples, mix_seed(c.seed, kClass), max_dim(c));
  VerificationReport rep("class-bound");
  rep.check(res.within_bound(), [&] {
    return Failure{"concrete_index", "r=" + std::to_string(c.r), "<= " + std::to_string(res.bound),
                   std::to_string(res.algebra_nilpotency_index)};
  });
  rep.merge(res.commutator_checks);
  rep.measured_values["concrete_index"] = res.algebra_nilpotency_index;
  rep.measured_values["concrete_bound"] = res.bound;
  rep.measured_values["commutator_weight"] = 4 * c.r + 2;
  return rep;
}

VerificationReport sandwich_suite(const RunConfig& c) {
  const lie::LParams params(c.m);
  VerificationReport rep("sandwich");
  rep.merge(multideg::check_binomial_vanishing(params));
  rep.merge(multideg::check_short_products_vanish(params));
  rep.merge(multideg::check_product_degree_window(params));

  auto index_case = [&](const char* name, const multideg::IndexResult& idx) {
    rep.check(idx.within_bound(), [&] {
      return Failure{name, "m=" + std::to_string(c.m) + " r=" + std::to_string(c.r), "<= " + std::to_string(idx.bound),
                     std::to_string(idx.index)};
    });
    rep.measured_values[std::string(name) + "_index"] = idx.index;
    rep.measured_values[std::string(name) + "_bound"] = idx.bound;
  };
  index_case("F", multideg::nilpotency_index_F(params, c.r));
  const auto q = multideg::nilpotency_index_Q(params, c.r);
  index_case("Q", q);
  rep.check(q.rewriting_identity_holds, [] { return Failure{"rewriting", "ad(x) f_(n+1,k)", "f_(n+1,k) ad(x) + e_1^((n+1)u_k)", "differs"}; });
  rep.check(q.alternating_products_vanish, [] { return Failure{"alternating", "ad(x) f ad(x) f", "0", "nonzero"}; });
  rep.measured_values["rewriting_degree_one_form_holds"] = q.rewriting_identity_degree_one_holds;

  if (c.r <= c.ground && star::StarAlgebra(params, gf2::GroundSet(c.ground)).dim() <= max_dim(c)) {
    rep.merge(multideg::cross_validate_concrete(params, block_sizes(c.ground, c.r), c.ground, c.samples,
                                                mix_seed(c.seed, kSandwich)));
  } else {
    rep.vacuous();
  }
  return rep;
}

VerificationReport run_one(Suite s, const RunConfig& c) {
  switch (s) {
    case Suite::lie: return lie_suite(c);
    case Suite::star: return star_suite(c);
    case Suite::group: return group_suite(c);
    case Suite::engel: return engel_suite(c);
    case Suite::witness: return witness_suite(c);
    case Suite::class_bound: return class_bound_suite(c);
    case Suite::sandwich: return sandwich_suite(c);
    case Suite::all: break;
  }
  throw UsageError("run_one: composite suite");
}

nlohmann::json config_echo(const RunConfig& c) {
  return {{"suite", suite_name(c.suite)}, {"m", c.m},         {"ground", c.ground}, {"seed", c.seed},
          {"samples", c.samples},         {"jobs", c.jobs},   {"r", c.r},           {"force", c.force}};
}

void validate(const RunConfig& c) {
  if (c.m < 2) throw UsageError("--m must be at least 2");
  if (c.m > kMaxM) throw ResourceCapError("m = " + std::to_string(c.m) + " exceeds the representation limit 6");
  if (c.ground == 0 || c.ground > 64) throw UsageError("--ground must be between 1 and 64");
  if (c.r == 0) throw UsageError("--r must be positive");
  if (c.r > kMaxR && !c.force) throw ResourceCapError("r = " + std::to_string(c.r) + " exceeds 3 (use --force)");
  if (c.jobs == 0) throw UsageError("--jobs must be positive");
}

}  // namespace

std::string_view suite_name(Suite s) {
  switch (s) {
    case Suite::lie: return "lie";
    case Suite::star: return "star";
    case Suite::group: return "group";
    case Suite::engel: return "engel";
    case Suite::witness: return "witness";
    case Suite::class_bound: return "class-bound";
    case Suite::sandwich: return "sandwich";
    case Suite::all: return "all";
  }
  return "?";
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"lie", "star", "group", "engel", "witness", "class-bound", "sandwich", "all"};
  return names;
}

Suite parse_suite(std::string_view text) {
  for (Suite s : kEach) {
    if (suite_name(s) == text) return s;
  }
  if (text == "all") return Suite::all;
  throw UsageError("unknown suite '" + std::string(text) + "'");
}

VerificationReport run(const RunConfig& config) {
  validate(config);
  using clock = std::chrono::steady_clock;
  auto timed = [&](Suite s) {
    const auto t0 = clock::now();
    VerificationReport rep = run_one(s, config);
    rep.timing_ms = static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0).count());
    return rep;
  };
  VerificationReport report;
  if (config.suite == Suite::all) {
    const auto t0 = clock::now();
    report = VerificationReport("all");
    for (Suite s : kEach) report.merge(timed(s));
    report.timing_ms = static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0).count());
  } else {
    report = timed(config.suite);
  }
  report.seed = config.seed;
  report.config = config_echo(config);
  return report;
}

std::string render(const VerificationReport& report) {
  nlohmann::json j = report;
  return j.dump(2) + "\n";
}

const std::vector<std::string>& explain_topics() {
  static const std::vector<std::string> topics = {"lie", "star", "group", "engel", "witness", "class-bound", "sandwich"};
  return topics;
}

std::string explain(std::string_view topic) {
  if (topic == "lie") {
    return "L(m) over GF(2), n = 2^m - 2, basis v(0..n-1), w, x (dimension 2^m).\n"
           "Product table (i ⊕ j = (i + j) mod (n - 1)):\n"
           "  v(i) v(j) = C(j+1, n-i) v(i ⊕ j)   (coefficient mod 2)\n"
           "  v(i) w    = v(i+1) for i < n-1,  v(n-1) w = w\n"
           "  w x       = v(0)\n"
           "  v(i) x    = 0,  x x = 0,  w w = 0\n"
           "Products are alternating, so each reversed pair has the same value.\n"
           "Suite lie: alternating and Jacobi sweeps over all basis pairs and triples, coefficient symmetry,\n"
           "trivial center, ideal closure of every nonzero y in W equals W, enveloping algebra dimension.\n";
  }
  if (topic == "star") {
    return "L* over a ground set {0..N-1}: basis x and z_A for z in {v(0..n-1), w} and nonempty A.\n"
           "z_A y_B = (z y)_{A ⊔ B}, zero unless A and B are disjoint; z_A x = (z x)_A; x x = 0.\n"
           "The truncation has dimension (2^N - 1)(n + 1) + 1.\n"
           "Suite star: ad(x)^2 = 0, ad(x) ad(y) ad(x) = 0, alternating and Jacobi laws,\n"
           "and nilpotency class of finitely generated subalgebras against 2k (k non-x generators).\n";
  }
  if (topic == "group") {
    return "G is generated by the involutions 1 + ad(y) for basis elements y of L*.\n"
           "Commutators [g, h] = g^-1 h^-1 g h; for basis a, b: [1+ad a, 1+ad b] = 1 + ad(a b).\n"
           "Every word collects to (1+ad x)^e r_0 ... r_{n-1} s with r_i products of 1+ad v(i)_A\n"
           "and s a product of 1+ad w_A.\n"
           "Suite group: the five commutator relations between x, v(i)_A and w_B as matrix identities,\n"
           "and realize(word) == realize(collect(word)) with collection idempotent.\n";
  }
  if (topic == "engel") {
    return "Claim: 1 + ad(x) is a left 3-Engel element, [(1+ad x)^g, 1+ad x, 1+ad x] = 1 for every g in G.\n"
           "Suite engel: seeded random words g of length 1..12, checked by dense matrices on the truncation.\n";
  }
  if (topic == "witness") {
    return "Block pattern: w_{0}, then for t = 0..m the letter x followed by w_{tn+1}, ..., w_{(t+1)n}.\n"
           "The left-normed commutator of these generators equals 1 + ad(w_B), B = {0, 1, ..., (m+1)n},\n"
           "so the normal closure of 1 + ad(x) has a nonvanishing commutator of every tested weight.\n"
           "Suite witness: structured evaluation (m <= 3) and a dense cross-check of every prefix when it fits.\n";
  }
  if (topic == "class-bound") {
    return "Bound: r conjugates of 1 + ad(x) generate a nilpotent group of class at most 4r+1.\n"
           "Route: write each conjugate as 1 + T_i; the associative algebra Q generated by the T_i\n"
           "satisfies Q^{4r+1} = 0, so every commutator of weight 4r+2 in the conjugates is trivial.\n"
           "Suite class-bound: closes the span of products of the T_i on the truncation, reports the\n"
           "measured index against 4r+1, and evaluates random weight-(4r+2) commutators.\n";
  }
  if (topic == "sandwich") {
    return "Superfixed operators e^(i1..ir) with product e^(i) f^(j) = prod C(i_k + j_k, i_k) (e f)^(i + j).\n"
           "Generators f_(i,k) = e_i in coordinate k with degree i; e_1..e_n = ad(v(0..n-1)), e_{n+1} = ad(w).\n"
           "Suite sandwich: binomial vanishing above n+1, short products e_i e_j = 0, the degree window\n"
           "n <= i+j <= n+1 for nonzero f products, the F and Q nilpotency indices against 4r and 4r+1,\n"
           "and symbolic products cross-checked against concrete operators on a truncation.\n";
  }
  throw UsageError("unknown topic '" + std::string(topic) + "'");
}

}  // namespace engel::lab
