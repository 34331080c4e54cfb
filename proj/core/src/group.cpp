#include "engel/group.hpp"

#include <algorithm>
#include <bit>
#include <deque>

#include "engel/gf2.hpp"
#include "engel/rng.hpp"

namespace engel::group {

namespace {

constexpr std::uint64_t kCollectionStepCap = 50'000'000;

void require_dim(const StarAlgebra& alg, std::uint64_t max_dim) {
  if (alg.dim() > max_dim) {
    throw ResourceCapError("truncation dimension " + std::to_string(alg.dim()) + " exceeds the matrix cap " +
                           std::to_string(max_dim));
  }
}

/// Position of b * y for each basis position b, or -1.
std::vector<std::int64_t> product_targets(const StarAlgebra& alg, StarIndex y) {
  const std::uint64_t d = alg.dim();
  std::vector<std::int64_t> out(d, -1);
  for (std::uint64_t p = 0; p < d; ++p) {
    if (auto prod = alg.basis_product(alg.index_at(p), y)) out[p] = static_cast<std::int64_t>(alg.position(*prod));
  }
  return out;
}

/// m <- m * (1 + ad(y)) for a basis element y; ad(y) has at most one entry per row.
void right_multiply_generator(gf2::BitMatrix& m, const std::vector<std::int64_t>& targets) {
  std::vector<std::size_t> flips;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    flips.clear();
    auto row = m.row(r);
    for (std::size_t w = 0; w < row.size(); ++w) {
      for (gf2::Word bits = row[w]; bits != 0; bits &= bits - 1) {
        const std::int64_t t = targets[w * gf2::kWordBits + static_cast<std::size_t>(std::countr_zero(bits))];
        if (t >= 0) flips.push_back(static_cast<std::size_t>(t));
      }
    }
    for (std::size_t c : flips) m.flip(r, c);
  }
}

int rank_of(const StarAlgebra& alg, StarIndex g) { return alg.is_x(g) ? -1 : static_cast<int>(g.slot); }

}  // namespace

std::string format_word(const StarAlgebra& alg, const GroupWord& word) {
  std::string out;
  for (const auto& g : word.letters) {
    if (!out.empty()) out += ' ';
    out += alg.format(g);
  }
  return out;
}

GroupWord parse_word(const StarAlgebra& alg, std::string_view text) {
  GroupWord word;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ' ') {
      ++pos;
      continue;
    }
    const std::size_t end = std::min(text.find(' ', pos), text.size());
    word.letters.push_back(alg.parse_index(text.substr(pos, end - pos)));
    pos = end;
  }
  return word;
}

GroupWord random_word(const StarAlgebra& alg, std::size_t length, std::uint64_t seed) {
  Rng rng(seed);
  GroupWord word;
  const std::uint64_t subsets = alg.ground().nonempty_subsets();
  for (std::size_t k = 0; k < length; ++k) {
    switch (rng.below(3)) {
      case 0:
        word.letters.push_back(alg.x());
        break;
      case 1: {
        const auto i = static_cast<unsigned>(rng.below(alg.n()));
        word.letters.push_back(alg.v(i, {1 + rng.below(subsets)}));
        break;
      }
      default:
        word.letters.push_back(alg.w({1 + rng.below(subsets)}));
        break;
    }
  }
  return word;
}

bool UnipotentOp::is_involution() const { return multiply(matrix_, matrix_).is_identity(); }

bool UnipotentOp::is_unipotent() const {
  gf2::BitMatrix t = matrix_ ^ gf2::BitMatrix::identity(dim());
  gf2::BitMatrix power = t;
  for (std::size_t k = 0; k <= dim(); ++k) {
    if (power.is_zero()) return true;
    power = multiply(power, t);
  }
  return false;
}

UnipotentOp UnipotentOp::inverse() const {
  if (is_involution()) return *this;
  const gf2::BitMatrix id = gf2::BitMatrix::identity(dim());
  const gf2::BitMatrix t = matrix_ ^ id;
  gf2::BitMatrix sum = id;
  gf2::BitMatrix power = t;
  for (std::size_t k = 0; k <= dim(); ++k) {
    if (power.is_zero()) return UnipotentOp(std::move(sum));
    sum ^= power;
    power = multiply(power, t);
  }
  throw std::domain_error("UnipotentOp::inverse: operator is not unipotent");
}

UnipotentOp operator*(const UnipotentOp& a, const UnipotentOp& b) { return UnipotentOp(multiply(a.matrix_, b.matrix_)); }

UnipotentOp generator_matrix(const StarAlgebra& alg, const StarElement& y, std::uint64_t max_dim) {
  require_dim(alg, max_dim);
  alg.require_element(y);
  gf2::BitMatrix m = gf2::BitMatrix::identity(alg.dim());
  for (const auto& t : y.terms()) {
    const auto targets = product_targets(alg, t);
    for (std::size_t p = 0; p < targets.size(); ++p) {
      if (targets[p] >= 0) m.flip(p, static_cast<std::size_t>(targets[p]));
    }
  }
  return UnipotentOp(std::move(m));
}

UnipotentOp realize(const StarAlgebra& alg, const GroupWord& word, std::uint64_t max_dim) {
  require_dim(alg, max_dim);
  gf2::BitMatrix m = gf2::BitMatrix::identity(alg.dim());
  for (const auto& g : word.letters) {
    alg.require_index(g);
    right_multiply_generator(m, product_targets(alg, g));
  }
  return UnipotentOp(std::move(m));
}

UnipotentOp commutator(const UnipotentOp& g, const UnipotentOp& h) {
  if (g.dim() != h.dim()) throw std::invalid_argument("commutator: dimension mismatch");
  return g.inverse() * h.inverse() * g * h;
}

UnipotentOp conjugate(const UnipotentOp& a, const UnipotentOp& g) { return g.inverse() * a * g; }

UnipotentOp left_normed_commutator(std::span<const UnipotentOp> entries) {
  if (entries.empty()) throw std::invalid_argument("left_normed_commutator: no entries");
  UnipotentOp c = entries.front();
  for (std::size_t k = 1; k < entries.size(); ++k) c = commutator(c, entries[k]);
  return c;
}

std::optional<StarIndex> structured_commutator(const StarAlgebra& alg, StarIndex a, StarIndex b) {
  // The correction terms ad(a)ad(b)ad(a) and ad(b)ad(a)ad(b) vanish for basis elements: a subscript
  // would repeat, or ad(x) ad(y) ad(x) = 0.
  return alg.basis_product(a, b);
}

NormalForm collect_normal_form(const StarAlgebra& alg, const GroupWord& word) {
  const unsigned n = alg.n();
  // blocks[0..n-1] hold V_i subsets, blocks[n] the W subsets; each sorted, duplicates cancelled.
  std::vector<std::vector<std::uint64_t>> blocks(n + 1);
  bool epsilon = false;
  std::deque<StarIndex> pending(word.letters.begin(), word.letters.end());
  std::vector<StarIndex> moved;

  for (std::uint64_t steps = 0; !pending.empty(); ++steps) {
    if (steps > kCollectionStepCap) throw std::runtime_error("collect_normal_form: step cap exceeded");
    const StarIndex g = pending.front();
    pending.pop_front();
    alg.require_index(g);
    const int r = rank_of(alg, g);

    // T g = g * prod_t (t [t, g]) for the letters T of higher rank.
    moved.clear();
    for (unsigned b = static_cast<unsigned>(r + 1); b <= n; ++b) {
      for (std::uint64_t set : blocks[b]) {
        const StarIndex t{static_cast<std::uint8_t>(b), set};
        moved.push_back(t);
        if (auto c = structured_commutator(alg, t, g)) moved.push_back(*c);
      }
      blocks[b].clear();
    }
    if (r < 0) {
      epsilon = !epsilon;
    } else {
      auto& block = blocks[static_cast<unsigned>(r)];
      auto it = std::lower_bound(block.begin(), block.end(), g.set);
      if (it != block.end() && *it == g.set) {
        block.erase(it);
      } else {
        block.insert(it, g.set);
      }
    }
    pending.insert(pending.begin(), moved.begin(), moved.end());
  }

  NormalForm nf;
  nf.epsilon = epsilon;
  nf.v_blocks.resize(n);
  for (unsigned i = 0; i < n; ++i) {
    for (std::uint64_t s : blocks[i]) nf.v_blocks[i].push_back({s});
  }
  for (std::uint64_t s : blocks[n]) nf.w_block.push_back({s});
  return nf;
}

GroupWord normal_form_word(const StarAlgebra& alg, const NormalForm& nf) {
  GroupWord word;
  if (nf.epsilon) word.letters.push_back(alg.x());
  for (unsigned i = 0; i < nf.v_blocks.size(); ++i) {
    for (auto s : nf.v_blocks[i]) word.letters.push_back(alg.v(i, s));
  }
  for (auto s : nf.w_block) word.letters.push_back(alg.w(s));
  return word;
}

nlohmann::json normal_form_to_json(const NormalForm& nf) {
  auto subsets = [](const std::vector<SubsetCode>& block) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto s : block) arr.push_back(s.elements());
    return arr;
  };
  nlohmann::json v = nlohmann::json::array();
  for (const auto& block : nf.v_blocks) v.push_back(subsets(block));
  return {{"epsilon", nf.epsilon ? 1 : 0}, {"v_blocks", v}, {"w_block", subsets(nf.w_block)}};
}

NormalForm normal_form_from_json(const nlohmann::json& j, const lie::LParams& params) {
  auto subsets = [](const nlohmann::json& arr) {
    std::vector<SubsetCode> out;
    for (const auto& s : arr) {
      SubsetCode code;
      for (unsigned e : s.get<std::vector<unsigned>>()) {
        if (e >= 64) throw std::invalid_argument("normal form: subset element out of range");
        code.bits |= std::uint64_t{1} << e;
      }
      if (code.empty()) throw std::invalid_argument("normal form: empty subset");
      out.push_back(code);
    }
    if (!std::is_sorted(out.begin(), out.end()) || std::adjacent_find(out.begin(), out.end()) != out.end()) {
      throw std::invalid_argument("normal form: block is not a sorted set");
    }
    return out;
  };
  NormalForm nf;
  const int eps = j.at("epsilon").get<int>();
  if (eps != 0 && eps != 1) throw std::invalid_argument("normal form: epsilon must be 0 or 1");
  nf.epsilon = eps == 1;
  const auto& v = j.at("v_blocks");
  if (v.size() != params.n()) throw std::invalid_argument("normal form: expected n v-blocks");
  for (const auto& block : v) nf.v_blocks.push_back(subsets(block));
  nf.w_block = subsets(j.at("w_block"));
  return nf;
}

StarElement conjugate_expansion(const lie::LParams& params, std::span<const SubsetCode> sets) {
  const unsigned n = params.n();
  const std::size_t k = sets.size();
  if (k > 24) throw std::invalid_argument("conjugate_expansion: too many sets");
  std::uint64_t seen = 0;
  for (auto s : sets) {
    if (s.empty()) throw std::invalid_argument("conjugate_expansion: empty set");
    if (!s.disjoint({seen})) throw std::invalid_argument("conjugate_expansion: sets are not pairwise disjoint");
    seen |= s.bits;
  }
  // Each d-element subcollection contributes v(d-1) of its union (d <= n) or w (d = n+1).
  std::vector<StarIndex> terms{{static_cast<std::uint8_t>(n + 1), 0}};
  for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << k); ++pick) {
    const int d = std::popcount(pick);
    if (d > static_cast<int>(n + 1)) continue;
    std::uint64_t u = 0;
    for (std::uint64_t b = pick; b != 0; b &= b - 1) u |= sets[static_cast<std::size_t>(std::countr_zero(b))].bits;
    terms.push_back({static_cast<std::uint8_t>(d - 1), u});
  }
  return StarElement::from_terms(std::move(terms));
}

bool engel3_check(const StarAlgebra& alg, const GroupWord& word, std::uint64_t max_dim) {
  const UnipotentOp a = generator_matrix(alg, StarElement(alg.x()), max_dim);
  const UnipotentOp g = realize(alg, word, max_dim);
  GroupWord reversed{{word.letters.rbegin(), word.letters.rend()}};
  const UnipotentOp g_inv = realize(alg, reversed, max_dim);
  const UnipotentOp ag = g_inv * a * g;
  const UnipotentOp c1 = commutator(ag, a);
  const UnipotentOp c2 = commutator(c1, a);
  return c2.is_identity();
}

unsigned witness_ground_size(const lie::LParams& params) { return (params.m() + 1) * params.n() + 1; }

std::vector<StarIndex> witness_pattern(const lie::LParams& params) {
  const unsigned n = params.n();
  const unsigned size = witness_ground_size(params);
  if (size > gf2::GroundSet::kMaxSize) {
    throw ResourceCapError("witness needs " + std::to_string(size) + " ground elements; subsets are capped at 64");
  }
  auto w = [&](unsigned i) { return StarIndex{static_cast<std::uint8_t>(n), std::uint64_t{1} << i}; };
  const StarIndex x{static_cast<std::uint8_t>(n + 1), 0};
  std::vector<StarIndex> out{w(0)};
  for (unsigned t = 0; t <= params.m(); ++t) {
    out.push_back(x);
    for (unsigned i = t * n + 1; i <= (t + 1) * n; ++i) out.push_back(w(i));
  }
  return out;
}

bool WitnessResult::proper_prefixes_nontrivial() const {
  return std::all_of(prefix_values.begin(), prefix_values.end() - 1, [](const auto& v) { return v.has_value(); });
}

WitnessResult witness_commutator(const lie::LParams& params) {
  const StarAlgebra alg(params, gf2::GroundSet(witness_ground_size(params)));
  WitnessResult res;
  res.entries = witness_pattern(params);
  res.expected = alg.w({alg.ground().mask()});
  std::optional<StarIndex> value = res.entries.front();
  res.prefix_values.push_back(value);
  for (std::size_t k = 1; k < res.entries.size(); ++k) {
    if (value) value = structured_commutator(alg, *value, res.entries[k]);
    res.prefix_values.push_back(value);
  }
  return res;
}

std::vector<UnipotentOp> witness_commutator_dense(const lie::LParams& params, std::uint64_t max_dim) {
  const StarAlgebra alg(params, gf2::GroundSet(witness_ground_size(params)));
  require_dim(alg, max_dim);
  const auto entries = witness_pattern(params);
  std::vector<UnipotentOp> prefixes;
  UnipotentOp c = generator_matrix(alg, StarElement(entries.front()), max_dim);
  prefixes.push_back(c);
  for (std::size_t k = 1; k < entries.size(); ++k) {
    c = commutator(c, generator_matrix(alg, StarElement(entries[k]), max_dim));
    prefixes.push_back(c);
  }
  return prefixes;
}

GroupWord conjugate_word(const StarAlgebra& alg, std::span<const SubsetCode> conjugator) {
  GroupWord word;
  for (auto s : conjugator) word.letters.push_back(alg.w(s));
  word.letters.push_back(alg.x());
  for (auto it = conjugator.rbegin(); it != conjugator.rend(); ++it) word.letters.push_back(alg.w(*it));
  return word;
}

ClassBoundResult conjugates_class_bound(const StarAlgebra& alg, const std::vector<std::vector<SubsetCode>>& conjugators,
                                        unsigned commutator_samples, std::uint64_t seed, std::uint64_t max_dim) {
  const auto r = static_cast<unsigned>(conjugators.size());
  if (r == 0) throw std::invalid_argument("conjugates_class_bound: need at least one conjugate");
  require_dim(alg, max_dim);
  const std::size_t d = alg.dim();
  const gf2::BitMatrix id = gf2::BitMatrix::identity(d);

  std::vector<UnipotentOp> conjugates;
  std::vector<gf2::BitMatrix> nilpotent_parts;
  for (const auto& c : conjugators) {
    conjugates.push_back(realize(alg, conjugate_word(alg, c), max_dim));
    nilpotent_parts.push_back(conjugates.back().matrix() ^ id);
  }

  ClassBoundResult res;
  res.bound = 4 * r + 1;

  // Level q holds the span of all q-fold products of the T_i; the index is the first empty level.
  std::vector<gf2::BitMatrix> level;
  {
    gf2::Gf2Span span(d * d);
    for (const auto& t : nilpotent_parts) span.insert(t.flatten());
    for (const auto& v : span.basis()) level.push_back(gf2::BitMatrix::unflatten(v, d, d));
  }
  unsigned q = 1;
  while (!level.empty()) {
    if (q > d + 1) throw std::runtime_error("conjugates_class_bound: products do not vanish");
    gf2::Gf2Span span(d * d);
    for (const auto& p : level) {
      for (const auto& t : nilpotent_parts) {
        gf2::BitMatrix prod = multiply(p, t);
        if (!prod.is_zero()) span.insert(prod.flatten());
      }
    }
    level.clear();
    for (const auto& v : span.basis()) level.push_back(gf2::BitMatrix::unflatten(v, d, d));
    ++q;
  }
  res.algebra_nilpotency_index = q;

  const unsigned weight = 4 * r + 2;
  res.commutator_checks.seed = seed;
  for (unsigned s = 0; s < commutator_samples; ++s) {
    Rng rng(mix_seed(seed, s));
    std::vector<UnipotentOp> entries;
    std::string picks;
    for (unsigned k = 0; k < weight; ++k) {
      const auto i = rng.below(r);
      entries.push_back(conjugates[i]);
      picks += (k ? "," : "") + std::to_string(i + 1);
    }
    const bool trivial = left_normed_commutator(entries).is_identity();
    res.commutator_checks.check(trivial, [&] {
      return Failure{"weight" + std::to_string(weight) + "/" + std::to_string(s), "conjugates " + picks, "1",
                     "non-identity"};
    });
  }
  return res;
}

VerificationReport check_commutator_relations(const StarAlgebra& alg, unsigned samples, std::uint64_t seed,
                                              std::uint64_t max_dim) {
  VerificationReport rep("group.commutator_relations");
  rep.seed = seed;
  const unsigned n = alg.n();
  const UnipotentOp one = UnipotentOp::identity(alg.dim());
  const StarIndex x = alg.x();
  auto gen = [&](StarIndex y) { return generator_matrix(alg, StarElement(y), max_dim); };
  // Right-hand sides come straight from the relation formulas, not from the star product table.
  auto rhs = [&](std::optional<StarIndex> y) { return y ? gen(*y) : one; };
  auto check = [&](const std::string& rel, StarIndex a, StarIndex b, std::optional<StarIndex> expected) {
    const UnipotentOp lhs = commutator(gen(a), gen(b));
    rep.check(lhs == rhs(expected), [&] {
      return Failure{rel, "[1+ad(" + alg.format(a) + "), 1+ad(" + alg.format(b) + ")]",
                     expected ? "1+ad(" + alg.format(*expected) + ")" : "1", "mismatch"};
    });
  };

  auto run_pair = [&](SubsetCode a, SubsetCode b) {
    const auto u = gf2::modified_union(alg.ground(), a, b);
    check("w-x", alg.w(a), x, alg.v(0, a));
    for (unsigned i = 0; i < n; ++i) check("v-x", alg.v(i, a), x, std::nullopt);
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned j = 0; j < n; ++j) {
        std::optional<StarIndex> e;
        if (u && gf2::binom_parity(j + 1, n - i).odd()) e = alg.v(alg.base().oplus(i, j), *u);
        check("v-v", alg.v(i, a), alg.v(j, b), e);
      }
    }
    for (unsigned i = 0; i + 1 < n; ++i) {
      check("v-w", alg.v(i, a), alg.w(b), u ? std::optional(alg.v(i + 1, *u)) : std::nullopt);
    }
    check("last-v-w", alg.v(n - 1, a), alg.w(b), u ? std::optional(alg.w(*u)) : std::nullopt);
  };

  const unsigned size = alg.ground().size();
  for (unsigned i = 0; i < size; ++i) {
    for (unsigned j = 0; j < size; ++j) run_pair(SubsetCode::of({i}), SubsetCode::of({j}));
  }
  const std::uint64_t subsets = alg.ground().nonempty_subsets();
  for (unsigned s = 0; s < samples; ++s) {
    Rng rng(mix_seed(seed, s));
    const SubsetCode a{1 + rng.below(subsets)};
    const SubsetCode b{1 + rng.below(subsets)};
    run_pair(a, b);
  }
  return rep;
}

}  // namespace engel::group
