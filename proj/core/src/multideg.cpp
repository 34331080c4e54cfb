#include "engel/multideg.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "engel/gf2.hpp"
#include "engel/group.hpp"
#include "engel/rng.hpp"

namespace engel::multideg {

namespace {

gf2::BitVector flatten(const LMatrix& m) {
  const unsigned d = m.dim();
  gf2::BitVector v(static_cast<std::size_t>(d) * d);
  for (unsigned r = 0; r < d; ++r) {
    for (std::uint64_t bits = m.row(r); bits != 0; bits &= bits - 1) {
      v.set(static_cast<std::size_t>(r) * d + static_cast<unsigned>(std::countr_zero(bits)));
    }
  }
  return v;
}

LMatrix unflatten(const gf2::BitVector& v, unsigned d) {
  LMatrix m(d);
  for (unsigned r = 0; r < d; ++r) {
    std::uint64_t row = 0;
    for (unsigned c = 0; c < d; ++c) {
      if (v.test(static_cast<std::size_t>(r) * d + c)) row |= std::uint64_t{1} << c;
    }
    m.set_row(r, row);
  }
  return m;
}

/// prod_k C(a_k + b_k, a_k) mod 2.
bool coefficient_odd(const Degree& a, const Degree& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!gf2::binom_odd(a[k] + b[k], a[k])) return false;
  }
  return true;
}

Degree add(const Degree& a, const Degree& b) {
  Degree out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = static_cast<std::uint8_t>(a[k] + b[k]);
  return out;
}

const std::pair<const Degree, LMatrix>& single_term(const MultiDegElement& g) {
  if (g.terms().size() != 1) throw std::invalid_argument("nilpotency_index: generators must be homogeneous");
  return *g.terms().begin();
}

}  // namespace

std::string format_degree(const Degree& d) {
  std::string out = "(";
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(d[k]);
  }
  return out + ")";
}

MultiDegElement MultiDegElement::term(const LMatrix& op, Degree deg) {
  MultiDegElement e(static_cast<unsigned>(deg.size()));
  e.add_term(op, deg);
  return e;
}

void MultiDegElement::add_term(const LMatrix& op, const Degree& deg) {
  if (deg.size() != r_) throw std::invalid_argument("MultiDegElement: degree length differs from r");
  if (op.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(deg, op);
  if (!inserted) {
    it->second += op;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiDegElement& MultiDegElement::operator+=(const MultiDegElement& o) {
  if (o.r_ != r_) throw std::invalid_argument("MultiDegElement: r mismatch");
  for (const auto& [deg, op] : o.terms_) add_term(op, deg);
  return *this;
}

MultiDegElement multideg_product(const MultiDegElement& a, const MultiDegElement& b) {
  if (a.r() != b.r()) throw std::invalid_argument("multideg_product: r mismatch");
  MultiDegElement out(a.r());
  for (const auto& [da, ea] : a.terms()) {
    for (const auto& [db, eb] : b.terms()) {
      if (!coefficient_odd(da, db)) continue;
      out.add_term(ea * eb, add(da, db));
    }
  }
  return out;
}

Superfix::Superfix(lie::LParams params, unsigned r) : base_(params), r_(r) {
  if (r == 0) throw std::invalid_argument("Superfix: r must be positive");
  if (r > 255) throw std::invalid_argument("Superfix: r too large");
}

LMatrix Superfix::e(unsigned i) const {
  if (i == 0 || i > n() + 1) throw std::out_of_range("e_i: index out of range");
  const lie::LBasis b = i <= n() ? base_.v(i - 1) : base_.w();
  return base_.ad(lie::LElement::basis(b));
}

Degree Superfix::unit(unsigned k, unsigned value) const {
  if (k == 0 || k > r_) throw std::out_of_range("coordinate out of range");
  Degree d(r_, 0);
  d[k - 1] = static_cast<std::uint8_t>(value);
  return d;
}

MultiDegElement Superfix::f(unsigned i, unsigned k) const { return MultiDegElement::term(e(i), unit(k, i)); }

MultiDegElement Superfix::ad_x() const {
  return MultiDegElement::term(base_.ad(lie::LElement::basis(base_.x())), Degree(r_, 0));
}

std::vector<MultiDegElement> Superfix::f_generators() const {
  std::vector<MultiDegElement> out;
  for (unsigned k = 1; k <= r_; ++k) {
    for (unsigned i = 1; i <= n() + 1; ++i) out.push_back(f(i, k));
  }
  return out;
}

std::vector<MultiDegElement> Superfix::q_generators() const {
  auto out = f_generators();
  out.insert(out.begin(), ad_x());
  return out;
}

IndexResult nilpotency_index(std::span<const MultiDegElement> generators, std::size_t basis_cap) {
  IndexResult res;
  if (generators.empty()) return res;
  const unsigned dim = single_term(generators.front()).second.dim();

  // Products of homogeneous generators are homogeneous, so each level is graded by degree.
  using Level = std::map<Degree, std::vector<LMatrix>>;
  auto to_level = [&](std::map<Degree, gf2::Gf2Span>& spans) {
    Level level;
    for (auto& [deg, span] : spans) {
      auto& basis = level[deg];
      for (const auto& v : span.basis()) basis.push_back(unflatten(v, dim));
      if (basis.empty()) level.erase(deg);
    }
    return level;
  };
  auto level_size = [](const Level& level) {
    std::size_t total = 0;
    for (const auto& [deg, basis] : level) total += basis.size();
    return total;
  };

  std::map<Degree, gf2::Gf2Span> spans;
  for (const auto& g : generators) {
    const auto& [deg, op] = single_term(g);
    spans.try_emplace(deg, static_cast<std::size_t>(dim) * dim).first->second.insert(flatten(op));
  }
  Level level = to_level(spans);
  unsigned index = 1;
  while (!level.empty()) {
    res.level_dims.push_back(level_size(level));
    if (res.level_dims.back() > basis_cap) throw std::runtime_error("nilpotency_index: basis cap exceeded");
    spans.clear();
    for (const auto& [deg, basis] : level) {
      for (const auto& g : generators) {
        const auto& [gdeg, gop] = single_term(g);
        if (!coefficient_odd(deg, gdeg)) continue;
        const Degree next = add(deg, gdeg);
        for (const auto& p : basis) {
          const LMatrix prod = p * gop;
          if (!prod.is_zero()) spans.try_emplace(next, static_cast<std::size_t>(dim) * dim).first->second.insert(flatten(prod));
        }
      }
    }
    level = to_level(spans);
    ++index;
  }
  res.index = index;
  return res;
}

IndexResult nilpotency_index_F(const lie::LParams& params, unsigned r) {
  const Superfix sf(params, r);
  const auto gens = sf.f_generators();
  IndexResult res = nilpotency_index(gens);
  res.bound = 4 * r;
  return res;
}

QIndexResult nilpotency_index_Q(const lie::LParams& params, unsigned r) {
  const Superfix sf(params, r);
  const auto gens = sf.q_generators();
  QIndexResult res;
  static_cast<IndexResult&>(res) = nilpotency_index(gens);
  res.bound = 4 * r + 1;

  const unsigned n = params.n();
  const MultiDegElement adx = sf.ad_x();
  res.rewriting_identity_holds = true;
  res.rewriting_identity_degree_one_holds = true;
  for (unsigned k = 1; k <= r; ++k) {
    const MultiDegElement lhs = multideg_product(adx, sf.f(n + 1, k));
    const MultiDegElement commuted = multideg_product(sf.f(n + 1, k), adx);
    const MultiDegElement top = MultiDegElement::term(sf.e(1), sf.unit(k, n + 1));
    if (lhs != commuted + top) res.rewriting_identity_holds = false;
    if (lhs != commuted + sf.f(1, k)) res.rewriting_identity_degree_one_holds = false;
  }
  res.alternating_products_vanish = true;
  for (unsigned k1 = 1; k1 <= r; ++k1) {
    for (unsigned k2 = 1; k2 <= r; ++k2) {
      const auto p = multideg_product(multideg_product(multideg_product(adx, sf.f(n + 1, k1)), adx), sf.f(n + 1, k2));
      const auto q = multideg_product(multideg_product(multideg_product(sf.f(n + 1, k1), adx), sf.f(n + 1, k2)), adx);
      if (!p.is_zero() || !q.is_zero()) res.alternating_products_vanish = false;
    }
  }
  return res;
}

VerificationReport check_binomial_vanishing(const lie::LParams& params) {
  VerificationReport rep("sandwich.binomial_vanishing");
  const unsigned n = params.n();
  for (unsigned i = 0; i <= n + 1; ++i) {
    for (unsigned j = 0; j <= n + 1; ++j) {
      if (i + j < n + 2) continue;
      const bool odd = gf2::binom_parity(i + j, i).odd();
      rep.check(!odd, [&] {
        return Failure{"C(" + std::to_string(i + j) + "," + std::to_string(i) + ")",
                       "i=" + std::to_string(i) + " j=" + std::to_string(j), "0", "1"};
      });
    }
  }
  if (rep.cases_total == 0) rep.vacuous();
  return rep;
}

VerificationReport check_short_products_vanish(const lie::LParams& params) {
  VerificationReport rep("sandwich.short_products");
  const Superfix sf(params, 1);
  const unsigned n = params.n();
  for (unsigned i = 1; i <= n; ++i) {
    for (unsigned j = 1; j <= n; ++j) {
      if (i + j > n - 1) continue;
      const bool zero = (sf.e(i) * sf.e(j)).is_zero();
      rep.check(zero, [&] {
        return Failure{"e" + std::to_string(i) + "*e" + std::to_string(j), "i+j=" + std::to_string(i + j), "0",
                       "nonzero matrix"};
      });
    }
  }
  if (rep.cases_total == 0) rep.vacuous();
  return rep;
}

VerificationReport check_product_degree_window(const lie::LParams& params) {
  VerificationReport rep("sandwich.degree_window");
  const Superfix sf(params, 2);
  const unsigned n = params.n();
  std::uint64_t same_fail = 0;
  std::uint64_t distinct_fail = 0;
  for (unsigned s : {1U, 2U}) {
    for (unsigned i = 1; i <= n; ++i) {
      for (unsigned j = 1; j <= n; ++j) {
        const bool nonzero = !multideg_product(sf.f(i, 1), sf.f(j, s)).is_zero();
        const bool ok = !nonzero || (n <= i + j && i + j <= n + 1);
        if (!ok) ++(s == 1 ? same_fail : distinct_fail);
        rep.check(ok, [&] {
          return Failure{"f(" + std::to_string(i) + ",1)*f(" + std::to_string(j) + "," + std::to_string(s) + ")",
                         "i+j=" + std::to_string(i + j), "zero unless n <= i+j <= n+1", "nonzero"};
        });
      }
    }
  }
  rep.measured_values["failures_same_coordinate"] = same_fail;
  rep.measured_values["failures_distinct_coordinates"] = distinct_fail;
  return rep;
}

ConcreteRealization::ConcreteRealization(lie::LParams params, std::vector<unsigned> block_sizes)
    : alg_(params, gf2::GroundSet(std::max(1U, std::accumulate(block_sizes.begin(), block_sizes.end(), 0U)))) {
  unsigned next = 0;
  for (unsigned size : block_sizes) {
    if (size == 0) throw std::invalid_argument("ConcreteRealization: empty block");
    gf2::SubsetCode b;
    for (unsigned k = 0; k < size; ++k) b.bits |= std::uint64_t{1} << (next + k);
    next += size;
    blocks_.push_back(b);
  }
}

gf2::BitMatrix ConcreteRealization::e_of(const LMatrix& e, gf2::SubsetCode b) const {
  const std::uint64_t d = alg_.dim();
  const unsigned n = alg_.n();
  gf2::BitMatrix m(d, d);
  for (std::uint64_t p = 0; p < d; ++p) {
    const star::StarIndex s = alg_.index_at(p);
    std::uint64_t set;
    if (alg_.is_x(s)) {
      if (b.empty()) continue;  // (x e)_∅ = 0
      set = b.bits;
    } else {
      if (!s.subset().disjoint(b)) continue;
      set = s.set | b.bits;
    }
    const std::uint64_t image = e.row(s.slot);
    if ((image >> (n + 1)) & 1U) throw std::invalid_argument("e_of: operator does not map into W");
    for (std::uint64_t bits = image; bits != 0; bits &= bits - 1) {
      m.flip(p, alg_.position({static_cast<std::uint8_t>(std::countr_zero(bits)), set}));
    }
  }
  return m;
}

gf2::BitMatrix ConcreteRealization::superfix(const LMatrix& e, const Degree& deg) const {
  if (deg.size() != blocks_.size()) throw std::invalid_argument("superfix: degree length differs from block count");
  const std::uint64_t d = alg_.dim();
  gf2::BitMatrix sum(d, d);
  // Enumerate B_1 ⊆ A_1, ..., B_r ⊆ A_r with the prescribed sizes.
  std::vector<std::vector<std::uint64_t>> choices(blocks_.size());
  for (std::size_t l = 0; l < blocks_.size(); ++l) {
    const std::uint64_t block = blocks_[l].bits;
    for (std::uint64_t sub = block;; sub = (sub - 1) & block) {
      if (std::popcount(sub) == deg[l]) choices[l].push_back(sub);
      if (sub == 0) break;
    }
    if (choices[l].empty()) return sum;
  }
  std::vector<std::size_t> idx(blocks_.size(), 0);
  for (;;) {
    std::uint64_t u = 0;
    for (std::size_t l = 0; l < blocks_.size(); ++l) u |= choices[l][idx[l]];
    sum ^= e_of(e, {u});
    std::size_t l = 0;
    while (l < idx.size() && ++idx[l] == choices[l].size()) idx[l++] = 0;
    if (l == idx.size()) break;
  }
  return sum;
}

gf2::BitMatrix ConcreteRealization::realize(const MultiDegElement& a) const {
  const std::uint64_t d = alg_.dim();
  gf2::BitMatrix sum(d, d);
  for (const auto& [deg, op] : a.terms()) sum ^= superfix(op, deg);
  return sum;
}

VerificationReport cross_validate_concrete(const lie::LParams& params, const std::vector<unsigned>& set_sizes,
                                           unsigned ground_size, unsigned pairs, std::uint64_t seed) {
  if (set_sizes.empty()) throw std::invalid_argument("cross_validate_concrete: need at least one block");
  if (std::accumulate(set_sizes.begin(), set_sizes.end(), 0U) != ground_size) {
    throw std::invalid_argument("cross_validate_concrete: block sizes do not partition the ground set");
  }
  VerificationReport rep("sandwich.cross_validate");
  rep.seed = seed;
  const auto r = static_cast<unsigned>(set_sizes.size());
  const Superfix sf(params, r);
  const ConcreteRealization concrete(params, set_sizes);
  const auto& alg = concrete.algebra();
  const unsigned n = params.n();
  const std::uint64_t d = alg.dim();

  // (i) the conjugate expansion, one block at a time.
  for (unsigned k = 1; k <= r; ++k) {
    std::vector<gf2::SubsetCode> singletons;
    for (unsigned e : concrete.blocks()[k - 1].elements()) singletons.push_back(gf2::SubsetCode::of({e}));
    const auto conj = group::realize(alg, group::conjugate_word(alg, singletons));
    gf2::BitMatrix expected = gf2::BitMatrix::identity(d);
    expected ^= concrete.realize(sf.ad_x());
    for (unsigned i = 1; i <= n + 1; ++i) expected ^= concrete.realize(sf.f(i, k));
    rep.check(conj.matrix() == expected, [&] {
      return Failure{"expansion/block" + std::to_string(k), "|A_k|=" + std::to_string(set_sizes[k - 1]),
                     "1+ad(x)+sum f_(i,k)", "mismatch"};
    });
  }

  // (ii) symbolic product against composition of the concrete operators.
  const auto& base = sf.base();
  std::vector<LMatrix> gens;
  for (unsigned s = 0; s < base.dim(); ++s) gens.push_back(base.ad(lie::LElement::basis({static_cast<std::uint8_t>(s)})));
  const LMatrix adx = base.ad(lie::LElement::basis(base.x()));
  auto random_element = [&](Rng& rng) {
    MultiDegElement a(r);
    const auto terms = 1 + rng.below(3);
    for (std::uint64_t t = 0; t < terms; ++t) {
      Degree deg(r);
      bool positive = false;
      for (unsigned l = 0; l < r; ++l) {
        deg[l] = static_cast<std::uint8_t>(rng.below(set_sizes[l] + 1));
        positive = positive || deg[l] > 0;
      }
      LMatrix op = gens[rng.below(gens.size())];
      for (auto extra = rng.below(3); extra > 0; --extra) op = op * gens[rng.below(gens.size())];
      // Degree-zero terms must annihilate x, as ad(x) does; the product rule is stated for those.
      if (!positive) op = adx * op;
      a.add_term(op, deg);
    }
    return a;
  };
  {
    const auto xx = multideg_product(sf.ad_x(), sf.ad_x());
    const auto cx = concrete.realize(sf.ad_x());
    rep.check(xx.is_zero() && multiply(cx, cx).is_zero(), [&] {
      return Failure{"zero-degree/adx*adx", "(ad x,0)^2", "0 both paths", "nonzero"};
    });
  }
  for (unsigned s = 0; s < pairs; ++s) {
    Rng rng(mix_seed(seed, s));
    const MultiDegElement a = random_element(rng);
    const MultiDegElement b = random_element(rng);
    const auto symbolic = concrete.realize(multideg_product(a, b));
    const auto composed = multiply(concrete.realize(a), concrete.realize(b));
    rep.check(symbolic == composed, [&] {
      return Failure{"pair/" + std::to_string(s), std::to_string(a.terms().size()) + "x" + std::to_string(b.terms().size()) + " terms",
                     "symbolic == concrete", "mismatch"};
    });
  }
  return rep;
}

}  // namespace engel::multideg
