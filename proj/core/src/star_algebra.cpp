#include "engel/star_algebra.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <limits>
#include <stdexcept>

namespace engel::star {

StarElement StarElement::from_terms(std::vector<StarIndex> terms) {
  std::sort(terms.begin(), terms.end());
  StarElement out;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i;
    while (j < terms.size() && terms[j] == terms[i]) ++j;
    if ((j - i) % 2 == 1) out.terms_.push_back(terms[i]);
    i = j;
  }
  return out;
}

StarElement& StarElement::operator+=(const StarElement& o) {
  std::vector<StarIndex> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  std::set_symmetric_difference(terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
                                std::back_inserter(merged));
  terms_ = std::move(merged);
  return *this;
}

bool StarOperator::is_zero() const {
  return std::all_of(images_.begin(), images_.end(), [](const StarElement& e) { return e.is_zero(); });
}

StarElement StarOperator::apply(const StarAlgebra& alg, const StarElement& e) const {
  std::vector<StarIndex> acc;
  for (const auto& t : e.terms()) {
    const auto& img = images_.at(alg.position(t));
    acc.insert(acc.end(), img.terms().begin(), img.terms().end());
  }
  return StarElement::from_terms(std::move(acc));
}

StarOperator StarOperator::then(const StarAlgebra& alg, const StarOperator& next) const {
  if (next.dim() != dim()) throw std::invalid_argument("StarOperator dimension mismatch");
  std::vector<StarElement> out;
  out.reserve(images_.size());
  for (const auto& img : images_) out.push_back(next.apply(alg, img));
  return StarOperator(std::move(out));
}

StarOperator& StarOperator::operator+=(const StarOperator& o) {
  if (o.dim() != dim()) throw std::invalid_argument("StarOperator dimension mismatch");
  for (std::size_t p = 0; p < images_.size(); ++p) images_[p] += o.images_[p];
  return *this;
}

gf2::BitMatrix StarOperator::to_dense(const StarAlgebra& alg) const {
  gf2::BitMatrix m(images_.size(), images_.size());
  for (std::size_t p = 0; p < images_.size(); ++p) {
    for (const auto& t : images_[p].terms()) m.set(p, alg.position(t));
  }
  return m;
}

StarAlgebra::StarAlgebra(lie::LParams params, GroundSet ground) : base_(params), ground_(ground) {}

std::uint64_t StarAlgebra::dim() const {
  const std::uint64_t subsets = ground_.nonempty_subsets();
  const std::uint64_t per = n() + 1;
  if (subsets > (std::numeric_limits<std::uint64_t>::max() - 1) / per) return std::numeric_limits<std::uint64_t>::max();
  return subsets * per + 1;
}

StarIndex StarAlgebra::v(unsigned i, SubsetCode a) const {
  StarIndex s{static_cast<std::uint8_t>(i), a.bits};
  if (i >= n()) throw std::out_of_range("v index out of range");
  require_index(s);
  return s;
}

StarIndex StarAlgebra::w(SubsetCode a) const {
  StarIndex s{static_cast<std::uint8_t>(n()), a.bits};
  require_index(s);
  return s;
}

void StarAlgebra::require_index(StarIndex s) const {
  if (s.slot > n() + 1) throw std::invalid_argument("star index: bad slot");
  if (is_x(s)) {
    if (s.set != 0) throw std::invalid_argument("star index: x carries no subset");
    return;
  }
  if (s.set == 0) throw std::invalid_argument("star index: subset must be nonempty");
  if (!ground_.contains(s.set)) throw std::invalid_argument("star index: subset escapes the ground set");
}

void StarAlgebra::require_element(const StarElement& e) const {
  for (const auto& t : e.terms()) require_index(t);
}

std::uint64_t StarAlgebra::position(StarIndex s) const {
  if (is_x(s)) return 0;
  return 1 + static_cast<std::uint64_t>(s.slot) * ground_.nonempty_subsets() + (s.set - 1);
}

StarIndex StarAlgebra::index_at(std::uint64_t pos) const {
  if (pos == 0) return x();
  if (pos >= dim()) throw std::out_of_range("index_at: position out of range");
  const std::uint64_t per = ground_.nonempty_subsets();
  return {static_cast<std::uint8_t>((pos - 1) / per), (pos - 1) % per + 1};
}

std::optional<StarIndex> StarAlgebra::basis_product(StarIndex a, StarIndex b) const {
  const bool ax = is_x(a);
  const bool bx = is_x(b);
  if (ax && bx) return std::nullopt;
  std::uint64_t set;
  if (ax) {
    set = b.set;
  } else if (bx) {
    set = a.set;
  } else {
    if ((a.set & b.set) != 0) return std::nullopt;  // A ⊔ B annihilates
    set = a.set | b.set;
  }
  const int slot = base_.basis_product_slot({a.slot}, {b.slot});
  if (slot < 0) return std::nullopt;
  return StarIndex{static_cast<std::uint8_t>(slot), set};
}

StarElement StarAlgebra::multiply(const StarElement& a, const StarElement& b) const {
  require_element(a);
  require_element(b);
  std::vector<StarIndex> acc;
  for (const auto& s : a.terms()) {
    for (const auto& t : b.terms()) {
      if (auto p = basis_product(s, t)) acc.push_back(*p);
    }
  }
  return StarElement::from_terms(std::move(acc));
}

StarOperator StarAlgebra::ad(const StarElement& y) const {
  require_element(y);
  const std::uint64_t d = dim();
  std::vector<StarElement> images;
  images.reserve(d);
  for (std::uint64_t p = 0; p < d; ++p) {
    const StarIndex b = index_at(p);
    std::vector<StarIndex> acc;
    for (const auto& t : y.terms()) {
      if (auto prod = basis_product(b, t)) acc.push_back(*prod);
    }
    images.push_back(StarElement::from_terms(std::move(acc)));
  }
  return StarOperator(std::move(images));
}

StarIndex StarAlgebra::random_index(Rng& rng) const { return index_at(rng.below(dim())); }

StarElement StarAlgebra::random_element(Rng& rng, unsigned max_support) const {
  const auto support = 1 + rng.below(max_support);
  std::vector<StarIndex> terms;
  for (std::uint64_t k = 0; k < support; ++k) terms.push_back(random_index(rng));
  return StarElement::from_terms(std::move(terms));
}

std::string StarAlgebra::format(StarIndex s) const {
  if (is_x(s)) return "x";
  std::string out = s.slot == n() ? "w" : "v" + std::to_string(s.slot);
  return out + s.subset().to_string();
}

std::string StarAlgebra::format(const StarElement& e) const {
  if (e.is_zero()) return "0";
  std::string out;
  for (const auto& t : e.terms()) {
    if (!out.empty()) out += '+';
    out += format(t);
  }
  return out;
}

StarIndex StarAlgebra::parse_index(std::string_view text) const {
  auto bad = [&] { return std::invalid_argument("parse: bad star term '" + std::string(text) + "'"); };
  if (text == "x") return x();
  const auto brace = text.find('{');
  if (brace == std::string_view::npos || text.back() != '}') throw bad();
  const std::string_view head = text.substr(0, brace);
  std::uint8_t slot;
  if (head == "w") {
    slot = static_cast<std::uint8_t>(n());
  } else if (head.size() >= 2 && head[0] == 'v') {
    unsigned i = 0;
    auto [ptr, ec] = std::from_chars(head.data() + 1, head.data() + head.size(), i);
    if (ec != std::errc{} || ptr != head.data() + head.size() || i >= n()) throw bad();
    slot = static_cast<std::uint8_t>(i);
  } else {
    throw bad();
  }
  std::string_view body = text.substr(brace + 1, text.size() - brace - 2);
  std::uint64_t set = 0;
  while (!body.empty()) {
    const auto comma = body.find(',');
    const std::string_view num = body.substr(0, comma);
    unsigned e = 0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), e);
    if (ec != std::errc{} || ptr != num.data() + num.size() || e >= 64) throw bad();
    set |= std::uint64_t{1} << e;
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  StarIndex s{slot, set};
  require_index(s);
  return s;
}

StarElement StarAlgebra::parse(std::string_view text) const {
  if (text == "0") return {};
  if (text.empty()) throw std::invalid_argument("parse: empty star element text");
  std::vector<StarIndex> terms;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t plus = text.find('+', pos);
    terms.push_back(parse_index(text.substr(pos, plus == std::string_view::npos ? std::string_view::npos : plus - pos)));
    if (plus == std::string_view::npos) break;
    pos = plus + 1;
  }
  return StarElement::from_terms(std::move(terms));
}

VerificationReport check_sandwich(const StarAlgebra& alg, unsigned samples, std::uint64_t seed) {
  VerificationReport rep("star.sandwich");
  rep.seed = seed;
  const StarIndex x = alg.x();
  const std::uint64_t d = alg.dim();

  // (a) (b * x) * x = 0 for every basis b.
  for (std::uint64_t p = 0; p < d; ++p) {
    const StarIndex b = alg.index_at(p);
    std::optional<StarIndex> bxx;
    if (auto bx = alg.basis_product(b, x)) bxx = alg.basis_product(*bx, x);
    rep.check(!bxx, [&] { return Failure{"ad(x)^2/" + alg.format(b), alg.format(b), "0", alg.format(*bxx)}; });
  }

  // (b) ad(x) ad(y) ad(x) vanishes on every basis element.
  auto sandwich_zero = [&](const StarElement& y, std::string& witness) {
    const StarElement xe(x);
    for (std::uint64_t p = 0; p < d; ++p) {
      const StarIndex b = alg.index_at(p);
      auto bx = alg.basis_product(b, x);
      if (!bx) continue;
      const StarElement r = alg.multiply(alg.multiply(StarElement(*bx), y), xe);
      if (!r.is_zero()) {
        witness = alg.format(b) + " -> " + alg.format(r);
        return false;
      }
    }
    return true;
  };
  std::string witness;
  for (std::uint64_t p = 0; p < d; ++p) {
    const StarElement y(alg.index_at(p));
    const bool ok = sandwich_zero(y, witness);
    rep.check(ok, [&] { return Failure{"xyx/basis/" + alg.format(y), alg.format(y), "0", witness}; });
  }
  for (unsigned s = 0; s < samples; ++s) {
    Rng rng(mix_seed(seed, s));
    const StarElement y = alg.random_element(rng);
    const bool ok = sandwich_zero(y, witness);
    rep.check(ok, [&] { return Failure{"xyx/random/" + std::to_string(s), alg.format(y), "0", witness}; });
  }
  return rep;
}

namespace {

gf2::BitVector dense(const StarAlgebra& alg, const StarElement& e) {
  gf2::BitVector v(alg.dim());
  for (const auto& t : e.terms()) v.flip(alg.position(t));
  return v;
}

StarElement sparse(const StarAlgebra& alg, const gf2::BitVector& v) {
  std::vector<StarIndex> terms;
  for (std::size_t p = 0; p < v.size(); ++p) {
    if (v.test(p)) terms.push_back(alg.index_at(p));
  }
  return StarElement::from_terms(std::move(terms));
}

std::vector<StarElement> span_basis(const StarAlgebra& alg, const gf2::Gf2Span& span) {
  std::vector<StarElement> out;
  for (const auto& v : span.basis()) out.push_back(sparse(alg, v));
  return out;
}

}  // namespace

NilpotencyClass check_local_nilpotency(const StarAlgebra& alg, const std::vector<StarIndex>& generators) {
  for (std::size_t i = 0; i < generators.size(); ++i) {
    alg.require_index(generators[i]);
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      if (generators[i] == generators[j]) throw std::invalid_argument("check_local_nilpotency: duplicate generator");
    }
  }
  const auto non_x = static_cast<unsigned>(
      std::count_if(generators.begin(), generators.end(), [&](StarIndex s) { return !alg.is_x(s); }));
  NilpotencyClass result;
  result.bound = std::max(1U, 2 * non_x);

  // Subalgebra S: span of all left-normed products of generators.
  gf2::Gf2Span s_span(alg.dim());
  std::deque<StarElement> pending;
  for (const auto& g : generators) {
    StarElement e(g);
    if (s_span.insert(dense(alg, e))) pending.push_back(e);
  }
  while (!pending.empty()) {
    const StarElement cur = std::move(pending.front());
    pending.pop_front();
    for (const auto& g : generators) {
      StarElement prod = alg.multiply(cur, StarElement(g));
      if (!prod.is_zero() && s_span.insert(dense(alg, prod))) pending.push_back(std::move(prod));
    }
  }
  const std::vector<StarElement> s_basis = span_basis(alg, s_span);
  if (s_basis.empty()) return result;

  // gamma_{k+1} = [gamma_k, S]; the class is the least c with gamma_{c+1} = 0.
  std::vector<StarElement> gamma = s_basis;
  unsigned c = 0;
  while (!gamma.empty()) {
    ++c;
    gf2::Gf2Span next(alg.dim());
    for (const auto& a : gamma) {
      for (const auto& b : s_basis) {
        const StarElement prod = alg.multiply(a, b);
        if (!prod.is_zero()) next.insert(dense(alg, prod));
      }
    }
    gamma = span_basis(alg, next);
  }
  result.nilpotency_class = c;
  return result;
}

VerificationReport verify_star_jacobi(const StarAlgebra& alg, std::uint64_t exhaustive_cap, unsigned samples,
                                      std::uint64_t seed) {
  VerificationReport rep("star.jacobi");
  rep.seed = seed;
  const std::uint64_t d = alg.dim();
  auto prod = [&](const StarElement& a, const StarElement& b) { return alg.multiply(a, b); };

  auto check_triple = [&](StarIndex a, StarIndex b, StarIndex c, const std::string& id) {
    const StarElement ea(a), eb(b), ec(c);
    const StarElement j = prod(prod(ea, eb), ec) + prod(prod(eb, ec), ea) + prod(prod(ec, ea), eb);
    rep.check(j.is_zero(), [&] {
      return Failure{id, alg.format(a) + " , " + alg.format(b) + " , " + alg.format(c), "0", alg.format(j)};
    });
  };
  auto check_pair = [&](StarIndex a, StarIndex b, const std::string& id) {
    const StarElement ab = prod(StarElement(a), StarElement(b));
    const StarElement ba = prod(StarElement(b), StarElement(a));
    const bool ok = a == b ? ab.is_zero() : ab == ba;
    rep.check(ok, [&] { return Failure{id, alg.format(a) + " , " + alg.format(b), alg.format(ba), alg.format(ab)}; });
  };

  const bool exhaustive = d <= exhaustive_cap;
  rep.measured_values["basis_size"] = d;
  rep.measured_values["exhaustive"] = exhaustive;
  if (exhaustive) {
    for (std::uint64_t a = 0; a < d; ++a) {
      for (std::uint64_t b = a; b < d; ++b) {
        check_pair(alg.index_at(a), alg.index_at(b), "alt/" + std::to_string(a) + "," + std::to_string(b));
      }
    }
    for (std::uint64_t a = 0; a < d; ++a) {
      for (std::uint64_t b = 0; b < d; ++b) {
        for (std::uint64_t c = 0; c < d; ++c) {
          check_triple(alg.index_at(a), alg.index_at(b), alg.index_at(c),
                       "jacobi/" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c));
        }
      }
    }
  } else {
    for (unsigned s = 0; s < samples; ++s) {
      Rng rng(mix_seed(seed, s));
      const StarIndex a = alg.random_index(rng);
      const StarIndex b = alg.random_index(rng);
      const StarIndex c = alg.random_index(rng);
      check_pair(a, b, "alt/sample/" + std::to_string(s));
      check_triple(a, b, c, "jacobi/sample/" + std::to_string(s));
    }
  }
  return rep;
}

}  // namespace engel::star
