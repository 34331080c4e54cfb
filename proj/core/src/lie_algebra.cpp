#include "engel/lie_algebra.hpp"

#include <bit>
#include <charconv>
#include <deque>
#include <stdexcept>

#include "engel/bitmatrix.hpp"
#include "engel/gf2.hpp"

namespace engel::lie {

namespace {

gf2::BitVector to_bits(LElement e, unsigned dim) {
  gf2::BitVector v(dim);
  v.words()[0] = e.bits;
  return v;
}

LElement from_bits(const gf2::BitVector& v) { return {v.words()[0]}; }

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

}  // namespace

LParams::LParams(unsigned m) : m_(m), n_(0) {
  if (m < kMinM || m > kMaxM) throw std::invalid_argument("m must lie in [2, 6]");
  n_ = (1U << m) - 2;
}

LMatrix LMatrix::identity(unsigned dim) {
  LMatrix id(dim);
  for (unsigned k = 0; k < dim; ++k) id.rows_[k] = std::uint64_t{1} << k;
  return id;
}

LElement LMatrix::apply(LElement e) const {
  std::uint64_t out = 0;
  for (std::uint64_t bits = e.bits; bits != 0; bits &= bits - 1) out ^= rows_[std::countr_zero(bits)];
  return {out};
}

bool LMatrix::is_zero() const {
  for (auto r : rows_) {
    if (r != 0) return false;
  }
  return true;
}

LMatrix& LMatrix::operator+=(const LMatrix& o) {
  if (o.dim() != dim()) throw std::invalid_argument("LMatrix dimension mismatch");
  for (unsigned k = 0; k < dim(); ++k) rows_[k] ^= o.rows_[k];
  return *this;
}

LMatrix operator*(const LMatrix& a, const LMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("LMatrix dimension mismatch");
  LMatrix out(a.dim());
  for (unsigned k = 0; k < a.dim(); ++k) out.rows_[k] = b.apply({a.rows_[k]}).bits;
  return out;
}

LAlgebra::LAlgebra(LParams params) : params_(params), table_(params.dim() * params.dim(), -1) {
  const unsigned n = params_.n();
  const unsigned d = dim();
  const int w_slot = static_cast<int>(n);
  auto put = [&](unsigned a, unsigned b, int slot) {
    table_[a * d + b] = static_cast<std::int8_t>(slot);
  };
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) {
      // v(i) * v(j) = C(j+1, n-i) v(i ⊕ j)
      if (gf2::binom_odd(j + 1, n - i)) put(i, j, static_cast<int>(oplus(i, j)));
    }
    const int vw = (i + 1 < n) ? static_cast<int>(i + 1) : w_slot;
    put(i, n, vw);
    put(n, i, vw);
  }
  put(n, n + 1, 0);
  put(n + 1, n, 0);
}

LBasis LAlgebra::v(unsigned i) const {
  if (i >= params_.n()) throw std::out_of_range("v index out of range");
  return LBasis::v(i);
}

unsigned LAlgebra::oplus(unsigned i, unsigned j) const {
  const unsigned n = params_.n();
  if (i >= n || j >= n) throw std::out_of_range("oplus: index out of range");
  return (i + j) % (n - 1);
}

void LAlgebra::require_element(LElement e) const {
  if (dim() < 64 && (e.bits >> dim()) != 0) throw std::invalid_argument("element does not belong to this L(m)");
}

LElement LAlgebra::basis_product(LBasis a, LBasis b) const {
  if (a.slot >= dim() || b.slot >= dim()) throw std::out_of_range("basis index out of range");
  const int s = basis_product_slot(a, b);
  return s < 0 ? LElement{} : LElement::basis({static_cast<std::uint8_t>(s)});
}

LElement LAlgebra::multiply(LElement a, LElement b) const {
  require_element(a);
  require_element(b);
  std::uint64_t out = 0;
  for (std::uint64_t ab = a.bits; ab != 0; ab &= ab - 1) {
    const unsigned i = static_cast<unsigned>(std::countr_zero(ab));
    for (std::uint64_t bb = b.bits; bb != 0; bb &= bb - 1) {
      const int s = table_[i * dim() + static_cast<unsigned>(std::countr_zero(bb))];
      if (s >= 0) out ^= std::uint64_t{1} << s;
    }
  }
  return {out};
}

LMatrix LAlgebra::ad(LElement y) const {
  require_element(y);
  LMatrix m(dim());
  for (unsigned k = 0; k < dim(); ++k) {
    m.set_row(k, multiply(LElement::basis({static_cast<std::uint8_t>(k)}), y).bits);
  }
  return m;
}

VerificationReport LAlgebra::verify_alternating() const {
  VerificationReport rep("lie.alternating");
  const unsigned d = dim();
  for (unsigned a = 0; a < d; ++a) {
    const LBasis ea{static_cast<std::uint8_t>(a)};
    const LElement sq = basis_product(ea, ea);
    rep.check(sq.is_zero(), [&] {
      return Failure{"self/" + std::to_string(a), format(LElement::basis(ea)), "0", format(sq)};
    });
  }
  for (unsigned a = 0; a < d; ++a) {
    for (unsigned b = a + 1; b < d; ++b) {
      const LBasis ea{static_cast<std::uint8_t>(a)};
      const LBasis eb{static_cast<std::uint8_t>(b)};
      const LElement ab = basis_product(ea, eb);
      const LElement ba = basis_product(eb, ea);
      rep.check(ab == ba, [&] {
        return Failure{"pair/" + std::to_string(a) + "," + std::to_string(b),
                       format(LElement::basis(ea)) + " , " + format(LElement::basis(eb)), format(ab), format(ba)};
      });
    }
  }
  return rep;
}

VerificationReport LAlgebra::verify_jacobi() const {
  VerificationReport rep("lie.jacobi");
  const unsigned d = dim();
  for (unsigned a = 0; a < d; ++a) {
    for (unsigned b = 0; b < d; ++b) {
      for (unsigned c = 0; c < d; ++c) {
        const LElement ea = LElement::basis({static_cast<std::uint8_t>(a)});
        const LElement eb = LElement::basis({static_cast<std::uint8_t>(b)});
        const LElement ec = LElement::basis({static_cast<std::uint8_t>(c)});
        const LElement j = multiply(multiply(ea, eb), ec) + multiply(multiply(eb, ec), ea) +
                           multiply(multiply(ec, ea), eb);
        rep.check(j.is_zero(), [&] {
          return Failure{"triple/" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c),
                         format(ea) + " , " + format(eb) + " , " + format(ec), "0", format(j)};
        });
      }
    }
  }
  return rep;
}

VerificationReport LAlgebra::verify_structure_symmetry() const {
  VerificationReport rep("lie.structure_symmetry");
  const unsigned n = params_.n();
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) {
      const bool lhs = gf2::binom_odd(j + 1, n - i);
      const bool rhs = gf2::binom_odd(i + 1, n - j);
      rep.check(lhs == rhs, [&] {
        return Failure{"v" + std::to_string(i) + ",v" + std::to_string(j), "C(j+1,n-i) vs C(i+1,n-j)",
                       std::to_string(rhs), std::to_string(lhs)};
      });
    }
  }
  return rep;
}

std::vector<LElement> LAlgebra::center() const {
  // Row k: images of basis k under every ad(b), concatenated.
  const unsigned d = dim();
  gf2::BitMatrix stacked(d, static_cast<std::size_t>(d) * d);
  for (unsigned b = 0; b < d; ++b) {
    const LMatrix adb = ad(LElement::basis({static_cast<std::uint8_t>(b)}));
    for (unsigned k = 0; k < d; ++k) {
      for (std::uint64_t bits = adb.row(k); bits != 0; bits &= bits - 1) {
        stacked.set(k, static_cast<std::size_t>(b) * d + static_cast<unsigned>(std::countr_zero(bits)));
      }
    }
  }
  std::vector<LElement> out;
  for (const auto& v : gf2::left_null_space(stacked)) out.push_back(from_bits(v));
  return out;
}

std::vector<LElement> LAlgebra::ideal_closure(LElement y) const {
  require_element(y);
  if (y.is_zero()) throw std::invalid_argument("ideal_closure: zero generator");
  gf2::Gf2Span span(dim());
  std::deque<LElement> pending{y};
  span.insert(to_bits(y, dim()));
  while (!pending.empty()) {
    const LElement s = pending.front();
    pending.pop_front();
    for (unsigned b = 0; b < dim(); ++b) {
      const LElement prod = multiply(s, LElement::basis({static_cast<std::uint8_t>(b)}));
      if (!prod.is_zero() && span.insert(to_bits(prod, dim()))) pending.push_back(prod);
    }
  }
  std::vector<LElement> out;
  for (const auto& v : span.basis()) out.push_back(from_bits(v));
  return out;
}

std::vector<LElement> LAlgebra::w_ideal() const {
  gf2::Gf2Span span(dim());
  for (unsigned k = 0; k <= params_.n(); ++k) span.insert(to_bits(LElement::basis({static_cast<std::uint8_t>(k)}), dim()));
  std::vector<LElement> out;
  for (const auto& v : span.basis()) out.push_back(from_bits(v));
  return out;
}

unsigned LAlgebra::enveloping_algebra_dim() const {
  const unsigned d = dim();
  std::vector<LMatrix> gens;
  for (unsigned k = 0; k < d; ++k) gens.push_back(ad(LElement::basis({static_cast<std::uint8_t>(k)})));
  gf2::Gf2Span span(static_cast<std::size_t>(d) * d);
  std::deque<LMatrix> pending;
  for (const auto& g : gens) {
    if (!g.is_zero() && span.insert(flatten(g))) pending.push_back(g);
  }
  // The span of all words in the generators is closed under right multiplication by generators.
  while (!pending.empty()) {
    const LMatrix cur = std::move(pending.front());
    pending.pop_front();
    for (const auto& g : gens) {
      LMatrix prod = cur * g;
      if (!prod.is_zero() && span.insert(flatten(prod))) pending.push_back(std::move(prod));
    }
  }
  return static_cast<unsigned>(span.dimension());
}

std::string LAlgebra::format(LElement e) const {
  if (e.is_zero()) return "0";
  std::string out;
  const unsigned n = params_.n();
  for (std::uint64_t bits = e.bits; bits != 0; bits &= bits - 1) {
    const unsigned k = static_cast<unsigned>(std::countr_zero(bits));
    if (!out.empty()) out += '+';
    if (k < n) {
      out += 'v';
      out += std::to_string(k);
    } else if (k == n) {
      out += 'w';
    } else if (k == n + 1) {
      out += 'x';
    } else {
      throw std::invalid_argument("format: element does not belong to this L(m)");
    }
  }
  return out;
}

LElement LAlgebra::parse(std::string_view text) const {
  if (text == "0") return {};
  if (text.empty()) throw std::invalid_argument("parse: empty element text");
  LElement out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t plus = text.find('+', pos);
    const std::string_view term = text.substr(pos, plus == std::string_view::npos ? std::string_view::npos : plus - pos);
    if (term == "w") {
      out += LElement::basis(w());
    } else if (term == "x") {
      out += LElement::basis(x());
    } else if (term.size() >= 2 && term[0] == 'v') {
      unsigned i = 0;
      const auto* first = term.data() + 1;
      const auto* last = term.data() + term.size();
      auto [ptr, ec] = std::from_chars(first, last, i);
      if (ec != std::errc{} || ptr != last) throw std::invalid_argument("parse: bad term '" + std::string(term) + "'");
      out += LElement::basis(v(i));
    } else {
      throw std::invalid_argument("parse: bad term '" + std::string(term) + "'");
    }
    if (plus == std::string_view::npos) break;
    pos = plus + 1;
  }
  return out;
}

}  // namespace engel::lie
