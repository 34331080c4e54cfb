#include "engel/gf2.hpp"

#include <mutex>
#include <stdexcept>

#include "engel/bitmatrix.hpp"

namespace engel::gf2 {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  for (a %= m; e != 0; e >>= 1) {
    if (e & 1U) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
  }
  return r;
}

// Miller-Rabin with the first twelve primes as witnesses is exact below 2^64.
bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  constexpr std::uint64_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t q : kWitnesses) {
    if (p % q == 0) return p == q;
  }
  std::uint64_t d = p - 1;
  unsigned s = 0;
  for (; (d & 1U) == 0; d >>= 1) ++s;
  for (std::uint64_t a : kWitnesses) {
    std::uint64_t x = pow_mod(a, d, p);
    if (x == 1 || x == p - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s && composite; ++r) {
      x = mul_mod(x, x, p);
      composite = x != p - 1;
    }
    if (composite) return false;
  }
  return true;
}

void require_prime_base(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("base must be prime");
}

// Rows 0..kPascalOracleCap of Pascal's triangle mod 2, row m+1 = row m xor (row m << 1).
const std::vector<BitVector>& pascal_rows() {
  static const std::vector<BitVector> rows = [] {
    std::vector<BitVector> out;
    out.reserve(kPascalOracleCap + 1);
    BitVector row(kPascalOracleCap + 1);
    row.set(0);
    out.push_back(row);
    for (std::uint64_t m = 1; m <= kPascalOracleCap; ++m) {
      BitVector next = row;
      for (std::uint64_t k = 1; k <= m; ++k) {
        if (row.test(k - 1)) next.flip(k);
      }
      out.push_back(next);
      row = std::move(next);
    }
    return out;
  }();
  return rows;
}

}  // namespace

bool leq_base_p(std::uint64_t n, std::uint64_t m, std::uint64_t p) {
  require_prime_base(p);
  if (p == 2) return (m & n) == n;
  while (n != 0 || m != 0) {
    if (n % p > m % p) return false;
    n /= p;
    m /= p;
  }
  return true;
}

std::uint64_t binom_mod_p(std::uint64_t m, std::uint64_t n, std::uint64_t p) {
  require_prime_base(p);
  std::uint64_t result = 1;
  while (n != 0 || m != 0) {
    const std::uint64_t mi = m % p;
    const std::uint64_t ni = n % p;
    if (ni > mi) return 0;
    // C(mi, ni) mod p for single digits, mi < p; the denominator is inverted by Fermat.
    std::uint64_t num = 1;
    std::uint64_t denom = 1;
    for (std::uint64_t k = 0; k < ni; ++k) {
      num = mul_mod(num, mi - k, p);
      denom = mul_mod(denom, k + 1, p);
    }
    result = mul_mod(result, mul_mod(num, pow_mod(denom, p - 2, p), p), p);
    m /= p;
    n /= p;
  }
  return result;
}

BinomParity binom_parity(std::uint64_t m, std::uint64_t n, std::uint64_t p) {
  require_prime_base(p);
  if (p == 2) return {static_cast<std::uint8_t>(binom_odd(m, n) ? 1 : 0)};
  return {static_cast<std::uint8_t>(leq_base_p(n, m, p) ? 1 : 0)};
}

BinomParity binom_parity_oracle(std::uint64_t m, std::uint64_t n) {
  if (m > kPascalOracleCap) throw std::out_of_range("binom_parity_oracle: m exceeds the Pascal table cap");
  if (n > m) return {0};
  return {static_cast<std::uint8_t>(pascal_rows()[m].test(n) ? 1 : 0)};
}

GroundSet::GroundSet(unsigned size) : size_(size) {
  if (size == 0 || size > kMaxSize) throw std::invalid_argument("ground set size must lie in [1, 64]");
}

SubsetCode SubsetCode::of(std::initializer_list<unsigned> elems) {
  SubsetCode s;
  for (unsigned e : elems) {
    if (e >= 64) throw std::invalid_argument("subset element out of range");
    s.bits |= std::uint64_t{1} << e;
  }
  return s;
}

std::vector<unsigned> SubsetCode::elements() const {
  std::vector<unsigned> out;
  for (std::uint64_t b = bits; b != 0; b &= b - 1) out.push_back(static_cast<unsigned>(std::countr_zero(b)));
  return out;
}

std::string SubsetCode::to_string() const {
  std::string s = "{";
  bool first = true;
  for (unsigned e : elements()) {
    if (!first) s += ',';
    s += std::to_string(e);
    first = false;
  }
  s += '}';
  return s;
}

std::optional<SubsetCode> modified_union(const GroundSet& ground, SubsetCode a, SubsetCode b) {
  if (!ground.contains(a.bits) || !ground.contains(b.bits)) {
    throw std::invalid_argument("modified_union: subset escapes the ground set");
  }
  return disjoint_union(a, b);
}

}  // namespace engel::gf2
