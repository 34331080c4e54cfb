#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace engel::gf2 {

/// A residue in GF(2).
struct BinomParity {
  std::uint8_t value = 0;

  constexpr bool odd() const { return value != 0; }
  friend constexpr bool operator==(BinomParity, BinomParity) = default;
};

/// Digitwise comparison of base-p expansions: n <=_p m.
bool leq_base_p(std::uint64_t n, std::uint64_t m, std::uint64_t p);

/// C(m, n) mod p by Lucas' theorem, digit by digit. p must be prime.
std::uint64_t binom_mod_p(std::uint64_t m, std::uint64_t n, std::uint64_t p);

/// Nonzero indicator of C(m, n) mod p: 1 iff p does not divide C(m, n).
BinomParity binom_parity(std::uint64_t m, std::uint64_t n, std::uint64_t p = 2);

/// Hot-path parity of C(m, n) for p = 2.
constexpr bool binom_odd(std::uint64_t m, std::uint64_t n) { return (m & n) == n; }

inline constexpr std::uint64_t kPascalOracleCap = 4096;

/// C(m, n) mod 2 from Pascal's recurrence, with no use of Lucas' theorem.
/// Throws std::out_of_range when m exceeds kPascalOracleCap.
BinomParity binom_parity_oracle(std::uint64_t m, std::uint64_t n);

/// The index universe {0, ..., size-1} for subset bitmasks.
class GroundSet {
 public:
  static constexpr unsigned kMaxSize = 64;

  explicit GroundSet(unsigned size);

  unsigned size() const { return size_; }
  std::uint64_t mask() const { return size_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size_) - 1; }
  /// Number of nonempty subsets, 2^size - 1.
  std::uint64_t nonempty_subsets() const { return mask(); }
  bool contains(std::uint64_t bits) const { return (bits & ~mask()) == 0; }

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

 private:
  unsigned size_;
};

/// A finite subset of the ground set, one bit per element.
struct SubsetCode {
  std::uint64_t bits = 0;

  constexpr bool empty() const { return bits == 0; }
  constexpr int size() const { return std::popcount(bits); }
  constexpr bool disjoint(SubsetCode o) const { return (bits & o.bits) == 0; }

  static SubsetCode of(std::initializer_list<unsigned> elems);
  std::vector<unsigned> elements() const;
  /// "{1,4}" form, ascending.
  std::string to_string() const;

  friend constexpr auto operator<=>(SubsetCode, SubsetCode) = default;
};

/// A ⊔ B: the union when A and B are disjoint, std::nullopt (annihilated, read as zero) otherwise.
constexpr std::optional<SubsetCode> disjoint_union(SubsetCode a, SubsetCode b) {
  if (!a.disjoint(b)) return std::nullopt;
  return SubsetCode{a.bits | b.bits};
}

/// Checked modified union; throws std::invalid_argument if either set escapes the ground set.
std::optional<SubsetCode> modified_union(const GroundSet& ground, SubsetCode a, SubsetCode b);

}  // namespace engel::gf2
