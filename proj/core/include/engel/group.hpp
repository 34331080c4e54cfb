#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "engel/bitmatrix.hpp"
#include "engel/report.hpp"
#include "engel/star_algebra.hpp"

namespace engel::group {

using gf2::SubsetCode;
using star::StarAlgebra;
using star::StarElement;
using star::StarIndex;

inline constexpr std::uint64_t kDefaultMaxDim = 4096;

/// Raised when a dense computation would exceed the configured matrix dimension.
class ResourceCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A generator 1 + ad(y) of G is named by its star basis element y (x, v(i)_A or w_A).
using Generator = StarIndex;

struct GroupWord {
  std::vector<Generator> letters;

  friend bool operator==(const GroupWord&, const GroupWord&) = default;
};

std::string format_word(const StarAlgebra& alg, const GroupWord& word);
/// Space-separated letters; the empty string is the empty word.
GroupWord parse_word(const StarAlgebra& alg, std::string_view text);

/// Deterministic pseudorandom word of exactly `length` letters over all generator kinds.
GroupWord random_word(const StarAlgebra& alg, std::size_t length, std::uint64_t seed);

/// Identity plus a nilpotent operator on the truncation, stored densely (row-vector action).
class UnipotentOp {
 public:
  UnipotentOp() = default;
  explicit UnipotentOp(gf2::BitMatrix m) : matrix_(std::move(m)) {}

  static UnipotentOp identity(std::size_t dim) { return UnipotentOp(gf2::BitMatrix::identity(dim)); }

  const gf2::BitMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return matrix_.rows(); }

  bool is_identity() const { return matrix_.is_identity(); }
  bool is_involution() const;
  /// Checks that matrix - identity is nilpotent.
  bool is_unipotent() const;
  /// Inverse via involution shortcut or the finite series 1 + T + T^2 + ...
  UnipotentOp inverse() const;

  /// Product "this, then other".
  friend UnipotentOp operator*(const UnipotentOp& a, const UnipotentOp& b);
  friend bool operator==(const UnipotentOp&, const UnipotentOp&) = default;

 private:
  gf2::BitMatrix matrix_;
};

/// Matrix of 1 + ad(y) on the truncation.
UnipotentOp generator_matrix(const StarAlgebra& alg, const StarElement& y, std::uint64_t max_dim = kDefaultMaxDim);

/// Product of generator matrices in letter order.
UnipotentOp realize(const StarAlgebra& alg, const GroupWord& word, std::uint64_t max_dim = kDefaultMaxDim);

/// g^-1 h^-1 g h.
UnipotentOp commutator(const UnipotentOp& g, const UnipotentOp& h);
/// g^-1 a g.
UnipotentOp conjugate(const UnipotentOp& a, const UnipotentOp& g);
/// Left-normed [g1, g2, ..., gk].
UnipotentOp left_normed_commutator(std::span<const UnipotentOp> entries);

/// [1 + ad(a), 1 + ad(b)] = 1 + ad(a * b) for basis elements a, b; nullopt is the identity.
std::optional<StarIndex> structured_commutator(const StarAlgebra& alg, StarIndex a, StarIndex b);

/// (1 + ad x)^eps * r_0 ... r_{n-1} * s, each block a set of subsets.
struct NormalForm {
  bool epsilon = false;
  std::vector<std::vector<SubsetCode>> v_blocks;
  std::vector<SubsetCode> w_block;

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

NormalForm collect_normal_form(const StarAlgebra& alg, const GroupWord& word);
GroupWord normal_form_word(const StarAlgebra& alg, const NormalForm& nf);
nlohmann::json normal_form_to_json(const NormalForm& nf);
NormalForm normal_form_from_json(const nlohmann::json& j, const lie::LParams& params);

/// y with (1 + ad x)^((1 + ad w_{A_1}) ... (1 + ad w_{A_k})) = 1 + ad(y). Sets must be nonempty and pairwise disjoint.
StarElement conjugate_expansion(const lie::LParams& params, std::span<const SubsetCode> sets);

/// [[(1 + ad x)^g, 1 + ad x], 1 + ad x] == 1.
bool engel3_check(const StarAlgebra& alg, const GroupWord& word, std::uint64_t max_dim = kDefaultMaxDim);

/// Entries w_{A_0}, x, w_{A_1..A_n}, x, ..., x, w_{A_{mn+1}..A_{(m+1)n}} with A_i = {i}.
std::vector<StarIndex> witness_pattern(const lie::LParams& params);
unsigned witness_ground_size(const lie::LParams& params);

struct WitnessResult {
  std::vector<StarIndex> entries;
  /// Structured value after each prefix of length 1..entries.size(); nullopt is the identity.
  std::vector<std::optional<StarIndex>> prefix_values;
  StarIndex expected;

  const std::optional<StarIndex>& value() const { return prefix_values.back(); }
  bool matches_expected() const { return value() && *value() == expected; }
  bool proper_prefixes_nontrivial() const;
};

/// Left-normed witness commutator evaluated through structured_commutator (no matrices).
WitnessResult witness_commutator(const lie::LParams& params);
/// Dense evaluation of every witness prefix at the ground size the pattern needs.
std::vector<UnipotentOp> witness_commutator_dense(const lie::LParams& params, std::uint64_t max_dim = kDefaultMaxDim);

struct ClassBoundResult {
  unsigned algebra_nilpotency_index = 0;
  /// 4r + 1: every (4r+1)-fold product of the T_i vanishes.
  unsigned bound = 0;
  VerificationReport commutator_checks{"group.class_bound.commutators"};
  bool within_bound() const { return algebra_nilpotency_index <= bound; }
};

/// Conjugate word for (1 + ad x)^((1 + ad w_{C_1}) ... (1 + ad w_{C_j})): [w_{C_1} .. w_{C_j}, x, w_{C_j} .. w_{C_1}].
GroupWord conjugate_word(const StarAlgebra& alg, std::span<const SubsetCode> conjugator);

/// Nilpotency index of Q = <T_1, ..., T_r>, T_i = conjugate_i - 1, plus random weight-(4r+2) group commutators.
ClassBoundResult conjugates_class_bound(const StarAlgebra& alg, const std::vector<std::vector<SubsetCode>>& conjugators,
                                        unsigned commutator_samples, std::uint64_t seed,
                                        std::uint64_t max_dim = kDefaultMaxDim);

/// The five commutator relations among 1 + ad(x), 1 + ad(v(i)_A), 1 + ad(w_B), as matrix identities.
VerificationReport check_commutator_relations(const StarAlgebra& alg, unsigned samples, std::uint64_t seed,
                                              std::uint64_t max_dim = kDefaultMaxDim);

}  // namespace engel::group
