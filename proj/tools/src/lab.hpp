#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "engel/report.hpp"

namespace engel::lab {

enum class Suite { lie, star, group, engel, witness, class_bound, sandwich, all };

std::string_view suite_name(Suite s);
Suite parse_suite(std::string_view text);
const std::vector<std::string>& suite_names();

struct RunConfig {
  Suite suite = Suite::all;
  unsigned m = 3;
  unsigned ground = 4;
  std::uint64_t seed = 1;
  unsigned samples = 200;
  unsigned jobs = 1;
  unsigned r = 2;
  std::optional<std::string> out;
  bool force = false;
};

/// Bad flag values; the CLI maps this to exit status 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::uint64_t kMaxDim = 4096;
inline constexpr unsigned kMaxM = 6;
inline constexpr unsigned kMaxR = 3;

/// Checks caps and runs the suite(s). Throws UsageError or group::ResourceCapError.
VerificationReport run(const RunConfig& config);

/// Canonical report text: sorted keys, two-space indent, trailing LF.
std::string render(const VerificationReport& report);

const std::vector<std::string>& explain_topics();
/// Throws UsageError for an unknown topic.
std::string explain(std::string_view topic);

}  // namespace engel::lab
