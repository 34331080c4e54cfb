#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace engel {

struct Failure {
  std::string case_id;
  std::string inputs;
  std::string expected;
  std::string actual;
};

/// Outcome of a check suite. Invariant: cases_passed + failures.size() + cases_vacuous == cases_total.
struct VerificationReport {
  std::string suite;
  std::uint64_t cases_total = 0;
  std::uint64_t cases_passed = 0;
  std::uint64_t cases_vacuous = 0;
  std::vector<Failure> failures;
  nlohmann::json measured_values = nlohmann::json::object();
  std::uint64_t timing_ms = 0;
  std::uint64_t seed = 0;
  nlohmann::json config = nlohmann::json::object();

  explicit VerificationReport(std::string name = {}) : suite(std::move(name)) {}

  void pass() {
    ++cases_total;
    ++cases_passed;
  }
  void vacuous() {
    ++cases_total;
    ++cases_vacuous;
  }
  void fail(Failure f) {
    ++cases_total;
    failures.push_back(std::move(f));
  }
  /// Records one case; `detail` is only evaluated on failure.
  template <typename Detail>
  void check(bool ok, Detail&& detail) {
    if (ok) {
      pass();
    } else {
      fail(std::forward<Detail>(detail)());
    }
  }

  bool ok() const { return failures.empty(); }
  bool consistent() const { return cases_passed + failures.size() + cases_vacuous == cases_total; }

  /// Appends another report's cases and failures; measured values are namespaced by the other suite name.
  void merge(const VerificationReport& other);
};

void to_json(nlohmann::json& j, const Failure& f);
void to_json(nlohmann::json& j, const VerificationReport& r);

}  // namespace engel
