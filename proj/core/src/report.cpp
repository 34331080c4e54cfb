#include "engel/report.hpp"

namespace engel {

void VerificationReport::merge(const VerificationReport& other) {
  cases_total += other.cases_total;
  cases_passed += other.cases_passed;
  cases_vacuous += other.cases_vacuous;
  for (const auto& f : other.failures) {
    failures.push_back({other.suite + "/" + f.case_id, f.inputs, f.expected, f.actual});
  }
  if (!other.measured_values.empty()) measured_values[other.suite] = other.measured_values;
}

void to_json(nlohmann::json& j, const Failure& f) {
  j = nlohmann::json{{"case_id", f.case_id}, {"inputs", f.inputs}, {"expected", f.expected}, {"actual", f.actual}};
}

void to_json(nlohmann::json& j, const VerificationReport& r) {
  j = nlohmann::json{{"schema", "1"},
                     {"suite", r.suite},
                     {"cases_total", r.cases_total},
                     {"cases_passed", r.cases_passed},
                     {"cases_vacuous", r.cases_vacuous},
                     {"failures", r.failures},
                     {"measured_values", r.measured_values},
                     {"timing_ms", r.timing_ms},
                     {"seed", r.seed},
                     {"config", r.config}};
}

}  // namespace engel
