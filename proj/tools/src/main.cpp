#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "engel/group.hpp"
#include "lab.hpp"

namespace {

int structured_error(const char* kind, const std::string& message, int status) {
  nlohmann::json j = {{"schema", "1"}, {"error", kind}, {"message", message}};
  std::cerr << j.dump() << "\n";
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace engel::lab;
  CLI::App app{"engel-lab: verification suites for the GF(2) Engel construction"};
  app.require_subcommand(1);

  RunConfig config;
  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run verification suites and print a JSON report");
  verify->add_option("--suite", suite, "Suite to run")->check(CLI::IsMember(suite_names()));
  verify->add_option("--m", config.m, "Lie algebra parameter, n = 2^m - 2");
  verify->add_option("--ground", config.ground, "Ground set size N of the truncation");
  verify->add_option("--samples", config.samples, "Random cases per sampled check");
  verify->add_option("--seed", config.seed, "Root seed");
  verify->add_option("--jobs", config.jobs, "Worker threads")->envname("ENGEL_LAB_JOBS");
  verify->add_option("--r", config.r, "Number of conjugates / multi-degree coordinates");
  verify->add_option("--out", config.out, "Write the report here instead of stdout");
  verify->add_flag("--force", config.force, "Lift the dimension and r caps");

  std::string topic;
  auto* explain_cmd = app.add_subcommand("explain", "Describe a construction and what its suite checks");
  explain_cmd->add_option("topic", topic, "Topic")->required()->check(CLI::IsMember(explain_topics()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (explain_cmd->parsed()) {
      std::cout << explain(topic);
      return 0;
    }
    config.suite = parse_suite(suite);
    const auto report = run(config);
    const std::string text = render(report);
    if (config.out) {
      std::ofstream out(*config.out, std::ios::binary);
      if (!out) return structured_error("io", "cannot open " + *config.out, 2);
      out << text;
    } else {
      std::cout << text;
    }
    return report.ok() ? 0 : 1;
  } catch (const engel::group::ResourceCapError& e) {
    return structured_error("resource_cap", e.what(), 3);
  } catch (const std::invalid_argument& e) {
    return structured_error("usage", e.what(), 2);
  }
}
