#ifndef MGALE_TOOLS_SCENARIO_HPP
#define MGALE_TOOLS_SCENARIO_HPP

// Scenario files: a space/process (explicit, or generated from a model) plus a
// list of checks. Each check writes one CSV; a summary CSV lists every check.

#include "mgale/io.hpp"
#include "mgale/montecarlo.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace mgale::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kConfigError = 2 };

struct ScenarioOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  unsigned threads = 0;
};

/// Runs every check; returns kOk, kCheckFailed or kConfigError. Messages go to `log`.
int run_scenario_file(const std::string& path, const std::string& out_dir, const ScenarioOverrides& overrides,
                      std::ostream& log);

/// Same for an in-memory document; `origin` names it in messages.
int run_scenario_text(const std::string& text, const std::string& origin, const std::string& out_dir,
                      const ScenarioOverrides& overrides, std::ostream& log);

/// {"type": "fair_walk" | "biased_walk" | "polya_urn" | "betting" | "independent", ...}
TrajectoryModel model_from_json(const Json& j);

/// The check types a scenario may use, one line each, for --help.
std::string check_catalogue();

}  // namespace mgale::cli

#endif  // MGALE_TOOLS_SCENARIO_HPP
