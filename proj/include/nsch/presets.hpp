// presets.hpp: experiment drivers behind the CLI: plain runs, the energy
// dissipation check, the smallness-propagation sweep, the decay-rate study,
// and the inequality suite.  Each writes CSV/JSON outputs per the config
// and returns a machine-readable report plus a process exit code.

#ifndef NSCH_PRESETS_HPP
#define NSCH_PRESETS_HPP

#include <filesystem>

#include "json.hpp"
#include "nsch/config.hpp"

namespace nsch {

struct RunOutcome {
    int exit_code = 0;  // 0 ok, 3 divergence, 4 inequality violation
    nlohmann::json report;
};

// Dispatches on cfg.experiment.  Relative output paths resolve against
// output_dir when given.  Throws ConfigError for configuration problems;
// run-time failures are folded into the outcome.
RunOutcome execute(const RunConfig& cfg, const std::filesystem::path& output_dir = {});

}  // namespace nsch

#endif
