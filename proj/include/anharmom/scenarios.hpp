#pragma once

#include <functional>
#include <string>
#include <vector>

#include "anharmom/config.hpp"

namespace anharmom::cli {

struct ScenarioResult {
    int exit_code = 0; // 0 ok, 1 partial numeric failure
    std::vector<std::string> files;
    std::string summary_path;
    int points = 0;
    int failed_points = 0;
};

// Registered scenario names in execution-registry order.
std::vector<std::string> scenario_names();

// Built-in defaults for a scenario; user config entries override them.
Config scenario_defaults(const std::string& name);

// Runs a scenario with the merged configuration, writing the artifact bundle
// (CSV + SVG + JSON summary) into out_dir. workers <= 0 selects the
// ANHARM_OM_WORKERS environment value or the hardware default. Configuration
// problems raise ConfigError (exit code 2 at the command line).
ScenarioResult run_scenario(const std::string& name, const Config& user_config,
                            const std::string& out_dir, int workers = 0);

// Deterministic index-ordered parallel map: results land by index no matter
// the worker count.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

int resolve_workers(int requested);

} // namespace anharmom::cli
