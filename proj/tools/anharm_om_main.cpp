#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "anharmom/config.hpp"
#include "anharmom/scenarios.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"anharmonic molecular optomechanics scenario runner"};

    std::string scenario;
    std::string config_path;
    std::string out_dir = "out";
    int workers = 0;
    std::vector<std::string> overrides;

    std::string names;
    for (const auto& n : anharmom::cli::scenario_names())
        names += (names.empty() ? "" : ", ") + n;

    app.add_option("scenario", scenario, "one of: " + names)->required();
    app.add_option("--config", config_path, "INI config file");
    app.add_option("--set", overrides, "override section.key=value (repeatable)");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--workers", workers,
                   "worker threads (default: ANHARM_OM_WORKERS or hardware)");

    CLI11_PARSE(app, argc, argv);

    try {
        anharmom::cli::Config user;
        if (!config_path.empty())
            user.load_file(config_path);
        for (const auto& o : overrides)
            user.set_from_assignment(o);

        const auto result =
            anharmom::cli::run_scenario(scenario, user, out_dir, workers);
        std::printf("%s: %d points, %d failed; summary at %s\n", scenario.c_str(),
                    result.points, result.failed_points,
                    result.summary_path.c_str());
        return result.exit_code;
    } catch (const anharmom::cli::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
