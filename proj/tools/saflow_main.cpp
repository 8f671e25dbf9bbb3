#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "saflow/saflow.hpp"

int main(int argc, char** argv) {
    CLI::App app{"saflow: geometric Schrödinger-Airy loop flows, Hasimoto transforms and the "
                 "scalar reference solver"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir;
    long long seed = 0;
    bool seed_set = false;
    bool out_set = false;

    app.add_option("--config", config_path, "path to a run configuration file");
    app.add_option("--out", out_dir, "output directory (overrides the config)")
        ->each([&](const std::string&) { out_set = true; });
    app.add_option("--seed", seed, "random seed (overrides the config)")
        ->each([&](const std::string&) { seed_set = true; });

    std::string command;
    for (const auto& name : saflow::known_commands()) {
        CLI::App* sub = app.add_subcommand(name, "run the '" + name + "' study");
        sub->callback([&command, name] { command = name; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        saflow::RunConfig cfg;
        if (!config_path.empty()) cfg = saflow::load_config_file(config_path);
        if (!command.empty()) cfg.command = command;
        if (out_set) cfg.out_dir = out_dir;
        if (seed_set) cfg.seed = seed;

        const saflow::RunOutcome outcome = saflow::run(cfg);
        for (const auto& w : outcome.warnings) std::cerr << "warning: " << w << "\n";
        std::cout << outcome.summary.dump(2) << "\n";
        return outcome.exit_code;
    } catch (const saflow::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
