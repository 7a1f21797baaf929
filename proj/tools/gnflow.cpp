#include <CLI11.hpp>

#include <iostream>

#include "gnflow/run.hpp"

int main(int argc, char** argv)
{
    using namespace gnflow;
    CLI::App app{"gnflow: dispersive shallow-water simulations over periodic bathymetry"};
    std::string config_path;
    std::string out = "./out";
    std::string formulation;
    std::size_t resolution = 0;
    std::uint64_t seed = 0;
    bool quiet = false;
    bool list = false;

    auto* config_opt = app.add_option("--config", config_path, "YAML run configuration");
    app.add_option("--out", out, "output directory")->capture_default_str();
    auto* form_opt = app.add_option("--formulation", formulation, "eulerian | lagrangian | twin")
                         ->check(CLI::IsMember({"eulerian", "lagrangian", "twin"}));
    auto* res_opt = app.add_option("--resolution", resolution, "grid size override");
    auto* seed_opt = app.add_option("--seed", seed, "seed override");
    app.add_flag("--quiet", quiet, "suppress progress output");
    app.add_flag("--list-scenarios", list, "print built-in scenario names and exit");

    try {
        app.parse(argc, argv);
        if (!list && config_opt->count() == 0)
            throw CLI::RequiredError("--config");
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return static_cast<int>(ExitCode::config);
    }

    if (list) {
        for (const auto& name : scenario_names())
            std::cout << name << '\n';
        return 0;
    }

    RunConfig config;
    try {
        config = load_config(config_path);
        if (form_opt->count()) {
            if (formulation == "twin") {
                config.mode = RunMode::twin;
            } else {
                config.formulation = formulation == "eulerian" ? Formulation::eulerian
                                                               : Formulation::lagrangian;
                if (config.mode == RunMode::twin)
                    config.mode = RunMode::simulate;
            }
        }
        if (res_opt->count())
            config.n = resolution;
        if (seed_opt->count())
            config.seed = seed;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << '\n';
        return static_cast<int>(ExitCode::config);
    }

    RunOptions options;
    options.out = out;
    options.quiet = quiet;
    return static_cast<int>(run(config, options, std::cout, std::cerr));
}
