#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gnflow/experiments.hpp"

namespace gnflow {

/// All violations found in one document, each prefixed by its key path.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

struct BathymetrySpec {
    std::string family = "flat";  // flat | gaussian-bump | sinusoidal
    double center = 0.0;
    double width = 1.0;
    double height = 0.0;
    int k = 1;                    // periods per domain
    double amplitude = 0.0;
    double phase = 0.0;
};

struct InitialSpec {
    std::string family = "still";  // still | hump | solitary | depression | fold
    double surface = 1.0;
    double center = 0.0;
    double width = 1.0;
    double amplitude = 0.0;
    double froude = 0.0;
    double depth = 1.0;
    double depth_fraction = 0.5;
    double velocity = 0.0;
    double fold = 0.0;
};

enum class RunMode { simulate, twin, dependence, convergence, solitary };
const char* to_string(RunMode m);

struct RunConfig {
    std::string scenario;            // empty unless a built-in preset is selected
    double length = 0.0;
    std::size_t n = 0;
    BathymetrySpec bathymetry;
    InitialSpec initial;

    double g = 1.0;
    double cfl = 0.5;
    double t_end = 1.0;
    std::optional<double> cadence;   // default t_end / 10
    Formulation formulation = Formulation::eulerian;
    RunMode mode = RunMode::simulate;
    std::uint64_t seed = 0;
    double sigma = 1.0;              // Sobolev index of snapshot norms

    std::vector<std::size_t> twin_resolutions;   // default n, 2n, 4n
    std::size_t checkpoints = 8;
    double guard_tol = 1e-10;

    std::vector<double> dependence_eps{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    double dependence_s = 1.0;
    std::vector<Direction> dependence_directions{Direction::depth, Direction::velocity,
                                                 Direction::bottom};

    std::vector<std::size_t> convergence_resolutions;  // default n/4, n/2, n, 2n
    std::size_t convergence_steps0 = 20;
    std::size_t convergence_levels = 4;

    std::vector<std::size_t> solitary_resolutions{2048, 4096, 8192};

    double cadence_or_default() const { return cadence ? *cadence : t_end / 10.0; }
};

/// Parses a YAML document; throws ConfigError listing every violation.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Re-runs the semantic checks after command-line overrides.
void validate(const RunConfig& c);

/// Builds the analytic datum described by the config (preset or families).
Datum make_datum(const RunConfig& c);

}  // namespace gnflow
