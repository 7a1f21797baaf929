#pragma once

#include <filesystem>
#include <iosfwd>

#include "gnflow/config.hpp"

namespace gnflow {

enum class ExitCode : int {
    ok = 0,
    internal = 1,
    config = 2,
    depth_positivity_lost = 3,
    diffeo_lost = 4,
    horizon_exceeded = 5,
    output_locked = 6,
};

struct RunOptions {
    std::filesystem::path out = "out";
    bool quiet = false;
};

/// Writes snapshots.csv and fields_<t>.f64 (simulation) or report.csv (experiments) under
/// options.out. Never throws; failures are reported on `err` and through the exit code.
ExitCode run(const RunConfig& config, const RunOptions& options, std::ostream& log,
             std::ostream& err);

}  // namespace gnflow
