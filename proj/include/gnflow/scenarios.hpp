#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gnflow/bathymetry.hpp"
#include "gnflow/eulerian.hpp"
#include "gnflow/lagrangian.hpp"
#include "gnflow/operator.hpp"

namespace gnflow {

/// Initial data and bottom given as analytic functions, so a datum can be sampled on
/// any resolution of the same domain.
struct Datum {
    std::string name;
    double length = 0.0;
    Bathymetry bottom{1.0};
    std::function<double(double)> h0;
    std::function<double(double)> u0;
    /// Optional initial flow-map displacement (labels need not start at phi = id).
    std::function<double(double)> disp0;
    /// Far-field free-surface level h + xi.
    double surface = 1.0;
    double gravity = 1.0;
};

struct SampledDatum {
    Grid grid;
    EulerianState eulerian;
    LagrangianState lagrangian;
    InitialDepth h0;
};

/// Throws InvalidDatum when min h0 <= 0 on the grid.
SampledDatum sample(const Datum& d, const Grid& g);

/// Surface hump a exp(-((x-c)/w)^2) on still water over `bottom`; `froude` > 0 gives the
/// right-going linear velocity u = froude sqrt(g/H) * hump.
Datum hump_datum(std::string name, double length, Bathymetry bottom, double center, double width,
                 double amplitude, double froude, double surface = 1.0, double gravity = 1.0);

/// Lake at rest: h0 = surface - xi, u0 = 0.
Datum still_datum(std::string name, double length, Bathymetry bottom, double surface = 1.0,
                  double gravity = 1.0);

/// Flat-bottom solitary wave h = depth + a sech^2(kappa (x - x0)), u = c (1 - depth / h),
/// c = sqrt(g (depth + a)), kappa = sqrt(3a) / (2 depth sqrt(depth + a)).
struct SolitaryWave {
    double amplitude;
    double depth;
    double gravity;
    double center;
    double length;

    double speed() const;
    double kappa() const;
    /// Profile translated by c t, wrapped periodically.
    double h(double x, double t = 0.0) const;
    double u(double x, double t = 0.0) const;
};

Datum solitary_datum(const SolitaryWave& w);

/// Large-amplitude depression with outward velocity; loses depth positivity.
Datum depression_probe(double length, double center, double width, double depth_fraction,
                       double velocity);

/// Nearly folded initial map (min phi_x = 1 - fold) with compressive velocity at the fold.
Datum fold_probe(double length, double center, double width, double fold, double velocity);

/// What a built-in scenario prescribes beyond the datum.
struct ScenarioPreset {
    Datum datum;
    std::size_t n;
    double t_end;
    double guard_tol;
};

const std::vector<std::string>& scenario_names();
/// Throws InvalidDatum for unknown names.
ScenarioPreset builtin_scenario(const std::string& name);

}  // namespace gnflow
