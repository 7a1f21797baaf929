#pragma once

#include <span>
#include <vector>

#include "gnflow/bathymetry.hpp"
#include "gnflow/grid.hpp"
#include "gnflow/operator.hpp"

namespace gnflow {

/// (h, u) on the grid at time t.
struct EulerianState {
    double t = 0.0;
    Field h;
    Field u;

    /// Throws InvalidDatum when min h <= 0 or the fields differ in grid.
    static EulerianState make(double t, Field h, Field u);

    const Grid& grid() const { return h.grid; }
    DepthField depth() const { return DepthField(h); }
};

struct StepControl {
    double cfl = 0.5;
    double dt_max = 1.0;
    StepControl() = default;
    /// Throws InvalidDatum unless 0 < cfl <= 1 and dt_max > 0.
    StepControl(double cfl_value, double dt_max_value);
};

/// P(h,u,xi) = g h (h + xi)_x + [h^2 u^2 xi_xx / 2]_x + [2 h^3 u_x^2 / 3]_x
///           + h u^2 xi_x xi_xx + h^2 xi_x u_x^2.
/// The two gravity terms g h h_x + g h xi_x are evaluated together with xi sampled at the
/// nodes so the lake at rest cancels to rounding.
Field eval_P(const DepthField& h, const Field& u, const Bathymetry& xi, Gravity g);

struct EulerianRhs {
    Field dh;
    Field du;
};

/// dh = -(h u)_x, du = -u u_x - A^{-1} P.
EulerianRhs eulerian_rhs(const EulerianState& s, const Bathymetry& xi, Gravity g);

/// Classical RK4. Throws DepthPositivityLost if min h <= 0 at any stage or after the step.
EulerianState step_rk4(const EulerianState& s, double dt, const Bathymetry& xi, Gravity g);

/// min(dt_max, cfl dx / max_j(|u_j| + sqrt(g h_j)))
double cfl_dt(const EulerianState& s, const StepControl& control, Gravity g);

/// int (h - 1) dx
double eulerian_mass(const EulerianState& s);

/// int h u^2 / 2 + g ((h + xi)^2 - surface^2) / 2 dx
double eulerian_energy(const EulerianState& s, const Bathymetry& xi, Gravity g, double surface);

/// Guard band: the outer `fraction` of nodes at each edge of [0, L).
struct EdgeDeviation {
    double surface = 0.0;  // max |h + xi - surface_level|
    double velocity = 0.0; // max |u|
    double max() const { return surface > velocity ? surface : velocity; }
};

/// xi_values are the bottom heights at the same nodes as h and u.
EdgeDeviation edge_deviation(const Field& h, const Field& u, std::span<const double> xi_values,
                             double surface_level, double fraction = 0.1);

/// Bottom heights at the grid nodes.
std::vector<double> bottom_at_nodes(const Grid& g, const Bathymetry& xi);

}  // namespace gnflow
