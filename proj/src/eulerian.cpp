#include "gnflow/eulerian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gnflow/errors.hpp"

namespace gnflow {

EulerianState EulerianState::make(double t, Field h, Field u)
{
    require_same_grid(h, u, "EulerianState");
    DepthField check(h);
    return EulerianState{t, std::move(h), std::move(u)};
}

StepControl::StepControl(double cfl_value, double dt_max_value) : cfl(cfl_value), dt_max(dt_max_value)
{
    if (!(cfl > 0.0 && cfl <= 1.0))
        throw InvalidDatum("cfl must lie in (0, 1]");
    if (!(dt_max > 0.0))
        throw InvalidDatum("dt_max must be positive");
}

std::vector<double> bottom_at_nodes(const Grid& g, const Bathymetry& xi)
{
    std::vector<double> nodes(g.size());
    for (std::size_t j = 0; j < g.size(); ++j)
        nodes[j] = g.node(j);
    const std::vector<BottomSample> s = xi.eval_at(nodes);
    std::vector<double> out(g.size());
    for (std::size_t j = 0; j < g.size(); ++j)
        out[j] = s[j].xi;
    return out;
}

Field eval_P(const DepthField& h, const Field& u, const Bathymetry& xi, Gravity g)
{
    require_same_grid(h.field(), u, "eval_P");
    const Grid& grid = u.grid;
    const std::size_t n = grid.size();
    std::vector<double> nodes(n);
    for (std::size_t j = 0; j < n; ++j)
        nodes[j] = grid.node(j);
    const std::vector<BottomSample> bottom = xi.eval_at(nodes);

    const Field ux = deriv(u);
    Field surface(grid);   // h + xi
    Field curv(grid);      // h^2 u^2 xi_xx / 2
    Field disp(grid);      // 2 h^3 u_x^2 / 3
    for (std::size_t j = 0; j < n; ++j) {
        const double hh = h[j] * h[j];
        surface[j] = h[j] + bottom[j].xi;
        curv[j] = 0.5 * hh * u[j] * u[j] * bottom[j].xi_xx;
        disp[j] = 2.0 / 3.0 * hh * h[j] * ux[j] * ux[j];
    }
    const Field d_surface = deriv(surface);
    const Field d_curv = deriv(curv);
    const Field d_disp = deriv(disp);

    Field p(grid);
    for (std::size_t j = 0; j < n; ++j) {
        const double sx = bottom[j].xi_x;
        const double sxx = bottom[j].xi_xx;
        p[j] = g.g * h[j] * d_surface[j] + d_curv[j] + d_disp[j] + h[j] * u[j] * u[j] * sx * sxx
               + h[j] * h[j] * sx * ux[j] * ux[j];
    }
    return p;
}

EulerianRhs eulerian_rhs(const EulerianState& s, const Bathymetry& xi, Gravity g)
{
    const DepthField h = s.depth();
    const Field flux = s.h * s.u;
    Field dh = deriv(flux);
    for (double& v : dh.values)
        v = -v;

    const Field ux = deriv(s.u);
    const Field accel = solve_A(h, xi, eval_P(h, s.u, xi, g));
    Field du(s.grid());
    for (std::size_t j = 0; j < du.size(); ++j)
        du[j] = -s.u[j] * ux[j] - accel[j];
    return {std::move(dh), std::move(du)};
}

namespace {

void require_positive_depth(const Field& h, double t, const char* where)
{
    const double m = h.min();
    if (!(m > 0.0))
        throw DepthPositivityLost(std::string(where) + ": min h = " + std::to_string(m) + " <= 0",
                                  t);
}

EulerianState stage(const EulerianState& s, double c, const EulerianRhs& k, double t)
{
    EulerianState out{t, axpy(s.h, c, k.dh), axpy(s.u, c, k.du)};
    require_positive_depth(out.h, t, "RK4 stage");
    return out;
}

}  // namespace

EulerianState step_rk4(const EulerianState& s, double dt, const Bathymetry& xi, Gravity g)
{
    if (!(dt > 0.0))
        throw InvalidDatum("time step must be positive");
    const EulerianRhs k1 = eulerian_rhs(s, xi, g);
    const EulerianRhs k2 = eulerian_rhs(stage(s, 0.5 * dt, k1, s.t + 0.5 * dt), xi, g);
    const EulerianRhs k3 = eulerian_rhs(stage(s, 0.5 * dt, k2, s.t + 0.5 * dt), xi, g);
    const EulerianRhs k4 = eulerian_rhs(stage(s, dt, k3, s.t + dt), xi, g);

    EulerianState out{s.t + dt, Field(s.grid()), Field(s.grid())};
    const double w = dt / 6.0;
    for (std::size_t j = 0; j < s.h.size(); ++j) {
        out.h[j] = s.h[j] + w * (k1.dh[j] + 2.0 * k2.dh[j] + 2.0 * k3.dh[j] + k4.dh[j]);
        out.u[j] = s.u[j] + w * (k1.du[j] + 2.0 * k2.du[j] + 2.0 * k3.du[j] + k4.du[j]);
    }
    for (std::size_t j = 0; j < out.h.size(); ++j)
        if (!std::isfinite(out.h[j]) || !std::isfinite(out.u[j]))
            throw DepthPositivityLost("non-finite state after RK4 step", out.t);
    require_positive_depth(out.h, out.t, "RK4 step");
    return out;
}

double cfl_dt(const EulerianState& s, const StepControl& control, Gravity g)
{
    double speed = 0.0;
    for (std::size_t j = 0; j < s.h.size(); ++j)
        speed = std::max(speed, std::abs(s.u[j]) + std::sqrt(g.g * s.h[j]));
    return std::min(control.dt_max, control.cfl * s.grid().dx() / speed);
}

double eulerian_mass(const EulerianState& s)
{
    double sum = 0.0;
    for (double h : s.h.values)
        sum += h - 1.0;
    return s.grid().dx() * sum;
}

double eulerian_energy(const EulerianState& s, const Bathymetry& xi, Gravity g, double surface)
{
    const std::vector<double> b = bottom_at_nodes(s.grid(), xi);
    double sum = 0.0;
    for (std::size_t j = 0; j < s.h.size(); ++j) {
        const double eta = s.h[j] + b[j];
        sum += 0.5 * s.h[j] * s.u[j] * s.u[j] + 0.5 * g.g * (eta * eta - surface * surface);
    }
    return s.grid().dx() * sum;
}

EdgeDeviation edge_deviation(const Field& h, const Field& u, std::span<const double> xi_values,
                             double surface_level, double fraction)
{
    const std::size_t n = h.size();
    const auto band = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
    EdgeDeviation d;
    auto visit = [&](std::size_t j) {
        d.surface = std::max(d.surface, std::abs(h[j] + xi_values[j] - surface_level));
        d.velocity = std::max(d.velocity, std::abs(u[j]));
    };
    for (std::size_t j = 0; j < band && j < n; ++j) {
        visit(j);
        visit(n - 1 - j);
    }
    return d;
}

}  // namespace gnflow
