#include "gnflow/lagrangian.hpp"

#include <cmath>
#include <string>

#include "gnflow/errors.hpp"
#include "gnflow/kernels.hpp"

namespace gnflow {

LagrangianState LagrangianState::at_rest_map(double t, const Field& u0)
{
    return LagrangianState{t, Field(u0.grid), u0};
}

Field LagrangianState::jacobian() const
{
    Field j = map().jacobian();
    const double m = j.min();
    if (!(m > 0.0))
        throw NonMonotoneMap("flow map left the diffeomorphism group: min phi_x = "
                             + std::to_string(m));
    return j;
}

namespace {

Field conj_deriv_with(const Field& jac, const Field& f)
{
    Field d = deriv(f);
    for (std::size_t j = 0; j < d.size(); ++j)
        d[j] /= jac[j];
    return d;
}

}  // namespace

Field conj_deriv(const LagrangianState& s, const Field& f)
{
    require_same_grid(s.disp, f, "conj_deriv");
    return conj_deriv_with(s.jacobian(), f);
}

Field lagrangian_depth(const LagrangianState& s, const InitialDepth& h0)
{
    require_same_grid(s.disp, h0.h0.field(), "lagrangian_depth");
    const Field jac = s.jacobian();
    Field eta(s.grid());
    for (std::size_t j = 0; j < eta.size(); ++j)
        eta[j] = h0.h0[j] / jac[j];
    return eta;
}

ElementCoefficients conjugated_coefficients(const LagrangianState& s, const InitialDepth& h0,
                                            const Bathymetry& xi)
{
    require_same_grid(s.disp, h0.h0.field(), "assemble_A_conjugated");
    s.jacobian();
    const Grid& g = s.grid();
    const std::size_t n = g.size();
    const double dx = g.dx();
    const std::vector<double> mid = element_midpoints(s.map().positions(), g.length());
    const std::vector<BottomSample> bottom = xi.eval_at(mid);

    ElementCoefficients c{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t r = (j + 1) % n;
        const double jac = 1.0 + (s.disp[r] - s.disp[j]) / dx;
        if (!(jac > 0.0))
            throw NonMonotoneMap("flow map element " + std::to_string(j) + " is folded");
        const double hm = 0.5 * (h0.h0[j] + h0.h0[r]);
        const double eta = hm / jac;
        const double jac2 = jac * jac;
        const double sx = bottom[j].xi_x;
        c.c0[j] = hm * (1.0 + sx * sx);
        c.c1[j] = -0.5 * eta * eta * sx;
        c.c2[j] = hm * hm * hm / (3.0 * (jac2 * jac2));
    }
    return c;
}

SpdTridiagonal assemble_A_conjugated(const LagrangianState& s, const InitialDepth& h0,
                                     const Bathymetry& xi)
{
    return assemble_p1(s.grid(), conjugated_coefficients(s, h0, xi));
}

std::vector<double> conjugated_load(const LagrangianState& s, const Field& r)
{
    require_same_grid(s.disp, r, "conjugated_load");
    const Field jac = s.jacobian();
    return load_vector(r * jac);
}

Field solve_A_conjugated(const LagrangianState& s, const InitialDepth& h0, const Bathymetry& xi,
                         const Field& r)
{
    const CyclicTridiagonalSolver solver(assemble_A_conjugated(s, h0, xi));
    return Field(s.grid(), solver.solve(conjugated_load(s, r)));
}

Field eval_P_conjugated(const LagrangianState& s, const Field& v, const InitialDepth& h0,
                        const Bathymetry& xi, Gravity g)
{
    require_same_grid(s.disp, v, "eval_P_conjugated");
    const Grid& grid = s.grid();
    const std::size_t n = grid.size();
    const Field jac = s.jacobian();
    const std::vector<BottomSample> bottom = xi.eval_at(s.map().positions());

    Field eta(grid);
    for (std::size_t j = 0; j < n; ++j)
        eta[j] = h0.h0[j] / jac[j];
    const Field vx = conj_deriv_with(jac, v);

    Field surface(grid);
    Field curv(grid);
    Field disp(grid);
    for (std::size_t j = 0; j < n; ++j) {
        const double ee = eta[j] * eta[j];
        surface[j] = eta[j] + bottom[j].xi;
        curv[j] = 0.5 * ee * v[j] * v[j] * bottom[j].xi_xx;
        disp[j] = 2.0 / 3.0 * ee * eta[j] * vx[j] * vx[j];
    }
    const Field d_surface = conj_deriv_with(jac, surface);
    const Field d_curv = conj_deriv_with(jac, curv);
    const Field d_disp = conj_deriv_with(jac, disp);

    Field p(grid);
    for (std::size_t j = 0; j < n; ++j) {
        const double sx = bottom[j].xi_x;
        const double sxx = bottom[j].xi_xx;
        p[j] = g.g * eta[j] * d_surface[j] + d_curv[j] + d_disp[j]
               + eta[j] * v[j] * v[j] * sx * sxx + eta[j] * eta[j] * sx * vx[j] * vx[j];
    }
    return p;
}

Field eval_F(const LagrangianState& s, const InitialDepth& h0, const Bathymetry& xi, Gravity g)
{
    Field z = solve_A_conjugated(s, h0, xi, eval_P_conjugated(s, s.vel, h0, xi, g));
    for (double& v : z.values)
        v = -v;
    return z;
}

namespace {

struct LagrangianRhs {
    Field ddisp;
    Field dvel;
};

LagrangianRhs lagrangian_rhs(const LagrangianState& s, const InitialDepth& h0,
                             const Bathymetry& xi, Gravity g)
{
    try {
        return {s.vel, eval_F(s, h0, xi, g)};
    } catch (const NonMonotoneMap& e) {
        throw DiffeoLost(std::string("RK4 stage: ") + e.what(), s.t);
    }
}

LagrangianState stage(const LagrangianState& s, double c, const LagrangianRhs& k, double t)
{
    return LagrangianState{t, axpy(s.disp, c, k.ddisp), axpy(s.vel, c, k.dvel)};
}

}  // namespace

LagrangianState step_rk4_lagrangian(const LagrangianState& s, double dt, const InitialDepth& h0,
                                    const Bathymetry& xi, Gravity g)
{
    if (!(dt > 0.0))
        throw InvalidDatum("time step must be positive");
    const LagrangianRhs k1 = lagrangian_rhs(s, h0, xi, g);
    const LagrangianRhs k2 = lagrangian_rhs(stage(s, 0.5 * dt, k1, s.t + 0.5 * dt), h0, xi, g);
    const LagrangianRhs k3 = lagrangian_rhs(stage(s, 0.5 * dt, k2, s.t + 0.5 * dt), h0, xi, g);
    const LagrangianRhs k4 = lagrangian_rhs(stage(s, dt, k3, s.t + dt), h0, xi, g);

    LagrangianState out{s.t + dt, Field(s.grid()), Field(s.grid())};
    const double w = dt / 6.0;
    for (std::size_t j = 0; j < s.disp.size(); ++j) {
        out.disp[j] = s.disp[j]
                      + w * (k1.ddisp[j] + 2.0 * k2.ddisp[j] + 2.0 * k3.ddisp[j] + k4.ddisp[j]);
        out.vel[j] = s.vel[j] + w * (k1.dvel[j] + 2.0 * k2.dvel[j] + 2.0 * k3.dvel[j] + k4.dvel[j]);
    }
    for (std::size_t j = 0; j < out.disp.size(); ++j)
        if (!std::isfinite(out.disp[j]) || !std::isfinite(out.vel[j]))
            throw DiffeoLost("non-finite state after RK4 step", out.t);
    const double mj = out.map().jacobian().min();
    if (!(mj > 0.0))
        throw DiffeoLost("RK4 step: min phi_x = " + std::to_string(mj) + " <= 0", out.t);
    return out;
}

EulerianState to_eulerian(const LagrangianState& s, const InitialDepth& h0)
{
    const FlowMap inv = invert_map(s.map());
    const Field eta = lagrangian_depth(s, h0);
    return EulerianState::make(s.t, compose(eta, inv), compose(s.vel, inv));
}

double lagrangian_mass(const LagrangianState& s, const InitialDepth& h0)
{
    // phi_x = 1 + deriv(disp) and sum(deriv(disp)) vanishes, but keep the literal form.
    const Field jac = s.map().jacobian();
    double sum = 0.0;
    for (std::size_t j = 0; j < jac.size(); ++j)
        sum += h0.h0[j] - jac[j];
    return s.grid().dx() * sum;
}

double lagrangian_energy(const LagrangianState& s, const InitialDepth& h0, const Bathymetry& xi,
                         Gravity g, double surface)
{
    const Field jac = s.jacobian();
    const std::vector<BottomSample> bottom = xi.eval_at(s.map().positions());
    double sum = 0.0;
    for (std::size_t j = 0; j < jac.size(); ++j) {
        const double eta = h0.h0[j] / jac[j];
        const double level = eta + bottom[j].xi;
        sum += (0.5 * eta * s.vel[j] * s.vel[j] + 0.5 * g.g * (level * level - surface * surface))
               * jac[j];
    }
    return s.grid().dx() * sum;
}

}  // namespace gnflow
