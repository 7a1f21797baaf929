#pragma once

#include "gnflow/bathymetry.hpp"
#include "gnflow/eulerian.hpp"
#include "gnflow/grid.hpp"
#include "gnflow/interp.hpp"
#include "gnflow/operator.hpp"

namespace gnflow {

/// Flow map phi = id + disp and its velocity phi_t, in label coordinates.
struct LagrangianState {
    double t = 0.0;
    Field disp;
    Field vel;

    /// phi = id, phi_t = u0.
    static LagrangianState at_rest_map(double t, const Field& u0);

    const Grid& grid() const { return disp.grid; }
    FlowMap map() const { return FlowMap{disp}; }
    /// 1 + deriv(disp); throws NonMonotoneMap unless strictly positive.
    Field jacobian() const;
};

/// Depth at t = 0, carried unchanged along a trajectory.
struct InitialDepth {
    DepthField h0;
};

/// (f_x / phi_x): the conjugated derivative R_phi d/dx R_phi^{-1}.
Field conj_deriv(const LagrangianState& s, const Field& f);

/// h o phi = h0 / phi_x.
Field lagrangian_depth(const LagrangianState& s, const InitialDepth& h0);

/// Midpoint coefficients of the bilinear form pulled back by y = phi(x):
/// w0 = h0 (1 + xi_x(phi)^2), w1 = -(h0/phi_x)^2 xi_x(phi) / 2, w2 = h0^3 / (3 phi_x^4).
ElementCoefficients conjugated_coefficients(const LagrangianState& s, const InitialDepth& h0,
                                            const Bathymetry& xi);

SpdTridiagonal assemble_A_conjugated(const LagrangianState& s, const InitialDepth& h0,
                                     const Bathymetry& xi);

/// Load vector of a Lagrangian-coordinate right-hand side r: P1 load of r * phi_x.
std::vector<double> conjugated_load(const LagrangianState& s, const Field& r);

/// Solves the conjugated system: returns (A^{-1} (r o phi^{-1})) o phi.
Field solve_A_conjugated(const LagrangianState& s, const InitialDepth& h0, const Bathymetry& xi,
                         const Field& r);

/// R_phi P(h, u, xi) evaluated in label coordinates with v = u o phi; no map inversion.
Field eval_P_conjugated(const LagrangianState& s, const Field& v, const InitialDepth& h0,
                        const Bathymetry& xi, Gravity g);

/// phi_tt = F(phi, phi_t, h0, xi)
Field eval_F(const LagrangianState& s, const InitialDepth& h0, const Bathymetry& xi, Gravity g);

/// Classical RK4 on (disp, vel). Throws DiffeoLost if min phi_x <= 0 at any stage or after
/// the step.
LagrangianState step_rk4_lagrangian(const LagrangianState& s, double dt, const InitialDepth& h0,
                                    const Bathymetry& xi, Gravity g);

/// h = (h0/phi_x) o phi^{-1}, u = phi_t o phi^{-1}.
EulerianState to_eulerian(const LagrangianState& s, const InitialDepth& h0);

/// int (h0 - phi_x) dx, equal to int (h - 1) dy.
double lagrangian_mass(const LagrangianState& s, const InitialDepth& h0);

/// Energy diagnostic of eulerian_energy evaluated in label coordinates.
double lagrangian_energy(const LagrangianState& s, const InitialDepth& h0, const Bathymetry& xi,
                         Gravity g, double surface);

}  // namespace gnflow
