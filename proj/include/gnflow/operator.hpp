#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gnflow/bathymetry.hpp"
#include "gnflow/grid.hpp"

namespace gnflow {

struct Gravity {
    double g;
    explicit Gravity(double value = 1.0);
};

/// Water depth with min h > 0.
class DepthField {
public:
    /// Throws InvalidDatum when min h <= 0.
    explicit DepthField(Field h);

    const Field& field() const { return h_; }
    const Grid& grid() const { return h_.grid; }
    double operator[](std::size_t j) const { return h_[j]; }
    std::size_t size() const { return h_.size(); }

private:
    Field h_;
};

/// Symmetric cyclic tridiagonal matrix: diag[j] on the diagonal, off[j] couples
/// nodes j and j+1 (mod n); off[n-1] is the periodic corner coupling.
struct SpdTridiagonal {
    Grid grid;
    std::vector<double> diag;
    std::vector<double> off;

    std::vector<double> apply(std::span<const double> u) const;
    /// v^T M u
    double bilinear(std::span<const double> u, std::span<const double> v) const;
    double quadratic(std::span<const double> u) const { return bilinear(u, u); }
};

/// Direct solver for an SPD cyclic tridiagonal matrix: LDL^T of the matrix with
/// the corner removed plus a rank-one Sherman-Morrison correction. Immutable and
/// reusable across right-hand sides.
class CyclicTridiagonalSolver {
public:
    /// Throws NotPositiveDefinite on a nonpositive pivot or a nonpositive
    /// Sherman-Morrison denominator.
    explicit CyclicTridiagonalSolver(const SpdTridiagonal& m);

    std::vector<double> solve(std::span<const double> rhs) const;

private:
    void solve_banded(std::span<double> x) const;

    std::size_t n_;
    std::vector<double> d_;  // pivots of the corner-free matrix
    std::vector<double> l_;  // unit lower bidiagonal multipliers
    std::vector<double> w_;  // rank-one vector (nonzero at 0 and n-1)
    std::vector<double> z_;  // corner-free solve of w
    double b0_;
    double denom_;
};

/// Element coefficients of int c0 u v + c1 (u v_x + u_x v) + c2 u_x v_x, one triple per
/// element [x_j, x_{j+1}].
struct ElementCoefficients {
    std::vector<double> c0, c1, c2;
};

/// Element midpoints 0.5 (y_j + y_{j+1}) of node positions y with y_n = y_0 + L.
std::vector<double> element_midpoints(std::span<const double> positions, double length);

SpdTridiagonal assemble_p1(const Grid& g, const ElementCoefficients& c);

/// Midpoint-sampled coefficients of the A_{h,xi} bilinear form:
/// c0 = h(1+xi_x^2), c1 = -h^2 xi_x / 2, c2 = h^3 / 3.
ElementCoefficients operator_coefficients(const DepthField& h, const Bathymetry& xi);

/// Strong form h(1+xi_x^2)u + [h^2 xi_x u/2]_x - h^2 xi_x u_x/2 - [h^3 u_x/3]_x, every
/// derivative taken with deriv().
Field apply_A(const DepthField& h, const Bathymetry& xi, const Field& u);

/// P1 Galerkin assembly of the bilinear form.
SpdTridiagonal assemble_A(const DepthField& h, const Bathymetry& xi);

/// P1 load vector of nodal data f (consistent mass).
std::vector<double> load_vector(const Field& f);

/// Solves the assembled system against the load vector of f.
Field solve_A(const DepthField& h, const Bathymetry& xi, const Field& f);

/// int h u^2 + h^3 u_x^2 / 12 on the P1 interpolant of u (same midpoint h as assemble_A).
double coercivity_lower_bound(const DepthField& h, std::span<const double> u);

/// ||u||^2_{H^1} of the P1 interpolant.
double p1_h1_norm_squared(const Grid& g, std::span<const double> u);

/// Smallest C with B(u,u) <= C ||u||^2_{H^1} for every P1 function: max over elements of
/// the larger eigenvalue of [[c0, c1], [c1, c2]].
double upper_equivalence_constant(const DepthField& h, const Bathymetry& xi);

struct CoercivityReport {
    std::size_t trials = 0;
    /// min over trials of [B(u,u) - lower(u)] / ||u||^2_{H^1}
    double min_slack = 0.0;
    /// same, lower bound and H^1 norm evaluated with integrate/deriv/sobolev_norm
    double min_slack_quadrature = 0.0;
    /// min over trials of B(u,u) / lower(u)
    double min_lower_ratio = 0.0;
    /// max over trials of B(u,u) / ||u||^2_{H^1}
    double max_upper_ratio = 0.0;
    double upper_constant = 0.0;
    std::vector<double> form_values;
    std::vector<double> lower_values;
    std::vector<double> h1_values;
};

/// Random band-limited smooth field (modes 1..max_mode plus mean), deterministic in seed.
Field random_smooth_field(const Grid& g, std::uint64_t seed, int max_mode = 8,
                          double amplitude = 1.0);

CoercivityReport coercivity_report(const DepthField& h, const Bathymetry& xi, std::size_t trials,
                                   std::uint64_t seed = 12345);

}  // namespace gnflow
