#include "gnflow/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "gnflow/errors.hpp"
#include "gnflow/kernels.hpp"

namespace gnflow {

Gravity::Gravity(double value) : g(value)
{
    if (!(value > 0.0) || !std::isfinite(value))
        throw InvalidDatum("gravity must be positive");
}

DepthField::DepthField(Field h) : h_(std::move(h))
{
    const double m = h_.min();
    if (!(m > 0.0))
        throw InvalidDatum("depth must satisfy inf h > 0, got min h = " + std::to_string(m));
}

std::vector<double> SpdTridiagonal::apply(std::span<const double> u) const
{
    std::vector<double> out(u.size());
    kernels::band_apply({diag, off}, u, out);
    return out;
}

double SpdTridiagonal::bilinear(std::span<const double> u, std::span<const double> v) const
{
    // Each coupling appears once with both orderings, so swapping u and v is exact.
    const std::size_t n = diag.size();
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t r = (j + 1) % n;
        s += diag[j] * (u[j] * v[j]) + off[j] * (u[j] * v[r] + u[r] * v[j]);
    }
    return s;
}

CyclicTridiagonalSolver::CyclicTridiagonalSolver(const SpdTridiagonal& m)
    : n_(m.diag.size()), d_(n_), l_(n_ > 0 ? n_ - 1 : 0), w_(n_, 0.0), z_(n_, 0.0),
      b0_(m.diag.empty() ? 0.0 : m.diag[0]), denom_(0.0)
{
    if (n_ < 3)
        throw NotPositiveDefinite("cyclic tridiagonal system needs n >= 3");
    if (!(b0_ > 0.0))
        throw NotPositiveDefinite("nonpositive diagonal entry at node 0");
    const double corner = m.off[n_ - 1];

    // Corner-free matrix A' = A + w w^T / b0 with w = (b0, 0, ..., 0, -corner).
    std::vector<double> a(m.diag);
    a[0] += b0_;
    a[n_ - 1] += corner * corner / b0_;

    d_[0] = a[0];
    for (std::size_t j = 0; j + 1 < n_; ++j) {
        if (!(d_[j] > 0.0))
            throw NotPositiveDefinite("nonpositive pivot at node " + std::to_string(j));
        l_[j] = m.off[j] / d_[j];
        d_[j + 1] = a[j + 1] - m.off[j] * l_[j];
    }
    if (!(d_[n_ - 1] > 0.0))
        throw NotPositiveDefinite("nonpositive pivot at node " + std::to_string(n_ - 1));

    w_[0] = b0_;
    w_[n_ - 1] = -corner;
    z_ = w_;
    solve_banded(z_);
    // A = A' - w w^T / b0 is SPD iff 1 - w^T A'^{-1} w / b0 > 0.
    denom_ = 1.0 - (w_[0] * z_[0] + w_[n_ - 1] * z_[n_ - 1]) / b0_;
    if (!(denom_ > 0.0))
        throw NotPositiveDefinite("rank-one correction is not positive");
}

void CyclicTridiagonalSolver::solve_banded(std::span<double> x) const
{
    for (std::size_t j = 1; j < n_; ++j)
        x[j] -= l_[j - 1] * x[j - 1];
    for (std::size_t j = 0; j < n_; ++j)
        x[j] /= d_[j];
    for (std::size_t j = n_ - 1; j > 0; --j)
        x[j - 1] -= l_[j - 1] * x[j];
}

std::vector<double> CyclicTridiagonalSolver::solve(std::span<const double> rhs) const
{
    std::vector<double> y(rhs.begin(), rhs.end());
    solve_banded(y);
    const double coef = (w_[0] * y[0] + w_[n_ - 1] * y[n_ - 1]) / (b0_ * denom_);
    for (std::size_t j = 0; j < n_; ++j)
        y[j] += coef * z_[j];
    return y;
}

std::vector<double> element_midpoints(std::span<const double> positions, double length)
{
    const std::size_t n = positions.size();
    std::vector<double> mid(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double right = j + 1 < n ? positions[j + 1] : positions[0] + length;
        mid[j] = 0.5 * (positions[j] + right);
    }
    return mid;
}

SpdTridiagonal assemble_p1(const Grid& g, const ElementCoefficients& c)
{
    SpdTridiagonal m{g, std::vector<double>(g.size()), std::vector<double>(g.size())};
    kernels::assemble_p1(c.c0, c.c1, c.c2, g.dx(), m.diag, m.off);
    return m;
}

ElementCoefficients operator_coefficients(const DepthField& h, const Bathymetry& xi)
{
    const Grid& g = h.grid();
    const std::size_t n = g.size();
    std::vector<double> nodes(n);
    for (std::size_t j = 0; j < n; ++j)
        nodes[j] = g.node(j);
    const std::vector<double> mid = element_midpoints(nodes, g.length());
    const std::vector<BottomSample> bottom = xi.eval_at(mid);

    ElementCoefficients c{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
    for (std::size_t j = 0; j < n; ++j) {
        const double hm = 0.5 * (h[j] + h[(j + 1) % n]);
        const double sx = bottom[j].xi_x;
        c.c0[j] = hm * (1.0 + sx * sx);
        c.c1[j] = -0.5 * hm * hm * sx;
        c.c2[j] = hm * hm * hm / 3.0;
    }
    return c;
}

Field apply_A(const DepthField& h, const Bathymetry& xi, const Field& u)
{
    require_same_grid(h.field(), u, "apply_A");
    const Grid& g = u.grid;
    const std::size_t n = g.size();
    const Field xi_x = Field::sample(g, [&xi](double x) { return xi.xi_x(x); });
    const Field ux = deriv(u);

    Field mixed(g);     // h^2 xi_x u / 2
    Field mixed_x(g);   // h^2 xi_x u_x / 2
    Field stiff(g);     // h^3 u_x / 3
    for (std::size_t j = 0; j < n; ++j) {
        const double hh = h[j] * h[j];
        mixed[j] = 0.5 * hh * xi_x[j] * u[j];
        mixed_x[j] = 0.5 * hh * xi_x[j] * ux[j];
        stiff[j] = hh * h[j] * ux[j] / 3.0;
    }
    const Field d_mixed = deriv(mixed);
    const Field d_stiff = deriv(stiff);

    Field out(g);
    for (std::size_t j = 0; j < n; ++j)
        out[j] = h[j] * (1.0 + xi_x[j] * xi_x[j]) * u[j] + d_mixed[j] - mixed_x[j] - d_stiff[j];
    return out;
}

SpdTridiagonal assemble_A(const DepthField& h, const Bathymetry& xi)
{
    return assemble_p1(h.grid(), operator_coefficients(h, xi));
}

std::vector<double> load_vector(const Field& f)
{
    std::vector<double> b(f.size());
    kernels::mass_product(f.values, b, f.grid.dx());
    return b;
}

Field solve_A(const DepthField& h, const Bathymetry& xi, const Field& f)
{
    require_same_grid(h.field(), f, "solve_A");
    const CyclicTridiagonalSolver solver(assemble_A(h, xi));
    return Field(f.grid, solver.solve(load_vector(f)));
}

double coercivity_lower_bound(const DepthField& h, std::span<const double> u)
{
    const Grid& g = h.grid();
    const std::size_t n = g.size();
    ElementCoefficients c{std::vector<double>(n), std::vector<double>(n, 0.0),
                          std::vector<double>(n)};
    for (std::size_t j = 0; j < n; ++j) {
        const double hm = 0.5 * (h[j] + h[(j + 1) % n]);
        c.c0[j] = hm;
        c.c2[j] = hm * hm * hm / 12.0;
    }
    return assemble_p1(g, c).quadratic(u);
}

double p1_h1_norm_squared(const Grid& g, std::span<const double> u)
{
    const std::size_t n = g.size();
    ElementCoefficients c{std::vector<double>(n, 1.0), std::vector<double>(n, 0.0),
                          std::vector<double>(n, 1.0)};
    return assemble_p1(g, c).quadratic(u);
}

double upper_equivalence_constant(const DepthField& h, const Bathymetry& xi)
{
    const ElementCoefficients c = operator_coefficients(h, xi);
    double cmax = 0.0;
    for (std::size_t j = 0; j < c.c0.size(); ++j) {
        const double tr = c.c0[j] + c.c2[j];
        const double df = c.c0[j] - c.c2[j];
        const double lam = 0.5 * (tr + std::sqrt(df * df + 4.0 * c.c1[j] * c.c1[j]));
        cmax = std::max(cmax, lam);
    }
    return cmax;
}

Field random_smooth_field(const Grid& g, std::uint64_t seed, int max_mode, double amplitude)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double mean = normal(rng);
    std::vector<double> a(static_cast<std::size_t>(max_mode));
    std::vector<double> b(static_cast<std::size_t>(max_mode));
    for (int m = 0; m < max_mode; ++m) {
        a[m] = normal(rng) / (m + 1);
        b[m] = normal(rng) / (m + 1);
    }
    const double L = g.length();
    return Field::sample(g, [&](double x) {
        double v = mean;
        for (int m = 0; m < max_mode; ++m) {
            const double k = 2.0 * std::numbers::pi * (m + 1) / L;
            v += a[m] * std::cos(k * x) + b[m] * std::sin(k * x);
        }
        return amplitude * v;
    });
}

CoercivityReport coercivity_report(const DepthField& h, const Bathymetry& xi, std::size_t trials,
                                   std::uint64_t seed)
{
    const Grid& g = h.grid();
    const SpdTridiagonal m = assemble_A(h, xi);
    CoercivityReport r;
    r.trials = trials;
    r.upper_constant = upper_equivalence_constant(h, xi);
    r.min_slack = std::numeric_limits<double>::infinity();
    r.min_slack_quadrature = std::numeric_limits<double>::infinity();
    r.min_lower_ratio = std::numeric_limits<double>::infinity();
    r.max_upper_ratio = 0.0;

    for (std::size_t t = 0; t < trials; ++t) {
        const Field u = random_smooth_field(g, seed + t);
        const double form = m.quadratic(u.values);
        const double lower = coercivity_lower_bound(h, u.values);
        const double h1 = p1_h1_norm_squared(g, u.values);

        const Field ux = deriv(u);
        Field integrand(g);
        for (std::size_t j = 0; j < g.size(); ++j)
            integrand[j] = h[j] * u[j] * u[j] + h[j] * h[j] * h[j] * ux[j] * ux[j] / 12.0;
        const double lower_q = integrate(integrand);
        const double h1_q = std::pow(sobolev_norm(u, SobolevIndex(1.0)), 2);

        r.min_slack = std::min(r.min_slack, (form - lower) / h1);
        r.min_slack_quadrature = std::min(r.min_slack_quadrature, (form - lower_q) / h1_q);
        r.min_lower_ratio = std::min(r.min_lower_ratio, form / lower);
        r.max_upper_ratio = std::max(r.max_upper_ratio, form / h1);
        r.form_values.push_back(form);
        r.lower_values.push_back(lower);
        r.h1_values.push_back(h1);
    }
    return r;
}

}  // namespace gnflow
