#include "gnflow/interp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gnflow/errors.hpp"
#include "gnflow/kernels.hpp"

namespace gnflow {

namespace {

int sign(double x) { return (x > 0.0) - (x < 0.0); }

struct Hermite {
    double a, b, ma, mb, h;

    double operator()(double t) const
    {
        const double t2 = t * t;
        const double t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * a + (t3 - 2 * t2 + t) * h * ma + (-2 * t3 + 3 * t2) * b
               + (t3 - t2) * h * mb;
    }

    double slope(double t) const
    {
        const double t2 = t * t;
        return ((6 * t2 - 6 * t) * a + (3 * t2 - 4 * t + 1) * h * ma + (-6 * t2 + 6 * t) * b
                + (3 * t2 - 2 * t) * h * mb)
               / h;
    }
};

}  // namespace

PeriodicHermite::PeriodicHermite(const Grid& g, std::vector<double> values,
                                 std::vector<double> slopes, double drift)
    : grid_(g), values_(std::move(values)), left_slope_(g.size()), right_slope_(g.size()),
      drift_(drift)
{
    const std::size_t n = grid_.size();
    const double dx = grid_.dx();
    std::vector<double> secant(n);
    for (std::size_t k = 0; k < n; ++k)
        secant[k] = (value_at_node(static_cast<std::ptrdiff_t>(k) + 1) - values_[k]) / dx;

    for (std::size_t k = 0; k < n; ++k) {
        double ma = slopes[k];
        double mb = slopes[(k + 1) % n];
        const double d = secant[k];
        const int s = sign(d);
        const bool monotone_run = s != 0 && sign(secant[(k + n - 1) % n]) == s
                                  && sign(secant[(k + 1) % n]) == s;
        if (monotone_run) {
            double alpha = std::max(0.0, ma / d);
            double beta = std::max(0.0, mb / d);
            const double r2 = alpha * alpha + beta * beta;
            if (r2 > 9.0) {
                const double tau = 3.0 / std::sqrt(r2);
                alpha *= tau;
                beta *= tau;
            }
            ma = alpha * d;
            mb = beta * d;
        }
        left_slope_[k] = ma;
        right_slope_[k] = mb;
    }
}

PeriodicHermite PeriodicHermite::of_field(const Field& f)
{
    Field slopes = deriv(f);
    return PeriodicHermite(f.grid, f.values, std::move(slopes.values), 0.0);
}

double PeriodicHermite::value_at_node(std::ptrdiff_t k) const
{
    const auto n = static_cast<std::ptrdiff_t>(grid_.size());
    const std::ptrdiff_t m = (k >= 0) ? k / n : -((-k + n - 1) / n);
    const std::ptrdiff_t r = k - m * n;
    return values_[static_cast<std::size_t>(r)] + static_cast<double>(m) * drift_;
}

double PeriodicHermite::operator()(double x) const
{
    const double L = grid_.length();
    const double dx = grid_.dx();
    const std::size_t n = grid_.size();
    double m = std::floor(x / L);
    double xr = x - m * L;
    if (xr >= L) {
        xr -= L;
        m += 1.0;
    } else if (xr < 0.0) {
        xr += L;
        m -= 1.0;
    }
    // Points on a node return the node value exactly.
    const double nearest = std::round(xr / dx);
    if (std::abs(xr - nearest * dx) <= 1e-14 * dx)
        return value_at_node(static_cast<std::ptrdiff_t>(nearest)) + m * drift_;
    auto k = static_cast<std::size_t>(xr / dx);
    if (k >= n)
        k = n - 1;
    const double t = (xr - static_cast<double>(k) * dx) / dx;
    const Hermite p{values_[k], value_at_node(static_cast<std::ptrdiff_t>(k) + 1), left_slope_[k],
                    right_slope_[k], dx};
    return p(t) + m * drift_;
}

std::vector<double> FlowMap::positions() const
{
    std::vector<double> y(disp.size());
    for (std::size_t j = 0; j < y.size(); ++j)
        y[j] = disp.grid.node(j) + disp[j];
    return y;
}

Field FlowMap::jacobian() const
{
    Field j = deriv(disp);
    for (double& v : j.values)
        v += 1.0;
    return j;
}

void FlowMap::require_monotone(const char* where) const
{
    const Field jac = jacobian();
    const double mj = jac.min();
    if (!(mj > 0.0))
        throw NonMonotoneMap(std::string(where) + ": min phi_x = " + std::to_string(mj) + " <= 0");
    const std::size_t n = disp.size();
    const double dx = disp.grid.dx();
    for (std::size_t k = 0; k < n; ++k) {
        const double secant = dx + disp[(k + 1) % n] - disp[k];
        if (!(secant > 0.0))
            throw NonMonotoneMap(std::string(where) + ": map node values are not increasing");
    }
}

Field compose(const std::function<double(double)>& f, const FlowMap& phi)
{
    Field out(phi.grid());
    const std::vector<double> y = phi.positions();
    kernels::sample(f, y, out.values);
    return out;
}

Field compose(const Field& f, const FlowMap& phi)
{
    require_same_grid(f, phi.disp, "compose");
    phi.require_monotone("compose");
    const PeriodicHermite interp = PeriodicHermite::of_field(f);
    return compose([&interp](double y) { return interp(y); }, phi);
}

std::vector<double> invert_on_interpolant(const PeriodicHermite& p, const Grid& g)
{
    const std::size_t n = g.size();
    const double L = g.length();
    const double dx = g.dx();
    const double y0 = p.value_at_node(0);
    std::vector<double> psi(n);

    for (std::size_t j = 0; j < n; ++j) {
        const double x = g.node(j);
        double m = std::floor((x - y0) / L);
        double xt = x - m * L;
        if (xt >= y0 + L) {
            xt -= L;
            m += 1.0;
        } else if (xt < y0) {
            xt += L;
            m -= 1.0;
        }
        // largest k with Y_k <= xt
        std::size_t lo = 0;
        std::size_t hi = n;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (p.values_[mid] <= xt)
                lo = mid;
            else
                hi = mid;
        }
        const std::size_t k = lo;
        const Hermite c{p.values_[k], p.value_at_node(static_cast<std::ptrdiff_t>(k) + 1),
                        p.left_slope_[k], p.right_slope_[k], dx};

        // Safeguarded Newton on a monotone cubic: bracket [a, b] always holds the root.
        double a = 0.0;
        double b = 1.0;
        double t = (xt - c.a) / (c.b - c.a);
        for (int it = 0; it < 100; ++it) {
            const double r = c(t) - xt;
            if (std::abs(r) <= 1e-15 * L)
                break;
            if (r > 0.0)
                b = t;
            else
                a = t;
            const double slope = c.slope(t) * dx;
            double next = slope > 0.0 ? t - r / slope : 0.5 * (a + b);
            if (!(next > a && next < b))
                next = 0.5 * (a + b);
            if (b - a < 1e-16)
                break;
            t = next;
        }
        psi[j] = static_cast<double>(k) * dx + t * dx + m * L;
    }
    return psi;
}

FlowMap invert_map(const FlowMap& phi)
{
    phi.require_monotone("invert_map");
    const Grid& g = phi.grid();
    const Field jac = phi.jacobian();
    PeriodicHermite interp(g, phi.positions(), jac.values, g.length());
    const std::vector<double> psi = invert_on_interpolant(interp, g);
    Field disp(g);
    for (std::size_t j = 0; j < g.size(); ++j)
        disp[j] = psi[j] - g.node(j);
    return FlowMap{std::move(disp)};
}

}  // namespace gnflow
