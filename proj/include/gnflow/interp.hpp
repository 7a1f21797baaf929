#pragma once

#include <functional>
#include <vector>

#include "gnflow/grid.hpp"

namespace gnflow {

/// Periodic cubic Hermite interpolant of node samples, with slopes from the
/// fourth-order difference and a Fritsch-Carlson limiter on intervals that
/// lie inside a strictly monotone run of the data.
///
/// `drift` is the jump per period: f(x + L) = f(x) + drift. Fields use 0,
/// maps x -> phi(x) use L.
class PeriodicHermite {
public:
    PeriodicHermite(const Grid& g, std::vector<double> values, std::vector<double> slopes,
                    double drift);

    static PeriodicHermite of_field(const Field& f);

    double operator()(double x) const;

    /// Node values with periodic continuation including drift.
    double value_at_node(std::ptrdiff_t k) const;

    const Grid& grid() const { return grid_; }

private:
    Grid grid_;
    std::vector<double> values_;
    // Per-interval end slopes after limiting (interval k = [x_k, x_{k+1}]).
    std::vector<double> left_slope_;
    std::vector<double> right_slope_;
    double drift_;

    friend std::vector<double> invert_on_interpolant(const PeriodicHermite&, const Grid&);
};

/// An orientation-preserving map phi = id + disp of the periodic line.
struct FlowMap {
    Field disp;

    static FlowMap identity(const Grid& g) { return FlowMap{Field(g)}; }
    static FlowMap shift(const Grid& g, double c) { return FlowMap{Field::constant(g, c)}; }

    const Grid& grid() const { return disp.grid; }
    /// phi(x_j)
    std::vector<double> positions() const;
    /// 1 + deriv(disp)
    Field jacobian() const;
    /// Throws NonMonotoneMap unless the discrete derivative and every secant are positive.
    void require_monotone(const char* where) const;
};

/// Samples f(phi(x_j)); f is evaluated exactly.
Field compose(const std::function<double(double)>& f, const FlowMap& phi);

/// Samples f(phi(x_j)) through the periodic Hermite interpolant of f.
Field compose(const Field& f, const FlowMap& phi);

/// psi with phi(psi(x_j)) = x_j, by bracketed root finding on the monotone interpolant of phi.
FlowMap invert_map(const FlowMap& phi);

}  // namespace gnflow
