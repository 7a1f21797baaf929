#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gnflow {

/// Uniform periodic mesh on [0, L) with nodes x_j = j*dx.
class Grid {
public:
    /// Requires L > 0 and n a power of two, n >= 16.
    Grid(double length, std::size_t n);

    double length() const { return length_; }
    std::size_t size() const { return n_; }
    double dx() const { return dx_; }
    double node(std::size_t j) const { return static_cast<double>(j) * dx_; }

    /// Same grid with n doubled.
    Grid refined() const { return Grid(length_, 2 * n_); }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    double length_;
    std::size_t n_;
    double dx_;
};

/// Node samples of a periodic function.
struct Field {
    Grid grid;
    std::vector<double> values;

    explicit Field(const Grid& g) : grid(g), values(g.size(), 0.0) {}
    /// Throws InvalidDatum on length mismatch or non-finite entries.
    Field(const Grid& g, std::vector<double> v);

    static Field constant(const Grid& g, double c);
    static Field sample(const Grid& g, const std::function<double(double)>& f);

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t j) { return values[j]; }
    double operator[](std::size_t j) const { return values[j]; }
    std::span<const double> view() const { return values; }
    std::span<double> view() { return values; }

    double min() const;
    double max() const;
    double max_abs() const;
};

/// Regularity index s >= 0 of the discrete H^s norm.
struct SobolevIndex {
    double s;
    explicit SobolevIndex(double value);
};

/// Throws GridMismatch unless both fields live on the same grid.
void require_same_grid(const Field& a, const Field& b, const char* where);

/// Fourth-order centered periodic difference.
Field deriv(const Field& f);

/// Periodic trapezoid rule dx * sum(f).
double integrate(const Field& f);
double integrate(const Grid& g, std::span<const double> f);

/// sqrt( L * sum_k (1 + kappa_k^2)^s |fhat_k|^2 ) with fhat the DFT normalised by 1/n,
/// so that s = 0 gives sqrt(integrate(f*f)).
double sobolev_norm(const Field& f, SobolevIndex s);

/// Angular wavenumber of DFT bin k (signed, Nyquist bin taken positive).
double wavenumber(const Grid& g, std::size_t k);

// Pointwise helpers used throughout the solvers.
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(const Field& a, const Field& b);
Field operator*(double c, const Field& a);
/// a + c*b
Field axpy(const Field& a, double c, const Field& b);
/// sqrt(integrate(f^2))
double l2_norm(const Field& f);

}  // namespace gnflow
