#include "gnflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <string>

#include <fftw3.h>

#include "gnflow/errors.hpp"
#include "gnflow/kernels.hpp"

namespace gnflow {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// FFTW planning is not thread-safe; execution on distinct arrays is.
std::mutex& fftw_planner_mutex()
{
    static std::mutex m;
    return m;
}

}  // namespace

Grid::Grid(double length, std::size_t n) : length_(length), n_(n), dx_(length / static_cast<double>(n))
{
    if (!(length > 0.0) || !std::isfinite(length))
        throw InvalidDatum("grid length must be positive and finite");
    if (n < 16 || !is_power_of_two(n))
        throw InvalidDatum("grid size must be a power of two >= 16, got " + std::to_string(n));
}

Field::Field(const Grid& g, std::vector<double> v) : grid(g), values(std::move(v))
{
    if (values.size() != grid.size())
        throw InvalidDatum("field length " + std::to_string(values.size())
                           + " does not match grid size " + std::to_string(grid.size()));
    for (double x : values)
        if (!std::isfinite(x))
            throw InvalidDatum("field contains a non-finite value");
}

Field Field::constant(const Grid& g, double c)
{
    Field f(g);
    std::fill(f.values.begin(), f.values.end(), c);
    return f;
}

Field Field::sample(const Grid& g, const std::function<double(double)>& fn)
{
    Field f(g);
    std::vector<double> nodes(g.size());
    for (std::size_t j = 0; j < g.size(); ++j)
        nodes[j] = g.node(j);
    kernels::sample(fn, nodes, f.values);
    return f;
}

double Field::min() const { return *std::min_element(values.begin(), values.end()); }
double Field::max() const { return *std::max_element(values.begin(), values.end()); }

double Field::max_abs() const
{
    double m = 0.0;
    for (double x : values)
        m = std::max(m, std::abs(x));
    return m;
}

SobolevIndex::SobolevIndex(double value) : s(value)
{
    if (!std::isfinite(value) || value < 0.0)
        throw InvalidDatum("Sobolev index must be finite and >= 0");
}

void require_same_grid(const Field& a, const Field& b, const char* where)
{
    if (!(a.grid == b.grid))
        throw GridMismatch(std::string(where) + ": fields live on different grids");
}

Field deriv(const Field& f)
{
    Field out(f.grid);
    kernels::deriv4(f.values, out.values, f.grid.dx());
    return out;
}

double integrate(const Grid& g, std::span<const double> f)
{
    double sum = 0.0;
    for (double x : f)
        sum += x;
    return g.dx() * sum;
}

double integrate(const Field& f) { return integrate(f.grid, f.values); }

double wavenumber(const Grid& g, std::size_t k)
{
    const std::size_t n = g.size();
    const double m = k <= n / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
    return 2.0 * std::numbers::pi * m / g.length();
}

double sobolev_norm(const Field& f, SobolevIndex s)
{
    const std::size_t n = f.size();
    std::vector<double> in(f.values);
    std::vector<std::complex<double>> out(n / 2 + 1);
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                    reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }

    // r2c stores bins 0..n/2; bins 1..n/2-1 stand for a conjugate pair.
    const double inv_n = 1.0 / static_cast<double>(n);
    double sum = 0.0;
    for (std::size_t k = 0; k <= n / 2; ++k) {
        const double kappa = wavenumber(f.grid, k);
        const double weight = std::pow(1.0 + kappa * kappa, s.s);
        const double mag2 = std::norm(out[k] * inv_n);
        const double mult = (k == 0 || k == n / 2) ? 1.0 : 2.0;
        sum += mult * weight * mag2;
    }
    return std::sqrt(f.grid.length() * sum);
}

Field operator+(const Field& a, const Field& b)
{
    require_same_grid(a, b, "operator+");
    Field out(a.grid);
    for (std::size_t j = 0; j < a.size(); ++j)
        out[j] = a[j] + b[j];
    return out;
}

Field operator-(const Field& a, const Field& b)
{
    require_same_grid(a, b, "operator-");
    Field out(a.grid);
    for (std::size_t j = 0; j < a.size(); ++j)
        out[j] = a[j] - b[j];
    return out;
}

Field operator*(const Field& a, const Field& b)
{
    require_same_grid(a, b, "operator*");
    Field out(a.grid);
    for (std::size_t j = 0; j < a.size(); ++j)
        out[j] = a[j] * b[j];
    return out;
}

Field operator*(double c, const Field& a)
{
    Field out(a.grid);
    for (std::size_t j = 0; j < a.size(); ++j)
        out[j] = c * a[j];
    return out;
}

Field axpy(const Field& a, double c, const Field& b)
{
    require_same_grid(a, b, "axpy");
    Field out(a.grid);
    for (std::size_t j = 0; j < a.size(); ++j)
        out[j] = a[j] + c * b[j];
    return out;
}

double l2_norm(const Field& f)
{
    double sum = 0.0;
    for (double x : f.values)
        sum += x * x;
    return std::sqrt(f.grid.dx() * sum);
}

}  // namespace gnflow
