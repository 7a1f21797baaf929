#include "gnflow/kernels.hpp"

#include <cstddef>

namespace gnflow::kernels {

namespace {

// Stencil offsets stay within one period of range.
inline std::size_t wrap(std::ptrdiff_t j, std::size_t n)
{
    const auto m = static_cast<std::ptrdiff_t>(n);
    return static_cast<std::size_t>(j < 0 ? j + m : (j >= m ? j - m : j));
}

inline double deriv4_at(std::span<const double> f, std::size_t j, double inv12dx)
{
    const std::size_t n = f.size();
    const auto i = static_cast<std::ptrdiff_t>(j);
    return (f[wrap(i - 2, n)] - 8.0 * f[wrap(i - 1, n)] + 8.0 * f[wrap(i + 1, n)]
            - f[wrap(i + 2, n)])
           * inv12dx;
}

inline double mass_at(std::span<const double> f, std::size_t j, double w)
{
    const std::size_t n = f.size();
    const auto i = static_cast<std::ptrdiff_t>(j);
    return w * (f[wrap(i - 1, n)] + 4.0 * f[j] + f[wrap(i + 1, n)]);
}

inline void p1_at(std::span<const double> c0, std::span<const double> c1,
                  std::span<const double> c2, double dx, std::size_t j, double& diag,
                  double& off)
{
    const std::size_t n = c0.size();
    const std::size_t l = wrap(static_cast<std::ptrdiff_t>(j) - 1, n);
    diag = (c0[l] + c0[j]) * dx / 3.0 + c1[l] - c1[j] + (c2[l] + c2[j]) / dx;
    off = c0[j] * dx / 6.0 - c2[j] / dx;
}

inline double band_at(BandView m, std::span<const double> u, std::size_t j)
{
    const std::size_t n = u.size();
    const std::size_t l = wrap(static_cast<std::ptrdiff_t>(j) - 1, n);
    const std::size_t r = wrap(static_cast<std::ptrdiff_t>(j) + 1, n);
    return m.off[l] * u[l] + m.diag[j] * u[j] + m.off[j] * u[r];
}

}  // namespace

namespace serial {

void deriv4(std::span<const double> f, std::span<double> out, double dx)
{
    const double inv = 1.0 / (12.0 * dx);
    for (std::size_t j = 0; j < f.size(); ++j)
        out[j] = deriv4_at(f, j, inv);
}

void mass_product(std::span<const double> f, std::span<double> out, double dx)
{
    const double w = dx / 6.0;
    for (std::size_t j = 0; j < f.size(); ++j)
        out[j] = mass_at(f, j, w);
}

void assemble_p1(std::span<const double> c0, std::span<const double> c1,
                 std::span<const double> c2, double dx, std::span<double> diag,
                 std::span<double> off)
{
    for (std::size_t j = 0; j < c0.size(); ++j)
        p1_at(c0, c1, c2, dx, j, diag[j], off[j]);
}

void band_apply(BandView m, std::span<const double> u, std::span<double> out)
{
    for (std::size_t j = 0; j < u.size(); ++j)
        out[j] = band_at(m, u, j);
}

void sample(const std::function<double(double)>& f, std::span<const double> points,
            std::span<double> out)
{
    for (std::size_t j = 0; j < points.size(); ++j)
        out[j] = f(points[j]);
}

}  // namespace serial

namespace omp {

void deriv4(std::span<const double> f, std::span<double> out, double dx)
{
    const double inv = 1.0 / (12.0 * dx);
    const auto n = static_cast<std::ptrdiff_t>(f.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j)
        out[j] = deriv4_at(f, static_cast<std::size_t>(j), inv);
}

void mass_product(std::span<const double> f, std::span<double> out, double dx)
{
    const double w = dx / 6.0;
    const auto n = static_cast<std::ptrdiff_t>(f.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j)
        out[j] = mass_at(f, static_cast<std::size_t>(j), w);
}

void assemble_p1(std::span<const double> c0, std::span<const double> c1,
                 std::span<const double> c2, double dx, std::span<double> diag,
                 std::span<double> off)
{
    const auto n = static_cast<std::ptrdiff_t>(c0.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        const auto k = static_cast<std::size_t>(j);
        p1_at(c0, c1, c2, dx, k, diag[k], off[k]);
    }
}

void band_apply(BandView m, std::span<const double> u, std::span<double> out)
{
    const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j)
        out[j] = band_at(m, u, static_cast<std::size_t>(j));
}

void sample(const std::function<double(double)>& f, std::span<const double> points,
            std::span<double> out)
{
    const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j)
        out[j] = f(points[j]);
}

}  // namespace omp

void deriv4(std::span<const double> f, std::span<double> out, double dx)
{
    if (f.size() >= kParallelMinSize)
        omp::deriv4(f, out, dx);
    else
        serial::deriv4(f, out, dx);
}

void mass_product(std::span<const double> f, std::span<double> out, double dx)
{
    if (f.size() >= kParallelMinSize)
        omp::mass_product(f, out, dx);
    else
        serial::mass_product(f, out, dx);
}

void assemble_p1(std::span<const double> c0, std::span<const double> c1,
                 std::span<const double> c2, double dx, std::span<double> diag,
                 std::span<double> off)
{
    if (c0.size() >= kParallelMinSize)
        omp::assemble_p1(c0, c1, c2, dx, diag, off);
    else
        serial::assemble_p1(c0, c1, c2, dx, diag, off);
}

void band_apply(BandView m, std::span<const double> u, std::span<double> out)
{
    if (u.size() >= kParallelMinSize)
        omp::band_apply(m, u, out);
    else
        serial::band_apply(m, u, out);
}

void sample(const std::function<double(double)>& f, std::span<const double> points,
            std::span<double> out)
{
    if (points.size() >= kParallelMinSize)
        omp::sample(f, points, out);
    else
        serial::sample(f, points, out);
}

}  // namespace gnflow::kernels
