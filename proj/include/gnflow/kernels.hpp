#pragma once

// Data-parallel inner loops. Every kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::omp; both produce
// bitwise-identical output (no reductions), so the dispatchers below may pick
// either without affecting determinism.

#include <cstddef>
#include <functional>
#include <span>

namespace gnflow::kernels {

/// Below this size the dispatchers always run the serial reference.
inline constexpr std::size_t kParallelMinSize = 4096;

/// Coefficients of a cyclic tridiagonal symmetric matrix. off[j] couples j and j+1 (mod n).
struct BandView {
    std::span<const double> diag;
    std::span<const double> off;
};

namespace serial {
void deriv4(std::span<const double> f, std::span<double> out, double dx);
void mass_product(std::span<const double> f, std::span<double> out, double dx);
void assemble_p1(std::span<const double> c0, std::span<const double> c1,
                 std::span<const double> c2, double dx, std::span<double> diag,
                 std::span<double> off);
void band_apply(BandView m, std::span<const double> u, std::span<double> out);
void sample(const std::function<double(double)>& f, std::span<const double> points,
            std::span<double> out);
}  // namespace serial

namespace omp {
void deriv4(std::span<const double> f, std::span<double> out, double dx);
void mass_product(std::span<const double> f, std::span<double> out, double dx);
void assemble_p1(std::span<const double> c0, std::span<const double> c1,
                 std::span<const double> c2, double dx, std::span<double> diag,
                 std::span<double> off);
void band_apply(BandView m, std::span<const double> u, std::span<double> out);
void sample(const std::function<double(double)>& f, std::span<const double> points,
            std::span<double> out);
}  // namespace omp

/// out_j = (f_{j-2} - 8 f_{j-1} + 8 f_{j+1} - f_{j+2}) / (12 dx), periodic.
void deriv4(std::span<const double> f, std::span<double> out, double dx);

/// P1 consistent mass times nodal values: dx/6 (f_{j-1} + 4 f_j + f_{j+1}).
void mass_product(std::span<const double> f, std::span<double> out, double dx);

/// Element-wise P1 assembly of  int c0 u v + c1 (u v' + u' v) + c2 u' v'
/// with c* constant on element [x_j, x_{j+1}] (index j).
void assemble_p1(std::span<const double> c0, std::span<const double> c1,
                 std::span<const double> c2, double dx, std::span<double> diag,
                 std::span<double> off);

void band_apply(BandView m, std::span<const double> u, std::span<double> out);

/// out_j = f(points_j)
void sample(const std::function<double(double)>& f, std::span<const double> points,
            std::span<double> out);

}  // namespace gnflow::kernels
