#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gnflow/scenarios.hpp"

namespace gnflow {

enum class Formulation { eulerian, lagrangian };

const char* to_string(Formulation f);

/// Fixed step count N with dt = T / N, dt <= cfl * dx / max wave speed of the initial state.
struct TimeGrid {
    double dt;
    std::size_t steps;
};
TimeGrid fixed_steps(const EulerianState& s0, double t_end, double cfl, Gravity g);

/// Observer called with the Eulerian view of the solution at every checkpoint.
using Checkpoint = std::function<void(std::size_t step, const EulerianState&)>;

/// Integrates `steps` RK4 steps of size dt and reports `checkpoints` evenly spaced states
/// (the final state always included). Lagrangian states are pushed forward with to_eulerian.
EulerianState evolve(const SampledDatum& d, const Bathymetry& xi, Gravity g, Formulation f,
                     const TimeGrid& tg, std::size_t checkpoints, const Checkpoint& observe = {});

// ---------------------------------------------------------------------------

struct TwinRunReport {
    std::vector<std::size_t> resolutions;
    std::vector<double> gap_h;   // max over checkpoints of ||h_E - h_L||_2
    std::vector<double> gap_u;
    std::vector<double> gap;     // max over checkpoints of sqrt(gap_h^2 + gap_u^2)
    std::vector<double> order;   // log2(gap[i-1] / gap[i]); order[0] = NaN
    double min_order() const;
};

/// Evolves one datum with both formulations at each resolution, dt proportional to dx.
/// Throws HorizonExceeded when either solution enters the guard band beyond guard_tol.
TwinRunReport twin_run(const Datum& d, double t_end, const std::vector<std::size_t>& resolutions,
                       double cfl = 0.5, std::size_t checkpoints = 8, double guard_tol = 1e-10);

// ---------------------------------------------------------------------------

enum class Direction { depth, velocity, bottom };
const char* to_string(Direction d);

/// Band-limited smooth perturbation: first 8 modes over half the domain times a Gaussian
/// window at mid-domain (negligible in the guard band), seeded, unit H^sigma norm on `g`.
struct Perturbation {
    std::function<double(double)> field;
    Bathymetry bottom{1.0};
};
Perturbation perturbation_direction(const Grid& g, Direction dir, std::uint64_t seed,
                                    double sigma);

Datum perturbed(const Datum& d, const Perturbation& p, Direction dir, double eps);

struct DependenceReport {
    std::vector<double> eps;
    std::vector<Direction> directions;
    /// distances[i][k]: direction i, eps[k], sup over checkpoints of
    /// sqrt(||dh||^2_{H^sigma} + ||du||^2_{H^{sigma+1}})
    std::vector<std::vector<double>> distances;
    std::vector<double> slopes;
    double sigma;
};

DependenceReport dependence_study(const Datum& d, std::size_t n, double t_end,
                                  const std::vector<double>& eps, double s,
                                  const std::vector<Direction>& directions,
                                  Formulation f = Formulation::eulerian, std::uint64_t seed = 7,
                                  double cfl = 0.5, std::size_t checkpoints = 10);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// ---------------------------------------------------------------------------

struct SolitaryResidual {
    double max_residual;   // max over nodes of |dh + c h_x|, |du + c u_x|
};

/// Evaluates the semi-discrete right-hand side on the analytic solitary wave in the frame
/// moving with it (translation terms from deriv()).
SolitaryResidual solitary_wave_residual(double amplitude, double depth, Gravity g, const Grid& grid);

struct SolitaryGate {
    std::vector<std::size_t> resolutions;
    std::vector<double> residuals;
    std::vector<double> orders;
    bool passed;   // every observed order >= 2 at two-decimal precision (or residual at the floor)
};
/// Observed orders are compared after rounding to two decimals.
inline constexpr double kOrderReportingTolerance = 5e-3;
SolitaryGate solitary_gate(double amplitude, double depth, Gravity g, double length,
                           const std::vector<std::size_t>& resolutions);

struct SolitaryPropagation {
    double dx;
    double t_end;
    double peak_error;    // |x_peak - exact|, periodic
    double shape_l2;      // ||h - h_exact(t)||_2
};
/// Propagates over half a domain crossing, t = L / (2c).
SolitaryPropagation solitary_propagation(const SolitaryWave& w, std::size_t n, double cfl = 0.5);

// ---------------------------------------------------------------------------

struct ConvergenceRow {
    std::string kind;  // "space" or "time"
    Formulation formulation;
    std::size_t n;
    double dt;
    double error;      // ||q_k - q_{k+1}|| of consecutive refinements
    double order;      // log2(error_{k-1} / error_k), NaN for the first row
};

/// Spatial self-convergence at dt proportional to dx; successive fine solutions are
/// restricted to the coarse nodes.
std::vector<ConvergenceRow> spatial_convergence(const Datum& d, double t_end,
                                                const std::vector<std::size_t>& resolutions,
                                                Formulation f, double cfl = 0.5);

/// Temporal self-convergence on a fixed grid with dt halved `levels` times from `steps0`.
std::vector<ConvergenceRow> temporal_convergence(const Datum& d, std::size_t n, double t_end,
                                                 std::size_t steps0, std::size_t levels,
                                                 Formulation f);

}  // namespace gnflow
