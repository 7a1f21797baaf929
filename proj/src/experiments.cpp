#include "gnflow/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <random>

#include "gnflow/errors.hpp"

namespace gnflow {

const char* to_string(Formulation f)
{
    return f == Formulation::eulerian ? "eulerian" : "lagrangian";
}

const char* to_string(Direction d)
{
    switch (d) {
    case Direction::depth:
        return "h0";
    case Direction::velocity:
        return "u0";
    case Direction::bottom:
        return "xi";
    }
    return "?";
}

TimeGrid fixed_steps(const EulerianState& s0, double t_end, double cfl, Gravity g)
{
    const double dt0 = cfl_dt(s0, StepControl(cfl, t_end), g);
    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt0 - 1e-9));
    return {t_end / static_cast<double>(std::max<std::size_t>(steps, 1)),
            std::max<std::size_t>(steps, 1)};
}

namespace {

bool is_checkpoint(std::size_t k, std::size_t steps, std::size_t checkpoints)
{
    const std::size_t stride = std::max<std::size_t>(1, steps / std::max<std::size_t>(1, checkpoints));
    return (k + 1) % stride == 0 || k + 1 == steps;
}

}  // namespace

EulerianState evolve(const SampledDatum& d, const Bathymetry& xi, Gravity g, Formulation f,
                     const TimeGrid& tg, std::size_t checkpoints, const Checkpoint& observe)
{
    if (f == Formulation::eulerian) {
        EulerianState s = d.eulerian;
        for (std::size_t k = 0; k < tg.steps; ++k) {
            s = step_rk4(s, tg.dt, xi, g);
            if (observe && is_checkpoint(k, tg.steps, checkpoints))
                observe(k + 1, s);
        }
        return s;
    }
    LagrangianState s = d.lagrangian;
    for (std::size_t k = 0; k < tg.steps; ++k) {
        s = step_rk4_lagrangian(s, tg.dt, d.h0, xi, g);
        if (observe && is_checkpoint(k, tg.steps, checkpoints))
            observe(k + 1, to_eulerian(s, d.h0));
    }
    return to_eulerian(s, d.h0);
}

double TwinRunReport::min_order() const
{
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < order.size(); ++i)
        m = std::min(m, order[i]);
    return m;
}

namespace {

void check_guard(const EulerianState& s, const std::vector<double>& bottom, double surface,
                 double tol)
{
    const EdgeDeviation dev = edge_deviation(s.h, s.u, bottom, surface);
    if (dev.max() > tol)
        throw HorizonExceeded("solution reached the guard band (deviation "
                                  + std::to_string(dev.max()) + ")",
                              s.t);
}

// Runs body(i) for i in [0, count) concurrently and rethrows the first failure.
template <class Body>
void parallel_trajectories(std::size_t count, Body body)
{
    std::vector<std::exception_ptr> errors(count);
    const auto m = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

}  // namespace

TwinRunReport twin_run(const Datum& d, double t_end, const std::vector<std::size_t>& resolutions,
                       double cfl, std::size_t checkpoints, double guard_tol)
{
    for (std::size_t i = 1; i < resolutions.size(); ++i)
        if (resolutions[i] <= resolutions[i - 1])
            throw InvalidDatum("twin_run resolutions must be strictly increasing");

    const Gravity g(d.gravity);
    const std::size_t r = resolutions.size();
    TwinRunReport rep;
    rep.resolutions = resolutions;
    rep.gap_h.assign(r, 0.0);
    rep.gap_u.assign(r, 0.0);
    rep.gap.assign(r, 0.0);
    rep.order.assign(r, std::numeric_limits<double>::quiet_NaN());

    parallel_trajectories(r, [&](std::size_t i) {
        const Grid grid(d.length, resolutions[i]);
        const SampledDatum sd = sample(d, grid);
        const std::vector<double> bottom = bottom_at_nodes(grid, d.bottom);
        const TimeGrid tg = fixed_steps(sd.eulerian, t_end, cfl, g);

        std::vector<EulerianState> eul;
        evolve(sd, d.bottom, g, Formulation::eulerian, tg, checkpoints,
               [&](std::size_t, const EulerianState& s) {
                   check_guard(s, bottom, d.surface, guard_tol);
                   eul.push_back(s);
               });
        std::size_t idx = 0;
        evolve(sd, d.bottom, g, Formulation::lagrangian, tg, checkpoints,
               [&](std::size_t, const EulerianState& s) {
                   check_guard(s, bottom, d.surface, guard_tol);
                   const double gh = l2_norm(s.h - eul[idx].h);
                   const double gu = l2_norm(s.u - eul[idx].u);
                   rep.gap_h[i] = std::max(rep.gap_h[i], gh);
                   rep.gap_u[i] = std::max(rep.gap_u[i], gu);
                   rep.gap[i] = std::max(rep.gap[i], std::sqrt(gh * gh + gu * gu));
                   ++idx;
               });
    });
    for (std::size_t i = 1; i < r; ++i)
        rep.order[i] = std::log2(rep.gap[i - 1] / rep.gap[i]);
    return rep;
}

// ---------------------------------------------------------------------------

Perturbation perturbation_direction(const Grid& g, Direction dir, std::uint64_t seed, double sigma)
{
    const double L = g.length();
    const double center = 0.5 * L;
    const double width = L / 16.0;
    std::mt19937_64 rng(seed * 3 + static_cast<std::uint64_t>(dir));
    std::normal_distribution<double> normal(0.0, 1.0);

    Bathymetry shape(L);
    for (int m = 1; m <= 8; ++m) {
        const double a = normal(rng) / m;
        const double b = normal(rng) / m;
        const double k = 2.0 * std::numbers::pi * m / (0.5 * L);
        // a cos(kz) + b sin(kz) = r cos(kz - theta)
        shape.add(Bathymetry::Packet{std::hypot(a, b), center, width, k, -std::atan2(b, a)});
    }
    const Field sampled = Field::sample(g, [&shape](double x) { return shape.xi(x); });
    const double order = dir == Direction::velocity ? sigma + 1.0 : sigma;
    const double scale = 1.0 / sobolev_norm(sampled, SobolevIndex(order));

    Perturbation p;
    p.bottom = Bathymetry(L).plus(shape, scale);
    const Bathymetry unit = p.bottom;
    p.field = [unit](double x) { return unit.xi(x); };
    return p;
}

Datum perturbed(const Datum& d, const Perturbation& p, Direction dir, double eps)
{
    Datum out = d;
    if (eps == 0.0)
        return out;
    switch (dir) {
    case Direction::depth: {
        auto h0 = d.h0;
        auto f = p.field;
        out.h0 = [h0, f, eps](double x) { return h0(x) + eps * f(x); };
        break;
    }
    case Direction::velocity: {
        auto u0 = d.u0;
        auto f = p.field;
        out.u0 = [u0, f, eps](double x) { return u0(x) + eps * f(x); };
        break;
    }
    case Direction::bottom:
        out.bottom = d.bottom.plus(p.bottom, eps);
        break;
    }
    return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

DependenceReport dependence_study(const Datum& d, std::size_t n, double t_end,
                                  const std::vector<double>& eps, double s,
                                  const std::vector<Direction>& directions, Formulation f,
                                  std::uint64_t seed, double cfl, std::size_t checkpoints)
{
    for (std::size_t k = 1; k < eps.size(); ++k)
        if (!(eps[k] < eps[k - 1]))
            throw InvalidDatum("dependence epsilon ladder must be strictly decreasing");

    const Grid grid(d.length, n);
    const Gravity g(d.gravity);
    const double sigma = std::min(s, 1.0);
    const SampledDatum base = sample(d, grid);
    const TimeGrid tg = fixed_steps(base.eulerian, t_end, cfl, g);

    std::vector<EulerianState> reference;
    evolve(base, d.bottom, g, f, tg, checkpoints,
           [&](std::size_t, const EulerianState& st) { reference.push_back(st); });

    DependenceReport rep;
    rep.eps = eps;
    rep.directions = directions;
    rep.sigma = sigma;
    rep.distances.assign(directions.size(), std::vector<double>(eps.size(), 0.0));

    const std::size_t jobs = directions.size() * eps.size();
    parallel_trajectories(jobs, [&](std::size_t job) {
        const std::size_t i = job / eps.size();
        const std::size_t k = job % eps.size();
        const Perturbation p = perturbation_direction(grid, directions[i], seed, sigma);
        const Datum pd = perturbed(d, p, directions[i], eps[k]);
        const SampledDatum sd = sample(pd, grid);
        std::size_t idx = 0;
        double dist = 0.0;
        evolve(sd, pd.bottom, g, f, tg, checkpoints, [&](std::size_t, const EulerianState& st) {
            const double dh = sobolev_norm(st.h - reference[idx].h, SobolevIndex(sigma));
            const double du = sobolev_norm(st.u - reference[idx].u, SobolevIndex(sigma + 1.0));
            dist = std::max(dist, std::sqrt(dh * dh + du * du));
            ++idx;
        });
        rep.distances[i][k] = dist;
    });

    for (std::size_t i = 0; i < directions.size(); ++i) {
        std::vector<double> e, dd;
        for (std::size_t k = 0; k < eps.size(); ++k)
            if (eps[k] > 0.0) {
                e.push_back(eps[k]);
                dd.push_back(rep.distances[i][k]);
            }
        rep.slopes.push_back(e.size() >= 2 ? loglog_slope(e, dd)
                                           : std::numeric_limits<double>::quiet_NaN());
    }
    return rep;
}

// ---------------------------------------------------------------------------

SolitaryResidual solitary_wave_residual(double amplitude, double depth, Gravity g, const Grid& grid)
{
    const SolitaryWave w{amplitude, depth, g.g, 0.5 * grid.length(), grid.length()};
    const EulerianState s = EulerianState::make(0.0, Field::sample(grid, [&](double x) { return w.h(x); }),
                                                Field::sample(grid, [&](double x) { return w.u(x); }));
    const Bathymetry flat = Bathymetry::flat(grid.length());
    const EulerianRhs rhs = eulerian_rhs(s, flat, g);
    const Field hx = deriv(s.h);
    const Field ux = deriv(s.u);
    const double c = w.speed();
    double r = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        r = std::max(r, std::abs(rhs.dh[j] + c * hx[j]));
        r = std::max(r, std::abs(rhs.du[j] + c * ux[j]));
    }
    return {r};
}

SolitaryGate solitary_gate(double amplitude, double depth, Gravity g, double length,
                           const std::vector<std::size_t>& resolutions)
{
    SolitaryGate gate;
    gate.resolutions = resolutions;
    gate.passed = true;
    for (std::size_t n : resolutions)
        gate.residuals.push_back(solitary_wave_residual(amplitude, depth, g, Grid(length, n)).max_residual);
    gate.orders.push_back(std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 1; i < resolutions.size(); ++i) {
        const double ratio = static_cast<double>(resolutions[i]) / static_cast<double>(resolutions[i - 1]);
        const double o = std::log(gate.residuals[i - 1] / gate.residuals[i]) / std::log(ratio);
        gate.orders.push_back(o);
        const bool at_floor = gate.residuals[i] <= 1e-12;
        if (!(o >= 2.0 - kOrderReportingTolerance) && !at_floor)
            gate.passed = false;
    }
    return gate;
}

SolitaryPropagation solitary_propagation(const SolitaryWave& w, std::size_t n, double cfl)
{
    const Grid grid(w.length, n);
    const Datum d = solitary_datum(w);
    const SampledDatum sd = sample(d, grid);
    const Gravity g(w.gravity);
    const double t_end = 0.5 * w.length / w.speed();
    const TimeGrid tg = fixed_steps(sd.eulerian, t_end, cfl, g);
    const EulerianState s = evolve(sd, d.bottom, g, Formulation::eulerian, tg, 1);

    std::size_t jmax = 0;
    for (std::size_t j = 1; j < n; ++j)
        if (s.h[j] > s.h[jmax])
            jmax = j;
    const double hm = s.h[(jmax + n - 1) % n];
    const double h0 = s.h[jmax];
    const double hp = s.h[(jmax + 1) % n];
    const double denom = hm - 2.0 * h0 + hp;
    const double offset = denom != 0.0 ? 0.5 * (hm - hp) / denom : 0.0;
    const double peak = grid.node(jmax) + offset * grid.dx();
    double err = peak - (w.center + w.speed() * t_end);
    err -= w.length * std::round(err / w.length);

    const Field exact = Field::sample(grid, [&](double x) { return w.h(x, t_end); });
    return {grid.dx(), t_end, std::abs(err), l2_norm(s.h - exact)};
}

// ---------------------------------------------------------------------------

namespace {

// Final (q1, q2) of a run: (h, u) for Eulerian, (disp, vel) in labels for Lagrangian.
std::pair<Field, Field> final_fields(const Datum& d, const Grid& grid, const TimeGrid& tg,
                                     Formulation f)
{
    const SampledDatum sd = sample(d, grid);
    const Gravity g(d.gravity);
    if (f == Formulation::eulerian) {
        EulerianState s = sd.eulerian;
        for (std::size_t k = 0; k < tg.steps; ++k)
            s = step_rk4(s, tg.dt, d.bottom, g);
        return {s.h, s.u};
    }
    LagrangianState s = sd.lagrangian;
    for (std::size_t k = 0; k < tg.steps; ++k)
        s = step_rk4_lagrangian(s, tg.dt, sd.h0, d.bottom, g);
    return {s.disp, s.vel};
}

Field restrict_to(const Field& fine, const Grid& coarse)
{
    const std::size_t ratio = fine.size() / coarse.size();
    Field out(coarse);
    for (std::size_t j = 0; j < coarse.size(); ++j)
        out[j] = fine[j * ratio];
    return out;
}

double pair_distance(const std::pair<Field, Field>& a, const std::pair<Field, Field>& b)
{
    const double e1 = l2_norm(a.first - b.first);
    const double e2 = l2_norm(a.second - b.second);
    return std::sqrt(e1 * e1 + e2 * e2);
}

}  // namespace

std::vector<ConvergenceRow> spatial_convergence(const Datum& d, double t_end,
                                                const std::vector<std::size_t>& resolutions,
                                                Formulation f, double cfl)
{
    const Gravity g(d.gravity);
    std::vector<std::pair<Field, Field>> sol;
    std::vector<TimeGrid> tgs;
    for (std::size_t n : resolutions) {
        const Grid grid(d.length, n);
        tgs.push_back(fixed_steps(sample(d, grid).eulerian, t_end, cfl, g));
        sol.push_back(final_fields(d, grid, tgs.back(), f));
    }
    std::vector<ConvergenceRow> rows;
    for (std::size_t k = 0; k + 1 < resolutions.size(); ++k) {
        const Grid coarse(d.length, resolutions[k]);
        const std::pair<Field, Field> fine{restrict_to(sol[k + 1].first, coarse),
                                           restrict_to(sol[k + 1].second, coarse)};
        const double e = pair_distance(sol[k], fine);
        const double o = rows.empty() ? std::numeric_limits<double>::quiet_NaN()
                                      : std::log2(rows.back().error / e);
        rows.push_back({"space", f, resolutions[k], tgs[k].dt, e, o});
    }
    return rows;
}

std::vector<ConvergenceRow> temporal_convergence(const Datum& d, std::size_t n, double t_end,
                                                 std::size_t steps0, std::size_t levels,
                                                 Formulation f)
{
    const Grid grid(d.length, n);
    std::vector<std::pair<Field, Field>> sol;
    std::vector<TimeGrid> tgs;
    for (std::size_t l = 0; l < levels; ++l) {
        const std::size_t steps = steps0 << l;
        tgs.push_back({t_end / static_cast<double>(steps), steps});
        sol.push_back(final_fields(d, grid, tgs.back(), f));
    }
    std::vector<ConvergenceRow> rows;
    for (std::size_t l = 0; l + 1 < levels; ++l) {
        const double e = pair_distance(sol[l], sol[l + 1]);
        const double o = rows.empty() ? std::numeric_limits<double>::quiet_NaN()
                                      : std::log2(rows.back().error / e);
        rows.push_back({"time", f, n, tgs[l].dt, e, o});
    }
    return rows;
}

}  // namespace gnflow
