#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "gnflow/errors.hpp"
#include "gnflow/eulerian.hpp"
#include "gnflow/experiments.hpp"
#include "gnflow/scenarios.hpp"
#include "support.hpp"

using namespace gnflow;
using gnflow::testing::doubling_orders;

namespace {

constexpr double kPi = std::numbers::pi;

// b(x) = exp(-(x - c)^2) and its derivatives.
struct Bump {
    double c;
    double v(double x) const { return std::exp(-(x - c) * (x - c)); }
    double d1(double x) const { return -2 * (x - c) * v(x); }
    double d2(double x) const { return (4 * (x - c) * (x - c) - 2) * v(x); }
    double d3(double x) const { return (-8 * std::pow(x - c, 3) + 12 * (x - c)) * v(x); }
};

// Flat-bottom right-hand side written against the matrix definition:
// P = g h h_x + (2/3 h^3 u_x^2)_x, element mass/stiffness with midpoint depth, dense solve.
Field flat_bottom_du(const Field& h, const Field& u, double g)
{
    const Grid& grid = h.grid;
    const std::size_t n = grid.size();
    const double dx = grid.dx();
    const Field hx = deriv(h);
    const Field ux = deriv(u);
    Field q(grid);
    for (std::size_t j = 0; j < n; ++j)
        q[j] = 2.0 / 3.0 * h[j] * h[j] * h[j] * ux[j] * ux[j];
    const Field qx = deriv(q);
    Field p(grid);
    for (std::size_t j = 0; j < n; ++j)
        p[j] = g * h[j] * hx[j] + qx[j];

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd b(n);
    for (std::size_t e = 0; e < n; ++e) {
        const std::size_t r = (e + 1) % n;
        const double hm = 0.5 * (h[e] + h[r]);
        const double mass[2][2] = {{dx / 3, dx / 6}, {dx / 6, dx / 3}};
        const double stiff[2][2] = {{1 / dx, -1 / dx}, {-1 / dx, 1 / dx}};
        const std::size_t idx[2] = {e, r};
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k)
                a(idx[i], idx[k]) += hm * mass[i][k] + hm * hm * hm / 3.0 * stiff[i][k];
    }
    for (std::size_t j = 0; j < n; ++j)
        b(j) = dx / 6 * (p[(j + n - 1) % n] + 4 * p[j] + p[(j + 1) % n]);
    const Eigen::VectorXd w = a.llt().solve(b);
    Field du(grid);
    for (std::size_t j = 0; j < n; ++j)
        du[j] = -u[j] * ux[j] - w(j);
    return du;
}

EulerianState lake(const Grid& g, const Bathymetry& xi, double H)
{
    return EulerianState::make(0.0, Field::sample(g, [&](double x) { return H - xi.xi(x); }),
                               Field(g));
}

}  // namespace

TEST_SUITE("eulerian") {

TEST_CASE("state and control preconditions")
{
    const Grid g(1.0, 16);
    CHECK_THROWS_AS(EulerianState::make(0.0, Field::constant(g, 0.0), Field(g)), InvalidDatum);
    CHECK_THROWS_AS(EulerianState::make(0.0, Field::constant(g, 1.0), Field(Grid(1.0, 32))),
                    GridMismatch);
    CHECK_THROWS_AS(StepControl(0.0, 1.0), InvalidDatum);
    CHECK_THROWS_AS(StepControl(1.5, 1.0), InvalidDatum);
    CHECK_THROWS_AS(StepControl(0.5, 0.0), InvalidDatum);
}

TEST_CASE("eval_P vanishes on still water and on the lake at rest")
{
    const Grid g(20.0, 128);
    const Field p0 = eval_P(DepthField(Field::constant(g, 1.0)), Field(g), Bathymetry::flat(20.0),
                            Gravity(1.0));
    for (double v : p0.values)
        CHECK(v == 0.0);

    const Bathymetry xi = Bathymetry::gaussian_bump(20.0, 10.0, 2.0, 0.4);
    const EulerianState s = lake(g, xi, 1.0);
    const Field p = eval_P(s.depth(), s.u, xi, Gravity(9.81));
    CHECK(p.max_abs() <= 1e-12);
}

TEST_CASE("eval_P matches the expanded manufactured source at fourth order")
{
    const double L = 20.0;
    const Bump b{10.0};
    const double g0 = 1.3;
    std::vector<double> err;
    for (std::size_t n : {128, 256, 512}) {
        const Grid g(L, n);
        const Field h = Field::sample(g, [&](double x) { return 1 + 0.1 * b.v(x); });
        const Field u = Field::sample(g, [&](double x) { return 0.2 * b.v(x); });
        Bathymetry xi(L);
        xi.add(Bathymetry::Packet{0.05, 10.0, 1.0, 0.0, 0.0});
        const Field p = eval_P(DepthField(h), u, xi, Gravity(g0));
        double e = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double x = g.node(j);
            const double H = 1 + 0.1 * b.v(x), Hx = 0.1 * b.d1(x);
            const double U = 0.2 * b.v(x), Ux = 0.2 * b.d1(x), Uxx = 0.2 * b.d2(x);
            const double S1 = 0.05 * b.d1(x), S2 = 0.05 * b.d2(x), S3 = 0.05 * b.d3(x);
            const double exact = g0 * H * (Hx + S1)
                                 + H * Hx * U * U * S2 + H * H * U * Ux * S2 + 0.5 * H * H * U * U * S3
                                 + 2 * H * H * Hx * Ux * Ux + 4.0 / 3.0 * H * H * H * Ux * Uxx
                                 + H * U * U * S1 * S2 + H * H * S1 * Ux * Ux;
            e = std::max(e, std::abs(p[j] - exact));
        }
        err.push_back(e);
    }
    for (double o : doubling_orders(err))
        CHECK(o >= 3.5);
}

TEST_CASE("right-hand side on the lake at rest is exactly zero")
{
    const Grid g(64.0, 512);
    const Bathymetry xi = Bathymetry::gaussian_bump(64.0, 32.0, 3.0, 0.4);
    const EulerianRhs r = eulerian_rhs(lake(g, xi, 1.0), xi, Gravity(1.0));
    CHECK(r.dh.max_abs() <= 1e-10);
    CHECK(r.du.max_abs() <= 1e-10);
}

TEST_CASE("flat-bottom right-hand side matches an independent implementation")
{
    const SolitaryWave w{0.05, 1.0, 1.0, 20.0, 40.0};
    const Grid g(40.0, 256);
    const Field h = Field::sample(g, [&](double x) { return w.h(x); });
    const Field u = Field::sample(g, [&](double x) { return w.u(x); });
    const EulerianRhs r = eulerian_rhs(EulerianState::make(0.0, h, u), Bathymetry::flat(40.0), Gravity(1.0));
    const Field oracle = flat_bottom_du(h, u, 1.0);
    CHECK(gnflow::testing::max_abs_diff(r.du.values, oracle.values) <= 1e-13 * (1 + oracle.max_abs()));
    const Field hu_x = deriv(h * u);
    for (std::size_t j = 0; j < g.size(); ++j)
        CHECK(r.dh[j] == -hu_x[j]);
}

TEST_CASE("reflection symmetry of the right-hand side")
{
    const double L = 32.0;
    const Grid g(L, 256);
    const Bathymetry xi = Bathymetry::gaussian_bump(L, 16.0, 2.0, 0.3);
    auto bump = [L](double x) { return std::exp(-(x - L / 2) * (x - L / 2) / 4.0); };
    const Field h = Field::sample(g, [&](double x) { return 1.0 - xi.xi(x) + 0.1 * bump(x); });
    const Field u = Field::sample(g, [&](double x) { return 0.2 * (x - L / 2) * bump(x); });
    const EulerianRhs r = eulerian_rhs(EulerianState::make(0.0, h, u), xi, Gravity(1.0));
    const std::size_t n = g.size();
    double even = 0.0, odd = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
        even = std::max(even, std::abs(r.dh[j] - r.dh[n - j]));
        odd = std::max(odd, std::abs(r.du[j] + r.du[n - j]));
    }
    CHECK(even <= 1e-13);
    CHECK(odd <= 1e-13);
}

TEST_CASE("cfl_dt examples")
{
    const Grid g(10.0, 64);
    const EulerianState rest = EulerianState::make(0.0, Field::constant(g, 1.0), Field(g));
    CHECK(cfl_dt(rest, StepControl(0.5, 1.0), Gravity(1.0)) == doctest::Approx(0.5 * g.dx()));
    CHECK(cfl_dt(rest, StepControl(0.5, 1.0), Gravity(2.0))
          == doctest::Approx(0.5 * g.dx() / std::sqrt(2.0)));
    const EulerianState moving =
        EulerianState::make(0.0, Field::constant(g, 1.21), Field::constant(g, 1.0));
    CHECK(cfl_dt(moving, StepControl(0.5, 1.0), Gravity(1.0)) == doctest::Approx(0.5 * g.dx() / 2.1));
    CHECK(cfl_dt(rest, StepControl(0.5, 1e-4), Gravity(1.0)) == 1e-4);
}

TEST_CASE("fixed points of the step")
{
    const Grid g(16.0, 128);
    const EulerianState rest = EulerianState::make(0.0, Field::constant(g, 1.0), Field(g));
    const EulerianState next = step_rk4(rest, 0.05, Bathymetry::flat(16.0), Gravity(1.0));
    CHECK(next.h.values == rest.h.values);
    CHECK(next.u.values == rest.u.values);
    CHECK(next.t == doctest::Approx(0.05));

    const Bathymetry xi = Bathymetry::sinusoidal(16.0, 2, 0.3);
    const EulerianState l = lake(g, xi, 1.0);
    EulerianState s = l;
    for (int k = 0; k < 10; ++k) {
        const EulerianState t = step_rk4(s, 0.05, xi, Gravity(1.0));
        CHECK(gnflow::testing::max_abs_diff(t.h.values, s.h.values) <= 1e-12);
        CHECK(t.u.max_abs() <= 1e-12);
        s = t;
    }
}

TEST_CASE("positivity loss is reported")
{
    const Datum d = depression_probe(64.0, 32.0, 2.0, 0.95, 3.0);
    const SampledDatum sd = sample(d, Grid(64.0, 256));
    EulerianState s = sd.eulerian;
    bool thrown = false;
    try {
        for (int k = 0; k < 2000; ++k)
            s = step_rk4(s, 0.05, d.bottom, Gravity(1.0));
    } catch (const DepthPositivityLost& e) {
        thrown = true;
        CHECK(e.t > 0.0);
        CHECK(e.t < 20.0);
    }
    CHECK(thrown);
}

TEST_CASE("temporal order and mass conservation")
{
    const Datum d = hump_datum("wave", 40.0, Bathymetry::gaussian_bump(40.0, 22.0, 3.0, 0.2), 18.0,
                               2.0, 0.1, 1.0);
    const auto rows = temporal_convergence(d, 128, 2.0, 20, 4, Formulation::eulerian);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].order >= 3.5);
        CHECK(rows[i].order <= 4.5);
    }

    const SampledDatum sd = sample(d, Grid(40.0, 256));
    const double m0 = eulerian_mass(sd.eulerian);
    EulerianState s = sd.eulerian;
    for (int k = 0; k < 100; ++k)
        s = step_rk4(s, 0.04, d.bottom, Gravity(1.0));
    CHECK(std::abs(eulerian_mass(s) - m0) <= 1e-10 * (1 + std::abs(m0)));
}

TEST_CASE("reversibility probe")
{
    const double L = 40.0;
    const Datum d = hump_datum("wave", L, Bathymetry::gaussian_bump(L, 20.0, 3.0, 0.2), 20.0, 2.0,
                               0.1, 0.5);
    const SampledDatum sd = sample(d, Grid(L, 256));
    const double dt = 0.02;
    EulerianState s = sd.eulerian;
    for (int k = 0; k < 100; ++k)
        s = step_rk4(s, dt, d.bottom, Gravity(1.0));
    s.u = -1.0 * s.u;
    for (int k = 0; k < 100; ++k)
        s = step_rk4(s, dt, d.bottom, Gravity(1.0));
    CHECK(gnflow::testing::max_abs_diff(s.h.values, sd.eulerian.h.values) <= 1e-7);
    CHECK(gnflow::testing::max_abs_diff((-1.0 * s.u).values, sd.eulerian.u.values) <= 1e-7);
}

TEST_CASE("energy diagnostic and guard band")
{
    const Grid g(30.0, 128);
    const Bathymetry xi = Bathymetry::gaussian_bump(30.0, 15.0, 2.0, 0.3);
    const EulerianState l = lake(g, xi, 1.0);
    CHECK(std::abs(eulerian_energy(l, xi, Gravity(1.0), 1.0)) <= 1e-12);
    const EdgeDeviation dev = edge_deviation(l.h, l.u, bottom_at_nodes(g, xi), 1.0);
    CHECK(dev.max() <= 1e-15);

    const EulerianState edge = EulerianState::make(
        0.0, Field::sample(g, [](double x) { return 1.0 + 0.1 * std::exp(-(x - 1) * (x - 1)); }),
        Field(g));
    CHECK(edge_deviation(edge.h, edge.u, std::vector<double>(g.size(), 0.0), 1.0).surface > 0.01);
}

}  // TEST_SUITE
