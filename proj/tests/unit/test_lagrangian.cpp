#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gnflow/errors.hpp"
#include "gnflow/experiments.hpp"
#include "gnflow/lagrangian.hpp"
#include "gnflow/scenarios.hpp"
#include "support.hpp"

using namespace gnflow;
using gnflow::testing::doubling_orders;
using gnflow::testing::max_abs_diff;

namespace {

constexpr double kPi = std::numbers::pi;

// Smooth non-trivial map with min phi_x = 1 - 0.4 on a domain of length L.
Field sine_disp(const Grid& g, double amp = 0.4)
{
    const double L = g.length();
    return Field::sample(g, [=](double x) {
        return amp * L / (2 * kPi) * std::sin(2 * kPi * x / L) + 0.05 * L * std::sin(4 * kPi * x / L) / (4 * kPi);
    });
}

Field smooth(const Grid& g)
{
    const double L = g.length();
    return Field::sample(g, [=](double x) { return std::cos(2 * kPi * x / L) + 0.5 * std::sin(6 * kPi * x / L); });
}

Field depth(const Grid& g)
{
    const double L = g.length();
    return Field::sample(g, [=](double x) { return 1.0 + 0.2 * std::cos(2 * kPi * x / L + 0.3); });
}

Bathymetry bottom(double L) { return Bathymetry::sinusoidal(L, 1, 0.1, 0.7); }

}  // namespace

TEST_SUITE("lagrangian") {

TEST_CASE("conj_deriv examples")
{
    const Grid g(6.0, 128);
    const Field f = smooth(g);
    const LagrangianState id = LagrangianState::at_rest_map(0.0, Field(g));
    CHECK(conj_deriv(id, f).values == deriv(f).values);

    // phi itself: (id)_x / phi_x + disp_x / phi_x = 1
    const LagrangianState s{0.0, sine_disp(g), Field(g)};
    const Field jac = s.jacobian();
    const Field cd = conj_deriv(s, s.disp);
    for (std::size_t j = 0; j < g.size(); ++j)
        CHECK(std::abs(1.0 / jac[j] + cd[j] - 1.0) <= 1e-12);
}

TEST_CASE("conj_deriv matches the composition construction at third order")
{
    std::vector<double> err;
    for (std::size_t n : {128, 256, 512, 1024}) {
        const Grid g(6.0, n);
        const LagrangianState s{0.0, sine_disp(g), Field(g)};
        const Field f = smooth(g);
        const FlowMap psi = invert_map(s.map());
        const Field oracle = compose(deriv(compose(f, psi)), s.map());
        err.push_back(max_abs_diff(conj_deriv(s, f).values, oracle.values));
    }
    for (double o : doubling_orders(err))
        CHECK(o >= 2.5);
}

TEST_CASE("lagrangian depth")
{
    const Grid g(6.0, 128);
    const InitialDepth h0{DepthField(depth(g))};
    const LagrangianState id = LagrangianState::at_rest_map(0.0, Field(g));
    CHECK(lagrangian_depth(id, h0).values == h0.h0.field().values);
    const LagrangianState shifted{0.0, Field::constant(g, 0.4), Field(g)};
    CHECK(max_abs_diff(lagrangian_depth(shifted, h0).values, h0.h0.field().values) <= 1e-14);

    const LagrangianState s{0.0, sine_disp(g), Field(g)};
    const Field h = compose(lagrangian_depth(s, h0), invert_map(s.map()));
    CHECK(std::abs(integrate(h - Field::constant(g, 1.0)) - integrate(h0.h0.field() - Field::constant(g, 1.0)))
          <= 1e-5);

    const LagrangianState folded{0.0, sine_disp(g, 1.5), Field(g)};
    CHECK_THROWS_AS(lagrangian_depth(folded, h0), NonMonotoneMap);
    CHECK_THROWS_AS(conj_deriv(folded, smooth(g)), NonMonotoneMap);
}

TEST_CASE("conjugated assembly degenerates to the Eulerian one")
{
    const Grid g(6.0, 64);
    const InitialDepth h0{DepthField(depth(g))};
    const Bathymetry xi = bottom(6.0);
    const LagrangianState id = LagrangianState::at_rest_map(0.0, Field(g));
    const SpdTridiagonal a = assemble_A_conjugated(id, h0, xi);
    const SpdTridiagonal b = assemble_A(h0.h0, xi);
    CHECK(a.diag == b.diag);
    CHECK(a.off == b.off);

    const LagrangianState shifted{0.0, Field::constant(g, 0.25), Field(g)};
    const SpdTridiagonal c = assemble_A_conjugated(shifted, h0, Bathymetry::flat(6.0));
    const SpdTridiagonal d = assemble_A(h0.h0, Bathymetry::flat(6.0));
    for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK(c.diag[j] == doctest::Approx(d.diag[j]).epsilon(1e-15));
        CHECK(c.off[j] == doctest::Approx(d.off[j]).epsilon(1e-15));
    }
}

TEST_CASE("conjugated source at the identity map")
{
    const Grid g(6.0, 128);
    const InitialDepth h0{DepthField(depth(g))};
    const Bathymetry xi = bottom(6.0);
    const Field v = 0.3 * smooth(g);
    const LagrangianState id = LagrangianState::at_rest_map(0.0, v);
    CHECK(eval_P_conjugated(id, v, h0, xi, Gravity(1.0)).values
          == eval_P(h0.h0, v, xi, Gravity(1.0)).values);

    const Field f = eval_F(id, h0, xi, Gravity(1.0));
    const Field ref = solve_A(h0.h0, xi, eval_P(h0.h0, v, xi, Gravity(1.0)));
    for (std::size_t j = 0; j < g.size(); ++j)
        CHECK(std::abs(f[j] + ref[j]) <= 1e-12);
}

TEST_CASE("pushforward oracles at second order")
{
    std::vector<double> err_p, err_s;
    for (std::size_t n : {256, 512, 1024}) {
        const Grid g(6.0, n);
        const Bathymetry xi = bottom(6.0);
        const InitialDepth h0{DepthField(depth(g))};
        const Field v = 0.3 * smooth(g);
        const LagrangianState s{0.0, sine_disp(g), v};
        const FlowMap psi = invert_map(s.map());
        const DepthField h(compose(lagrangian_depth(s, h0), psi));
        const Field u = compose(v, psi);

        const Field pl = eval_P_conjugated(s, v, h0, xi, Gravity(1.0));
        const Field pe = compose(eval_P(h, u, xi, Gravity(1.0)), s.map());
        err_p.push_back(max_abs_diff(pl.values, pe.values));

        const Field r = smooth(g);
        const Field zl = solve_A_conjugated(s, h0, xi, r);
        const Field ze = compose(solve_A(h, xi, compose(r, psi)), s.map());
        err_s.push_back(max_abs_diff(zl.values, ze.values));
    }
    for (double o : doubling_orders(err_p))
        CHECK(o >= 1.8);
    for (double o : doubling_orders(err_s))
        CHECK(o >= 1.8);
}

TEST_CASE("equilibrium and non-equilibrium")
{
    const double L = 40.0;
    const Grid g(L, 256);
    const Bathymetry xi = Bathymetry::gaussian_bump(L, 20.0, 3.0, 0.4);
    const InitialDepth lake{DepthField(Field::sample(g, [&](double x) { return 1.0 - xi.xi(x); }))};
    LagrangianState s = LagrangianState::at_rest_map(0.0, Field(g));
    CHECK(eval_F(s, lake, xi, Gravity(1.0)).max_abs() <= 1e-10);
    for (int k = 0; k < 5; ++k) {
        const LagrangianState t = step_rk4_lagrangian(s, 0.05, lake, xi, Gravity(1.0));
        CHECK(t.disp.max_abs() <= 1e-12);
        CHECK(t.vel.max_abs() <= 1e-12);
        s = t;
    }

    const InitialDepth flat_depth{DepthField(Field::constant(g, 1.0))};
    CHECK(eval_F(LagrangianState::at_rest_map(0.0, Field(g)), flat_depth, xi, Gravity(1.0)).max_abs()
          > 1e-3);
}

TEST_CASE("fold probe loses the diffeomorphism")
{
    const Datum d = fold_probe(64.0, 32.0, 2.0, 0.9, 2.0);
    const SampledDatum sd = sample(d, Grid(64.0, 256));
    CHECK(sd.lagrangian.jacobian().min() == doctest::Approx(0.1).epsilon(0.05));
    LagrangianState s = sd.lagrangian;
    bool thrown = false;
    try {
        for (int k = 0; k < 2000; ++k)
            s = step_rk4_lagrangian(s, 0.05, sd.h0, d.bottom, Gravity(1.0));
    } catch (const DiffeoLost& e) {
        thrown = true;
        CHECK(e.t > 0.0);
    }
    CHECK(thrown);
}

TEST_CASE("to_eulerian examples")
{
    const Grid g(6.0, 128);
    const Field h0f = depth(g);
    const InitialDepth h0{DepthField(h0f)};
    const Field u0 = smooth(g);
    const EulerianState e0 = to_eulerian(LagrangianState::at_rest_map(0.0, u0), h0);
    CHECK(e0.h.values == h0f.values);
    CHECK(e0.u.values == u0.values);

    const InitialDepth one{DepthField(Field::constant(g, 1.0))};
    const EulerianState e1 =
        to_eulerian(LagrangianState{1.0, Field::constant(g, 0.7), Field::constant(g, 0.3)}, one);
    for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK(e1.h[j] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(e1.u[j] == doctest::Approx(0.3).epsilon(1e-14));
    }

    const LagrangianState s{0.0, sine_disp(g), u0};
    const EulerianState e = to_eulerian(s, h0);
    CHECK(std::abs(eulerian_mass(e) - lagrangian_mass(s, h0)) <= 1e-5);
}

TEST_CASE("lagrangian mass is conserved and time order is four")
{
    const double L = 40.0;
    const Datum d = hump_datum("wave", L, Bathymetry::gaussian_bump(L, 22.0, 3.0, 0.2), 18.0, 2.0,
                               0.1, 1.0);
    const SampledDatum sd = sample(d, Grid(L, 256));
    const double m0 = lagrangian_mass(sd.lagrangian, sd.h0);
    LagrangianState s = sd.lagrangian;
    for (int k = 0; k < 50; ++k)
        s = step_rk4_lagrangian(s, 0.04, sd.h0, d.bottom, Gravity(1.0));
    CHECK(std::abs(lagrangian_mass(s, sd.h0) - m0) <= 1e-10 * (1 + std::abs(m0)));

    const auto rows = temporal_convergence(d, 128, 2.0, 20, 4, Formulation::lagrangian);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].order >= 3.5);
        CHECK(rows[i].order <= 4.5);
    }
}

}  // TEST_SUITE
