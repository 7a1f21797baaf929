#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gnflow/errors.hpp"
#include "gnflow/interp.hpp"
#include "gnflow/operator.hpp"
#include "support.hpp"

using namespace gnflow;
using gnflow::testing::doubling_orders;

namespace {

constexpr double kPi = std::numbers::pi;

FlowMap sine_map(const Grid& g, double amp)
{
    const double L = g.length();
    return FlowMap{Field::sample(g, [=](double x) { return amp * L / (2 * kPi) * std::sin(2 * kPi * x / L); })};
}

double smooth(double x, double L) { return std::sin(2 * kPi * x / L) + 0.3 * std::cos(6 * kPi * x / L); }

}  // namespace

TEST_SUITE("interp") {

TEST_CASE("hermite interpolant reproduces node values")
{
    const Grid g(3.0, 32);
    const Field f = random_smooth_field(g, 11);
    const PeriodicHermite p = PeriodicHermite::of_field(f);
    for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK(p(g.node(j)) == f[j]);
        CHECK(p(g.node(j) + 3.0) == f[j]);
    }
}

TEST_CASE("compose with identity is exact")
{
    const Grid g(4.0, 64);
    const Field f = random_smooth_field(g, 3);
    const Field c = compose(f, FlowMap::identity(g));
    CHECK(c.values == f.values);
}

TEST_CASE("compose of analytic functions bypasses interpolation")
{
    const Grid g(4.0, 64);
    const FlowMap phi = sine_map(g, 0.4);
    auto xi = [](double x) { return std::exp(-x * x) + std::sin(x); };
    const Field c = compose(xi, phi);
    const std::vector<double> y = phi.positions();
    for (std::size_t j = 0; j < g.size(); ++j)
        CHECK(c[j] == xi(y[j]));
}

TEST_CASE("compose under a rigid shift converges at third order or better")
{
    const double L = 5.0;
    const double c = 0.37;
    std::vector<double> err;
    for (std::size_t n : {64, 128, 256, 512}) {
        const Grid g(L, n);
        const Field f = Field::sample(g, [=](double x) { return smooth(x, L); });
        const Field s = compose(f, FlowMap::shift(g, c));
        double e = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            e = std::max(e, std::abs(s[j] - smooth(g.node(j) + c, L)));
        err.push_back(e);
    }
    for (double o : doubling_orders(err))
        CHECK(o >= 2.5);
}

TEST_CASE("invert_map examples")
{
    const Grid g(2.0, 128);
    const FlowMap id = invert_map(FlowMap::identity(g));
    for (double d : id.disp.values)
        CHECK(d == 0.0);

    const FlowMap back = invert_map(FlowMap::shift(g, 0.3));
    for (double d : back.disp.values)
        CHECK(d == doctest::Approx(-0.3).epsilon(1e-12));

    const FlowMap phi = sine_map(g, 0.1);
    const FlowMap psi = invert_map(phi);
    const Field d_at = compose(phi.disp, psi);
    const std::vector<double> y = psi.positions();
    double r = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j)
        r = std::max(r, std::abs(y[j] + d_at[j] - g.node(j)));
    CHECK(r <= 1e-10 * g.length());
}

TEST_CASE("double inversion and round trips")
{
    const double L = 2 * kPi;
    for (std::size_t n : {256, 512}) {
        const Grid g(L, n);
        const FlowMap phi = sine_map(g, 0.5);
        const FlowMap psi = invert_map(phi);
        const FlowMap again = invert_map(psi);
        CHECK(gnflow::testing::max_abs_diff(again.disp.values, phi.disp.values) <= 1e-8 * L);
    }

    std::vector<double> err;
    for (std::size_t n : {128, 256, 512, 1024}) {
        const Grid g(L, n);
        const FlowMap phi = sine_map(g, 0.5);
        const Field f = Field::sample(g, [=](double x) { return smooth(x, L); });
        const Field back = compose(compose(f, phi), invert_map(phi));
        err.push_back(gnflow::testing::max_abs_diff(back.values, f.values));
    }
    for (double o : doubling_orders(err))
        CHECK(o >= 2.5);
}

TEST_CASE("folded maps are rejected")
{
    const Grid g(2 * kPi, 64);
    const FlowMap folded = sine_map(g, 1.5);
    CHECK_THROWS_AS(folded.require_monotone("test"), NonMonotoneMap);
    CHECK_THROWS_AS(invert_map(folded), NonMonotoneMap);
    CHECK_THROWS_AS(compose(random_smooth_field(g, 1), folded), NonMonotoneMap);
    CHECK_NOTHROW(sine_map(g, 0.9).require_monotone("test"));
}

}  // TEST_SUITE
