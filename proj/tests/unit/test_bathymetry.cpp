#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gnflow/bathymetry.hpp"
#include "gnflow/operator.hpp"

using namespace gnflow;

namespace {

constexpr double kPi = std::numbers::pi;

// Centered differences of the next-lower derivative.
void check_derivatives(const Bathymetry& b, double x)
{
    const double e = 1e-5;
    const BottomSample s = b.eval(x);
    const BottomSample p = b.eval(x + e);
    const BottomSample m = b.eval(x - e);
    const double scale = 1.0 + std::abs(s.xi) + std::abs(s.xi_x) + std::abs(s.xi_xx);
    CHECK(std::abs((p.xi - m.xi) / (2 * e) - s.xi_x) <= 1e-7 * scale);
    CHECK(std::abs((p.xi_x - m.xi_x) / (2 * e) - s.xi_xx) <= 1e-7 * scale);
    CHECK(std::abs((p.xi_xx - m.xi_xx) / (2 * e) - s.xi_xxx) <= 1e-6 * scale);
}

}  // namespace

TEST_SUITE("bathymetry") {

TEST_CASE("flat bottom is identically zero")
{
    const Bathymetry b = Bathymetry::flat(10.0);
    CHECK(b.is_flat());
    for (double x : {0.0, 1.3, 9.99}) {
        const BottomSample s = b.eval(x);
        CHECK(s.xi == 0.0);
        CHECK(s.xi_x == 0.0);
        CHECK(s.xi_xx == 0.0);
        CHECK(s.xi_xxx == 0.0);
    }
}

TEST_CASE("gaussian bump values and derivatives")
{
    const Bathymetry b = Bathymetry::gaussian_bump(40.0, 20.0, 3.0, 0.4);
    CHECK(b.xi(20.0) == doctest::Approx(0.4));
    CHECK(b.xi(23.0) == doctest::Approx(0.4 * std::exp(-1.0)));
    CHECK(b.xi_x(20.0) == 0.0);
    for (double x : {14.0, 18.5, 21.0, 25.0, 33.0})
        check_derivatives(b, x);
    // nearest periodic image
    const Bathymetry w = Bathymetry::gaussian_bump(40.0, 1.0, 2.0, 0.3);
    CHECK(w.xi(39.0) == doctest::Approx(w.xi(3.0)));
    CHECK(w.xi(39.0 + 40.0) == doctest::Approx(w.xi(39.0)));
}

TEST_CASE("sinusoid")
{
    const double L = 8.0;
    const Bathymetry b = Bathymetry::sinusoidal(L, 3, 0.2, 0.5);
    const double k = 2 * kPi * 3 / L;
    for (double x : {0.0, 0.7, 5.1}) {
        CHECK(b.xi(x) == doctest::Approx(0.2 * std::cos(k * x + 0.5)));
        CHECK(b.xi_x(x) == doctest::Approx(-0.2 * k * std::sin(k * x + 0.5)));
        CHECK(b.xi_xxx(x) == doctest::Approx(0.2 * k * k * k * std::sin(k * x + 0.5)));
        check_derivatives(b, x);
    }
    CHECK(b.amplitude() == doctest::Approx(0.2));
}

TEST_CASE("packets and scaled sums")
{
    Bathymetry b(30.0);
    b.add(Bathymetry::Packet{0.1, 15.0, 2.0, 3.0, 0.4});
    for (double x : {12.0, 15.0, 16.2})
        check_derivatives(b, x);
    const Bathymetry s = Bathymetry::gaussian_bump(30.0, 10.0, 2.0, 0.2).plus(b, 0.5);
    for (double x : {9.0, 14.5})
        CHECK(s.xi(x) == doctest::Approx(Bathymetry::gaussian_bump(30.0, 10.0, 2.0, 0.2).xi(x) + 0.5 * b.xi(x)));
}

TEST_CASE("trigonometric interpolant of samples")
{
    const Grid g(5.0, 64);
    const Field f = random_smooth_field(g, 21, 6, 0.1);
    const Bathymetry b = Bathymetry::from_samples(f);
    for (std::size_t j = 0; j < g.size(); ++j)
        CHECK(std::abs(b.xi(g.node(j)) - f[j]) <= 1e-13);
    check_derivatives(b, 1.234);

    const std::vector<double> pts{0.1, 2.2, 4.9};
    const auto many = b.eval_at(pts);
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(many[i].xi_xx == b.xi_xx(pts[i]));
}

}  // TEST_SUITE
