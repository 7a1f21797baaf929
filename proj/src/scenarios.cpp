#include "gnflow/scenarios.hpp"

#include <cmath>

#include "gnflow/errors.hpp"

namespace gnflow {

SampledDatum sample(const Datum& d, const Grid& g)
{
    if (std::abs(g.length() - d.length) > 1e-12 * d.length)
        throw InvalidDatum("grid length does not match the datum domain");
    Field h = Field::sample(g, d.h0);
    Field u = Field::sample(g, d.u0);
    EulerianState e = EulerianState::make(0.0, h, u);

    if (!d.disp0) {
        LagrangianState l = LagrangianState::at_rest_map(0.0, u);
        return SampledDatum{g, std::move(e), std::move(l), InitialDepth{DepthField(h)}};
    }
    // Labels start at phi0: label depth is (h o phi0) phi0_x and velocity u o phi0.
    FlowMap phi{Field::sample(g, d.disp0)};
    const Field jac = phi.jacobian();
    const Field h_at = compose(d.h0, phi);
    const Field u_at = compose(d.u0, phi);
    LagrangianState l{0.0, phi.disp, u_at};
    return SampledDatum{g, std::move(e), std::move(l), InitialDepth{DepthField(h_at * jac)}};
}

Datum hump_datum(std::string name, double length, Bathymetry bottom, double center, double width,
                 double amplitude, double froude, double surface, double gravity)
{
    Datum d;
    d.name = std::move(name);
    d.length = length;
    d.bottom = bottom;
    d.surface = surface;
    d.gravity = gravity;
    auto hump = [=](double x) {
        double z = x - center;
        z -= length * std::round(z / length);
        return amplitude * std::exp(-(z * z) / (width * width));
    };
    d.h0 = [=](double x) { return surface - bottom.xi(x) + hump(x); };
    const double cw = froude * std::sqrt(gravity / surface);
    d.u0 = [=](double x) { return cw * hump(x); };
    return d;
}

Datum still_datum(std::string name, double length, Bathymetry bottom, double surface,
                  double gravity)
{
    Datum d;
    d.name = std::move(name);
    d.length = length;
    d.bottom = bottom;
    d.surface = surface;
    d.gravity = gravity;
    d.h0 = [=](double x) { return surface - bottom.xi(x); };
    d.u0 = [](double) { return 0.0; };
    return d;
}

double SolitaryWave::speed() const { return std::sqrt(gravity * (depth + amplitude)); }

double SolitaryWave::kappa() const
{
    return std::sqrt(3.0 * amplitude) / (2.0 * depth * std::sqrt(depth + amplitude));
}

double SolitaryWave::h(double x, double t) const
{
    double z = x - center - speed() * t;
    z -= length * std::round(z / length);
    const double s = 1.0 / std::cosh(kappa() * z);
    return depth + amplitude * s * s;
}

double SolitaryWave::u(double x, double t) const
{
    return speed() * (1.0 - depth / h(x, t));
}

Datum solitary_datum(const SolitaryWave& w)
{
    Datum d;
    d.name = "solitary-flat";
    d.length = w.length;
    d.bottom = Bathymetry::flat(w.length);
    d.surface = w.depth;
    d.gravity = w.gravity;
    d.h0 = [w](double x) { return w.h(x); };
    d.u0 = [w](double x) { return w.u(x); };
    return d;
}

namespace {

double wrapped(double x, double center, double length)
{
    double z = x - center;
    z -= length * std::round(z / length);
    return z;
}

}  // namespace

Datum depression_probe(double length, double center, double width, double depth_fraction,
                       double velocity)
{
    Datum d;
    d.name = "depression-probe";
    d.length = length;
    d.bottom = Bathymetry::flat(length);
    d.h0 = [=](double x) {
        const double z = wrapped(x, center, length) / width;
        return 1.0 - depth_fraction * std::exp(-z * z);
    };
    d.u0 = [=](double x) {
        const double z = wrapped(x, center, length) / width;
        return velocity * z * std::exp(-z * z);
    };
    return d;
}

Datum fold_probe(double length, double center, double width, double fold, double velocity)
{
    Datum d;
    d.name = "fold-probe";
    d.length = length;
    d.bottom = Bathymetry::flat(length);
    d.h0 = [](double) { return 1.0; };
    d.u0 = [=](double x) {
        const double y = wrapped(x, center, length);
        const double z = y / width;
        return -velocity * y * std::exp(-z * z);
    };
    d.disp0 = [=](double x) {
        const double y = wrapped(x, center, length);
        const double z = y / width;
        return -fold * y * std::exp(-z * z);
    };
    return d;
}

const std::vector<std::string>& scenario_names()
{
    static const std::vector<std::string> names{"lake-at-rest", "gaussian-bump-splash",
                                                "solitary-flat", "shoaling-over-bump"};
    return names;
}

ScenarioPreset builtin_scenario(const std::string& name)
{
    if (name == "lake-at-rest") {
        const double L = 64.0;
        return {still_datum(name, L, Bathymetry::gaussian_bump(L, 32.0, 3.0, 0.4)), 512, 1.0,
                1e-10};
    }
    if (name == "gaussian-bump-splash") {
        const double L = 64.0;
        return {hump_datum(name, L, Bathymetry::gaussian_bump(L, 32.0, 3.0, 0.3), 32.0, 2.0, 0.1,
                           0.0),
                512, 4.0, 1e-10};
    }
    if (name == "solitary-flat") {
        const SolitaryWave w{0.2, 1.0, 1.0, 75.0, 300.0};
        // Half a domain crossing; small dispersive radiation shed by the discrete
        // profile travels slower than the wave and may wrap into the guard band.
        return {solitary_datum(w), 4096, 0.5 * w.length / w.speed(), 1e-4};
    }
    if (name == "shoaling-over-bump") {
        const double L = 100.0;
        return {hump_datum(name, L, Bathymetry::gaussian_bump(L, 55.0, 5.0, 0.5), 35.0, 3.0, 0.1,
                           1.0),
                512, 10.0, 1e-10};
    }
    throw InvalidDatum("unknown scenario '" + name + "'");
}

}  // namespace gnflow
