#pragma once

#include <complex>
#include <span>
#include <variant>
#include <vector>

#include "gnflow/grid.hpp"

namespace gnflow {

/// xi and its first three derivatives at one point.
struct BottomSample {
    double xi = 0.0;
    double xi_x = 0.0;
    double xi_xx = 0.0;
    double xi_xxx = 0.0;
};

/// Bottom profile xi on the periodic domain [0, L), evaluable with exact
/// derivatives at arbitrary points.
///
/// A profile is a sum of closed-form terms:
///  - packet:   A * Re( e^{i theta} exp(-((x-c)/w)^2 + i k (x-c)) ), evaluated at the
///              periodic image of x nearest to c (k = 0, theta = 0 is a Gaussian bump);
///  - sinusoid: A * cos(2 pi m x / L + theta);
///  - trigonometric interpolant of supplied node samples.
class Bathymetry {
public:
    struct Packet {
        double amplitude, center, width, wavenumber, phase;
    };
    struct Sinusoid {
        double amplitude;
        int mode;
        double phase;
    };
    struct Trigonometric {
        // coefficients c_k, k = 0..n/2, of f(x) = sum_k weight_k Re(c_k e^{i kappa_k x})
        std::vector<std::complex<double>> coeffs;
        std::vector<double> kappa;
    };
    using Term = std::variant<Packet, Sinusoid, Trigonometric>;

    explicit Bathymetry(double length) : length_(length) {}

    static Bathymetry flat(double length) { return Bathymetry(length); }
    static Bathymetry gaussian_bump(double length, double center, double width, double height);
    static Bathymetry sinusoidal(double length, int mode, double amplitude, double phase = 0.0);
    static Bathymetry from_samples(const Field& samples);

    Bathymetry& add(const Term& term);
    /// this + c * other, same domain length.
    Bathymetry plus(const Bathymetry& other, double c) const;

    BottomSample eval(double x) const;
    double xi(double x) const { return eval(x).xi; }
    double xi_x(double x) const { return eval(x).xi_x; }
    double xi_xx(double x) const { return eval(x).xi_xx; }
    double xi_xxx(double x) const { return eval(x).xi_xxx; }

    /// Samples at arbitrary points (OpenMP-dispatched, pure).
    std::vector<BottomSample> eval_at(std::span<const double> points) const;

    bool is_flat() const { return terms_.empty(); }
    double length() const { return length_; }
    /// Upper bound on max |xi| (sum of term amplitudes).
    double amplitude() const;

    const std::vector<Term>& terms() const { return terms_; }

private:
    double length_;
    std::vector<Term> terms_;
};

}  // namespace gnflow
