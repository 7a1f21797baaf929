#include "gnflow/bathymetry.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "gnflow/errors.hpp"
#include "gnflow/kernels.hpp"

namespace gnflow {

namespace {

using cplx = std::complex<double>;

void accumulate(const Bathymetry::Packet& p, double length, double x, BottomSample& s)
{
    double z = x - p.center;
    z -= length * std::round(z / length);
    const double w2 = p.width * p.width;
    const cplx q1(-2.0 * z / w2, p.wavenumber);
    const double q2 = -2.0 / w2;
    const cplx e = p.amplitude * std::polar(1.0, p.phase)
                   * std::exp(cplx(-z * z / w2, p.wavenumber * z));
    s.xi += e.real();
    s.xi_x += (q1 * e).real();
    s.xi_xx += ((q2 + q1 * q1) * e).real();
    s.xi_xxx += ((3.0 * q1 * q2 + q1 * q1 * q1) * e).real();
}

void accumulate(const Bathymetry::Sinusoid& sn, double length, double x, BottomSample& s)
{
    const double kappa = 2.0 * std::numbers::pi * sn.mode / length;
    const double arg = kappa * x + sn.phase;
    const double c = std::cos(arg);
    const double si = std::sin(arg);
    const double a = sn.amplitude;
    s.xi += a * c;
    s.xi_x += -a * kappa * si;
    s.xi_xx += -a * kappa * kappa * c;
    s.xi_xxx += a * kappa * kappa * kappa * si;
}

void accumulate(const Bathymetry::Trigonometric& tr, double, double x, BottomSample& s)
{
    const std::size_t m = tr.coeffs.size();
    for (std::size_t k = 0; k < m; ++k) {
        const double weight = (k == 0 || k + 1 == m) ? 1.0 : 2.0;
        const double kap = tr.kappa[k];
        const cplx e = weight * tr.coeffs[k] * std::polar(1.0, kap * x);
        const cplx ik(0.0, kap);
        s.xi += e.real();
        s.xi_x += (ik * e).real();
        s.xi_xx += (ik * ik * e).real();
        s.xi_xxx += (ik * ik * ik * e).real();
    }
}

double term_amplitude(const Bathymetry::Term& t)
{
    if (const auto* p = std::get_if<Bathymetry::Packet>(&t))
        return std::abs(p->amplitude);
    if (const auto* s = std::get_if<Bathymetry::Sinusoid>(&t))
        return std::abs(s->amplitude);
    const auto& tr = std::get<Bathymetry::Trigonometric>(t);
    double a = 0.0;
    for (std::size_t k = 0; k < tr.coeffs.size(); ++k)
        a += ((k == 0 || k + 1 == tr.coeffs.size()) ? 1.0 : 2.0) * std::abs(tr.coeffs[k]);
    return a;
}

}  // namespace

Bathymetry Bathymetry::gaussian_bump(double length, double center, double width, double height)
{
    if (!(width > 0.0))
        throw InvalidDatum("gaussian bump width must be positive");
    Bathymetry b(length);
    b.add(Packet{height, center, width, 0.0, 0.0});
    return b;
}

Bathymetry Bathymetry::sinusoidal(double length, int mode, double amplitude, double phase)
{
    Bathymetry b(length);
    b.add(Sinusoid{amplitude, mode, phase});
    return b;
}

Bathymetry Bathymetry::from_samples(const Field& samples)
{
    const Grid& g = samples.grid;
    const std::size_t n = g.size();
    std::vector<double> in(samples.values);
    std::vector<cplx> out(n / 2 + 1);
    static std::mutex planner;
    fftw_plan plan;
    {
        std::lock_guard lock(planner);
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                    reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner);
        fftw_destroy_plan(plan);
    }
    Trigonometric tr;
    tr.coeffs.resize(out.size());
    tr.kappa.resize(out.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        tr.coeffs[k] = out[k] / static_cast<double>(n);
        tr.kappa[k] = wavenumber(g, k);
    }
    Bathymetry b(g.length());
    b.add(std::move(tr));
    return b;
}

Bathymetry& Bathymetry::add(const Term& term)
{
    terms_.push_back(term);
    return *this;
}

Bathymetry Bathymetry::plus(const Bathymetry& other, double c) const
{
    if (other.length_ != length_)
        throw InvalidDatum("bathymetry domain lengths differ");
    Bathymetry out = *this;
    if (c == 0.0)
        return out;
    for (Term t : other.terms_) {
        if (auto* p = std::get_if<Packet>(&t))
            p->amplitude *= c;
        else if (auto* s = std::get_if<Sinusoid>(&t))
            s->amplitude *= c;
        else
            for (auto& coeff : std::get<Trigonometric>(t).coeffs)
                coeff *= c;
        out.terms_.push_back(std::move(t));
    }
    return out;
}

BottomSample Bathymetry::eval(double x) const
{
    BottomSample s;
    for (const Term& t : terms_)
        std::visit([&](const auto& term) { accumulate(term, length_, x, s); }, t);
    return s;
}

std::vector<BottomSample> Bathymetry::eval_at(std::span<const double> points) const
{
    std::vector<BottomSample> out(points.size());
    if (terms_.empty())
        return out;
    const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static) if (points.size() >= kernels::kParallelMinSize)
    for (std::ptrdiff_t j = 0; j < n; ++j)
        out[j] = eval(points[j]);
    return out;
}

double Bathymetry::amplitude() const
{
    double a = 0.0;
    for (const Term& t : terms_)
        a += term_amplitude(t);
    return a;
}

}  // namespace gnflow
