// Serial reference against the OpenMP kernels, plus one full solver step.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "gnflow/eulerian.hpp"
#include "gnflow/kernels.hpp"
#include "gnflow/scenarios.hpp"

namespace k = gnflow::kernels;

namespace {

std::vector<double> wave(std::size_t n)
{
    std::vector<double> f(n);
    for (std::size_t j = 0; j < n; ++j)
        f[j] = std::sin(0.01 * double(j)) + 0.1 * std::cos(0.37 * double(j));
    return f;
}

template <auto Fn>
void deriv(benchmark::State& st)
{
    const std::size_t n = st.range(0);
    const std::vector<double> f = wave(n);
    std::vector<double> out(n);
    for (auto _ : st) {
        Fn(f, out, 0.1);
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * n);
}

template <auto Fn>
void assemble(benchmark::State& st)
{
    const std::size_t n = st.range(0);
    const std::vector<double> c0 = wave(n), c1(n, 0.1), c2(n, 1.0 / 3.0);
    std::vector<double> diag(n), off(n);
    for (auto _ : st) {
        Fn(c0, c1, c2, 0.1, diag, off);
        benchmark::DoNotOptimize(diag.data());
    }
    st.SetItemsProcessed(st.iterations() * n);
}

template <auto Fn>
void band(benchmark::State& st)
{
    const std::size_t n = st.range(0);
    const std::vector<double> d(n, 4.0), o(n, 1.0), u = wave(n);
    std::vector<double> out(n);
    for (auto _ : st) {
        Fn(k::BandView{d, o}, u, out);
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * n);
}

template <auto Fn>
void sample(benchmark::State& st)
{
    const std::size_t n = st.range(0);
    const gnflow::Bathymetry xi = gnflow::Bathymetry::gaussian_bump(100.0, 50.0, 5.0, 0.5);
    std::vector<double> x(n), out(n);
    for (std::size_t j = 0; j < n; ++j)
        x[j] = 100.0 * double(j) / double(n);
    const std::function<double(double)> f = [&](double p) { return xi.xi(p); };
    for (auto _ : st) {
        Fn(f, x, out);
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * n);
}

void rk4_step(benchmark::State& st)
{
    const std::size_t n = st.range(0);
    const gnflow::ScenarioPreset p = gnflow::builtin_scenario("shoaling-over-bump");
    const gnflow::SampledDatum sd = gnflow::sample(p.datum, gnflow::Grid(p.datum.length, n));
    for (auto _ : st) {
        gnflow::EulerianState s = gnflow::step_rk4(sd.eulerian, 1e-3, p.datum.bottom, gnflow::Gravity(1.0));
        benchmark::DoNotOptimize(s.h.values.data());
    }
}

constexpr long kLo = 1 << 10, kHi = 1 << 20;

}  // namespace

BENCHMARK(deriv<k::serial::deriv4>)->Name("deriv4/serial")->RangeMultiplier(8)->Range(kLo, kHi);
BENCHMARK(deriv<k::omp::deriv4>)->Name("deriv4/omp")->RangeMultiplier(8)->Range(kLo, kHi);
BENCHMARK(deriv<k::serial::mass_product>)->Name("mass/serial")->RangeMultiplier(8)->Range(kLo, kHi);
BENCHMARK(deriv<k::omp::mass_product>)->Name("mass/omp")->RangeMultiplier(8)->Range(kLo, kHi);
BENCHMARK(assemble<k::serial::assemble_p1>)->Name("assemble/serial")->RangeMultiplier(8)->Range(kLo, kHi);
BENCHMARK(assemble<k::omp::assemble_p1>)->Name("assemble/omp")->RangeMultiplier(8)->Range(kLo, kHi);
BENCHMARK(band<k::serial::band_apply>)->Name("band/serial")->RangeMultiplier(8)->Range(kLo, kHi);
BENCHMARK(band<k::omp::band_apply>)->Name("band/omp")->RangeMultiplier(8)->Range(kLo, kHi);
BENCHMARK(sample<k::serial::sample>)->Name("sample/serial")->RangeMultiplier(8)->Range(kLo, kHi);
BENCHMARK(sample<k::omp::sample>)->Name("sample/omp")->RangeMultiplier(8)->Range(kLo, kHi);
BENCHMARK(rk4_step)->RangeMultiplier(4)->Range(512, 8192)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
