#include <benchmark/benchmark.h>

#include "ptk/extract.hpp"
#include "ptk/oracle.hpp"
#include "ptk/presets.hpp"
#include "ptk/transport.hpp"

using namespace ptk;

static void BM_SweepSingle(benchmark::State& state) {
    const auto p = presets::good_cavity();
    const auto grid = default_grid(p, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(sweep_single(p, grid, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SweepSingle)->Arg(2001)->Arg(20001);

static void BM_SweepG2(benchmark::State& state) {
    const auto p = presets::good_cavity();
    const auto grid = default_grid(p, static_cast<std::size_t>(state.range(0)));
    const auto threads = static_cast<unsigned>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(sweep_g2(p, grid, {2, 2}, 0.0, threads));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SweepG2)->Args({2001, 1})->Args({2001, 4})->Unit(benchmark::kMillisecond);

static void BM_HClosed(benchmark::State& state) {
    const auto p = presets::good_cavity();
    const double tau = 1.0 / p.kappa_total();
    for (auto _ : state) benchmark::DoNotOptimize(h_closed(p, p.omega_c + 0.3 * p.g, p.omega_c - 0.1 * p.g, tau));
}
BENCHMARK(BM_HClosed);

static void BM_HQuadrature(benchmark::State& state) {
    const auto p = state.range(0) ? presets::good_cavity() : presets::bad_cavity();
    const double tau = static_cast<double>(state.range(1)) / p.kappa_total();
    const double w = good_cavity(p) ? p.g : p.kappa_total();
    for (auto _ : state)
        benchmark::DoNotOptimize(h_quadrature(p, p.omega_c + 0.3 * w, p.omega_c - 0.1 * w, tau));
}
BENCHMARK(BM_HQuadrature)->Args({1, 0})->Args({1, 3})->Args({0, 0})->Args({0, 3})->Unit(benchmark::kMillisecond);

static void BM_Lindblad(benchmark::State& state) {
    const auto p = presets::good_cavity();
    LindbladConfig cfg;
    cfg.detuning = 0.5 * p.g;
    cfg.fock_cutoff = static_cast<int>(state.range(0));
    cfg.check_cutoff = false;
    for (auto _ : state) benchmark::DoNotOptimize(lindblad_g2(p, cfg, {2, 2}, {0.0, 1.0 / p.kappa_total()}));
}
BENCHMARK(BM_Lindblad)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_TdSingle(benchmark::State& state) {
    const auto p = state.range(0) ? presets::good_cavity() : presets::bad_cavity();
    const double half = good_cavity(p) ? 1.5 * p.g : 3.0 * p.kappa_total();
    const auto pulse = make_pulse(p, p.omega_c, half / 2);
    for (auto _ : state) benchmark::DoNotOptimize(td_single(p, pulse));
}
BENCHMARK(BM_TdSingle)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

static void BM_ExtractParams(benchmark::State& state) {
    const auto cav = presets::paper_cavity();
    const auto coax = presets::paper_coax();
    const auto tr = presets::paper_transmon();
    const auto dip = presets::good_dipole();
    for (auto _ : state) benchmark::DoNotOptimize(extract_params(cav, coax, tr, dip));
}
BENCHMARK(BM_ExtractParams)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
