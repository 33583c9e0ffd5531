#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "mixtura/kernels.hpp"

namespace {

using namespace mixtura;

struct Fields {
  std::vector<double> h, rho, rho1, rho2;
  explicit Fields(std::size_t n) : h(n), rho(n), rho1(n), rho2(n) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = static_cast<double>(i) / n;
      rho[i] = 2.0 + 0.1 * std::cos(6.283185307179586 * x);
      h[i] = 0.3 * std::sin(6.283185307179586 * x);
    }
  }
};

const MixtureParams kParams(1.0, 2.0, 0.1, 0.1);

void BM_PhiSerial(benchmark::State& state) {
  Fields f(state.range(0));
  for (auto _ : state) {
    kernels::serial::phi_field(f.h, f.rho, kParams, f.rho1, f.rho2);
    benchmark::DoNotOptimize(f.rho1.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PhiParallel(benchmark::State& state) {
  Fields f(state.range(0));
  for (auto _ : state) {
    kernels::phi_field(f.h, f.rho, kParams, f.rho1, f.rho2);
    benchmark::DoNotOptimize(f.rho1.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CoefficientsSerial(benchmark::State& state) {
  Fields f(state.range(0));
  kernels::EntropicCoefficients out;
  for (auto _ : state) {
    kernels::serial::entropic_coefficients(f.h, f.rho, kParams, out);
    benchmark::DoNotOptimize(out.diffusivity.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CoefficientsParallel(benchmark::State& state) {
  Fields f(state.range(0));
  kernels::EntropicCoefficients out;
  for (auto _ : state) {
    kernels::entropic_coefficients(f.h, f.rho, kParams, out);
    benchmark::DoNotOptimize(out.diffusivity.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FluxSerial(benchmark::State& state) {
  Fields f(state.range(0));
  kernels::serial::phi_field(f.h, f.rho, kParams, f.rho1, f.rho2);
  kernels::FluxCoefficients out;
  for (auto _ : state) {
    kernels::serial::flux_coefficients(f.rho1, f.rho2, kParams, out);
    benchmark::DoNotOptimize(out.c11.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FluxParallel(benchmark::State& state) {
  Fields f(state.range(0));
  kernels::serial::phi_field(f.h, f.rho, kParams, f.rho1, f.rho2);
  kernels::FluxCoefficients out;
  for (auto _ : state) {
    kernels::flux_coefficients(f.rho1, f.rho2, kParams, out);
    benchmark::DoNotOptimize(out.c11.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_PhiSerial)->RangeMultiplier(8)->Range(128, 1 << 18);
BENCHMARK(BM_PhiParallel)->RangeMultiplier(8)->Range(128, 1 << 18);
BENCHMARK(BM_CoefficientsSerial)->RangeMultiplier(8)->Range(128, 1 << 18);
BENCHMARK(BM_CoefficientsParallel)->RangeMultiplier(8)->Range(128, 1 << 18);
BENCHMARK(BM_FluxSerial)->RangeMultiplier(8)->Range(128, 1 << 18);
BENCHMARK(BM_FluxParallel)->RangeMultiplier(8)->Range(128, 1 << 18);

BENCHMARK_MAIN();
