#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "ulpar/norms.hpp"
#include "ulpar/semigroup.hpp"
#include "ulpar/spectral.hpp"
#include "ulpar/stepper.hpp"

using namespace ulpar;

namespace {

Field smooth_field(const Grid1D& g, std::size_t M) {
  return Field::from_function(g, M, [](double x, std::size_t j) {
    return std::exp(-0.1 * x * x) * std::cos((1.0 + j) * x) / (1.0 + j);
  });
}

void BM_FftRoundTrip(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const Grid1D g(32.0, n);
  const Field u = smooth_field(g, 8);
  std::vector<cplx> spec(g.spectrum_size() * 8);
  std::vector<double> back(u.size());
  for (auto _ : st) {
    fft_forward(n, 8, u.data().data(), spec.data());
    fft_inverse(n, 8, spec.data(), back.data());
    benchmark::DoNotOptimize(back.data());
  }
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_FftRoundTrip)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oNLogN);

void BM_UlScan(benchmark::State& st) {
  const Grid1D g(32.0, static_cast<std::size_t>(st.range(0)));
  const Field u = smooth_field(g, 8);
  for (auto _ : st) benchmark::DoNotOptimize(ul_scan(u, 2.0).value);
}
BENCHMARK(BM_UlScan)->RangeMultiplier(4)->Range(256, 16384);

void BM_Etd2rkStep(benchmark::State& st) {
  const Grid1D g(32.0, static_cast<std::size_t>(st.range(0)));
  const auto op = assemble(g, make_dirichlet_laplacian(8, 1.0));
  const Nonlinearity F = Nonlinearity::mode_polynomial({0.0, 1.0, 0.0, -1.0});
  const Stepper s(op, F, 1e-3, Scheme::ETD2RK);
  Field u = smooth_field(g, 8);
  for (auto _ : st) {
    u = s.step(u);
    benchmark::DoNotOptimize(u.data().data());
  }
}
BENCHMARK(BM_Etd2rkStep)->RangeMultiplier(4)->Range(256, 4096);

void BM_ResolventApply(benchmark::State& st) {
  const Grid1D g(16.0, static_cast<std::size_t>(st.range(0)));
  Coefficients c;
  c.a = std::vector<double>(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) c.a[k] = 1.0 + 0.3 * std::cos(g.x(k));
  const auto op = assemble(g, make_dirichlet_laplacian(4, 1.0), c);
  const Field u = smooth_field(g, 4);
  for (auto _ : st) benchmark::DoNotOptimize(resolvent_apply(op, cplx(1.0, 0.5), u));
}
BENCHMARK(BM_ResolventApply)->RangeMultiplier(4)->Range(256, 4096);

}  // namespace

BENCHMARK_MAIN();
