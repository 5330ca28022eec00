#include <benchmark/benchmark.h>

#include "volx/catalog.hpp"
#include "volx/checks.hpp"

using namespace volx;

namespace {

void BM_WedgeTopFormEval(benchmark::State& state) {
  const HopfBundle hopf = hopf_bundle();
  const KForm vol3 = wedge(hopf.alpha, ext_d(hopf.alpha));
  const std::vector<double> p{0.7, 1.3, 2.9};
  for (auto _ : state) benchmark::DoNotOptimize(vol3.coeffs_at(p));
}
BENCHMARK(BM_WedgeTopFormEval);

void BM_ExtDAnalytic(benchmark::State& state) {
  const HopfBundle hopf = hopf_bundle();
  const KForm da = ext_d(hopf.alpha);
  const std::vector<double> p{0.7, 1.3, 2.9};
  for (auto _ : state) benchmark::DoNotOptimize(da.coeffs_at(p));
}
BENCHMARK(BM_ExtDAnalytic);

void BM_ExtDFiniteDifference(benchmark::State& state) {
  const KForm w = random_polynomial_form({5, 2, 3, -5, 5, 17});
  // strip the analytic gradient so d falls back to central differences
  const KForm plain(w.chart(), 2, [w](std::span<const double> x) { return w.coeffs_at(x); });
  const KForm dw = ext_d(plain);
  const std::vector<double> p{0.1, -0.4, 0.9, 0.2, -0.8};
  for (auto _ : state) benchmark::DoNotOptimize(dw.coeffs_at(p));
}
BENCHMARK(BM_ExtDFiniteDifference);

void BM_PullbackSectionCurvature(benchmark::State& state) {
  const HopfBundle hopf = hopf_bundle();
  const KForm pulled = pullback(hopf_section(), ext_d(hopf.alpha));
  const std::vector<double> p{1.7, 0.4};
  for (auto _ : state) benchmark::DoNotOptimize(pulled.coeffs_at(p));
}
BENCHMARK(BM_PullbackSectionCurvature);

void BM_IdentityResidualDim5N2(benchmark::State& state) {
  const KForm a = random_polynomial_form({5, 1, 2, -5, 5, 3});
  const KForm b = random_polynomial_form({5, 1, 2, -5, 5, 4});
  const std::vector<Point> pts = sample_interior_points(cube_chart(5), 5, 1, 1e-3);
  for (auto _ : state) benchmark::DoNotOptimize(abbondandolo_residual(a, b, 2, pts));
}
BENCHMARK(BM_IdentityResidualDim5N2);

}  // namespace
