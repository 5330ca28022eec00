#include <benchmark/benchmark.h>

#include "volx/catalog.hpp"

using namespace volx;

namespace {

void BM_HopfVolume(benchmark::State& state) {
  const HopfBundle hopf = hopf_bundle();
  const KForm vol3 = wedge(hopf.alpha, ext_d(hopf.alpha));
  const ParametrizedChain chain = s3_chain();
  const GaussLegendre spec{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(integrate_form(vol3, chain, spec));
}
BENCHMARK(BM_HopfVolume)->Arg(8)->Arg(16)->Arg(32);

void BM_HopfVolumeMonteCarlo(benchmark::State& state) {
  const HopfBundle hopf = hopf_bundle();
  const KForm vol3 = wedge(hopf.alpha, ext_d(hopf.alpha));
  const ParametrizedChain chain = s3_chain();
  const MonteCarlo spec{state.range(0), 42};
  for (auto _ : state) benchmark::DoNotOptimize(integrate_form(vol3, chain, spec));
}
BENCHMARK(BM_HopfVolumeMonteCarlo)->Arg(10000)->Arg(100000);

void BM_SectionFluxPanels(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(hopf_section_flux(1e3, GaussLegendre{32}));
}
BENCHMARK(BM_SectionFluxPanels);

void BM_DiscVolumeDirect(benchmark::State& state) {
  const HProfile h = make_hprofile([](double u) { return 2.0 - u; }, [](double) { return -1.0; });
  for (auto _ : state)
    benchmark::DoNotOptimize(disc_volume(h, DiscMethod::direct, GaussLegendre{32}));
}
BENCHMARK(BM_DiscVolumeDirect);

}  // namespace
