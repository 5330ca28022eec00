#include <benchmark/benchmark.h>

#include "volx/seifert.hpp"

using namespace volx;

namespace {

SeifertData ten_pairs() {
  std::vector<std::pair<BigInt, BigInt>> pairs;
  for (long a : {7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L})
    pairs.emplace_back(a, a - 2);
  return make_seifert_data(1, std::move(pairs));
}

void BM_EulerNumber(benchmark::State& state) {
  const SeifertData s = ten_pairs();
  for (auto _ : state) benchmark::DoNotOptimize(euler_number(s));
}
BENCHMARK(BM_EulerNumber);

void BM_IntegralityCertificate(benchmark::State& state) {
  const SeifertData s = ten_pairs();
  for (auto _ : state) benchmark::DoNotOptimize(integrality_certificate(s));
}
BENCHMARK(BM_IntegralityCertificate);

void BM_UnitTangentBundleCrossCheck(benchmark::State& state) {
  const Orbifold2D o = make_orbifold(3, {BigInt(2), BigInt(3), BigInt(5), BigInt(7), BigInt(11)});
  for (auto _ : state) {
    benchmark::DoNotOptimize(euler_number(unit_tangent_bundle_invariants(o)) == chi_orb(o));
  }
}
BENCHMARK(BM_UnitTangentBundleCrossCheck);

}  // namespace
