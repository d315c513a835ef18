/* SPDX-License-Identifier: Apache-2.0 */

#include "bext/boundary_extension.hpp"
#include "bext/harness.hpp"

#include <benchmark/benchmark.h>

#include <map>

using namespace bext;

namespace {

Rational q(long n, long d = 1) { return Rational(Integer(n), Integer(d)); }

const AlgorithmInputs& identity_inputs(long n) {
  static std::map<long, AlgorithmInputs> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, generate_inputs(GroundTruth(AnalyticTestMap::identity(), n), 16)).first;
  return it->second;
}

void BM_pi_enclosure(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(pi_enclosure(s.range(0)));
}
BENCHMARK(BM_pi_enclosure)->Arg(64)->Arg(256);

void BM_margin_upper(benchmark::State& s) {
  const MarginParams p(q(1, 2), q(13), q(3, 4));
  for (auto _ : s) benchmark::DoNotOptimize(margin_upper(p, s.range(0)));
}
BENCHMARK(BM_margin_upper)->Arg(20)->Arg(40);

void BM_carleson_contains_box(benchmark::State& s) {
  const CarlesonRect c(q(1, 2), q(3, 4), q(1, 10), q(7, 10));
  const RationalRect b(q(3, 5), q(61, 100), q(1, 5), q(21, 100));
  for (auto _ : s) benchmark::DoNotOptimize(carleson_contains(c, b));
}
BENCHMARK(BM_carleson_contains_box);

void BM_generate_inputs(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(generate_inputs(GroundTruth(AnalyticTestMap::identity(), s.range(0)), 16));
}
BENCHMARK(BM_generate_inputs)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_fast_path(benchmark::State& s) {
  const AlgorithmInputs& in = identity_inputs(4);
  const PointApprox p{RationalRect::around({q(1, 3), q(1, 5)}, Rational::pow2(-30))};
  for (auto _ : s) benchmark::DoNotOptimize(algorithm3(in, p, SearchBudget{}));
}
BENCHMARK(BM_fast_path)->Unit(benchmark::kMicrosecond);

void BM_check_configuration(benchmark::State& s) {
  const AlgorithmInputs& in = identity_inputs(4);
  const Constants k = derive_constants(in);
  const GuidedResult r = build_guided_configuration(GroundTruth(AnalyticTestMap::identity(), 4), Integer(3), Integer(5));
  for (auto _ : s) benchmark::DoNotOptimize(check_configuration(in, k.k0, k.N0, *r.attempt));
}
BENCHMARK(BM_check_configuration)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
