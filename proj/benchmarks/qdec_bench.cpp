// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "qdec/decouple.hpp"
#include "qdec/entropy.hpp"
#include "qdec/randomu.hpp"
#include "qdec/sdp.hpp"
#include "qdec/twirl.hpp"

namespace {

using namespace qdec;

void BM_HminSdp(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  CounterRng r(1);
  MultiState rho = random_mixed_state(SystemLayout({{"A", d}, {"B", d}}), 0, r);
  for (auto _ : state) benchmark::DoNotOptimize(hmin(rho, {"A"}, {"B"}).value_bits);
}
BENCHMARK(BM_HminSdp)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_HaarUnitary(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  CounterRng r(2);
  for (auto _ : state) benchmark::DoNotOptimize(haar_unitary(d, r).data());
}
BENCHMARK(BM_HaarUnitary)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_McDecoupling(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  CounterRng r(3);
  std::vector<Subsystem> sys, in;
  Labels parties;
  for (int i = 0; i < k; ++i) {
    const std::string a = "A" + std::to_string(i + 1);
    sys.push_back({a, 2});
    in.push_back({a, 2});
    parties.push_back(a);
  }
  sys.push_back({"E", 2});
  MultiState rho = random_mixed_state(SystemLayout(sys), 0, r);
  QChannel ch = depolarizing_channel(SystemLayout(in));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_decoupling_error(rho, ch, parties, 100, 7, Design::haar).mean);
  }
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_McDecoupling)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_LocalSecondMoment(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const int n = 1 << (2 * k);
  CounterRng r(4);
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = r.complex_normal();
  std::vector<int> dims(k, 2);
  for (auto _ : state) benchmark::DoNotOptimize(local_second_moment(m, dims).coefficients.data());
}
BENCHMARK(BM_LocalSecondMoment)->Arg(1)->Arg(2)->Arg(3);

void BM_ExpectedHsNorm(benchmark::State& state) {
  CounterRng r(5);
  MultiState rho = random_mixed_state(SystemLayout({{"A1", 2}, {"A2", 2}, {"E", 2}}), 0, r);
  QChannel ch = depolarizing_channel(SystemLayout({{"A1", 2}, {"A2", 2}}));
  for (auto _ : state) benchmark::DoNotOptimize(expected_hs_norm_sq(rho, ch, {"A1", "A2"}));
}
BENCHMARK(BM_ExpectedHsNorm);

}  // namespace

BENCHMARK_MAIN();
