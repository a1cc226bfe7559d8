// Copyright 2026 The Burgerstack Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cstdint>

#include "burger/brownian.hpp"
#include "burger/exact_oracle.hpp"
#include "burger/model.hpp"
#include "burger/reduced_state.hpp"
#include "burger/rng.hpp"

namespace {

using namespace burger;

constexpr double kP = 1.0 / 3.0;

void BM_SymbolSampler(benchmark::State& state) {
  SymbolSampler src(kP, StreamId{1, 0});
  for (auto _ : state) benchmark::DoNotOptimize(src.Next());
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SymbolSampler);

void BM_Append(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  SymbolSampler src(kP, StreamId{2, 0});
  for (auto _ : state) {
    ReducedState r;
    for (std::int64_t i = 0; i < n; ++i) benchmark::DoNotOptimize(r.Append(src.Next()));
    benchmark::DoNotOptimize(r.size());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Append)->RangeMultiplier(16)->Range(1 << 8, 1 << 20);

void BM_Prepend(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  SymbolSampler src(kP, StreamId{3, 0});
  for (auto _ : state) {
    ReducedState r(0);
    for (std::int64_t i = 0; i < n; ++i) benchmark::DoNotOptimize(r.Prepend(src.Next()));
    benchmark::DoNotOptimize(r.size());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Prepend)->RangeMultiplier(16)->Range(1 << 8, 1 << 20);

void BM_DpStep(benchmark::State& state) {
  const int cap = static_cast<int>(state.range(0));
  DPTable t = DPTable::Initial(cap);
  for (int i = 0; i < cap - 1; ++i) t = DpStep(t, kP);
  for (auto _ : state) benchmark::DoNotOptimize(DpStep(t, kP));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{2} << cap));
}
BENCHMARK(BM_DpStep)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);

void BM_SampleBm(benchmark::State& state) {
  const CovSpec spec = CovSpec::FromP(kP);
  Engine engine(StreamId{4, 0});
  Gaussian normal(engine);
  for (auto _ : state) benchmark::DoNotOptimize(SampleBm(spec, 1.0, 1e-3, normal));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_SampleBm);

}  // namespace

BENCHMARK_MAIN();
