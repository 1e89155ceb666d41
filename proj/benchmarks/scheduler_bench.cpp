// Copyright 2026 The Serenade Simulator Authors
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

#include "serenade/common.hpp"
#include "serenade/merge_oracle.hpp"
#include "serenade/ouroboros_stats.hpp"
#include "serenade/populate.hpp"
#include "serenade/switch_sim.hpp"
#include "serenade/variants.hpp"

namespace {

using namespace serenade;

struct Inputs {
  FullMatching s_r;
  FullMatching s_g;
  WeightMatrix q;
};

Inputs make_inputs(std::size_t n) {
  Rng rng(1, {n});
  Inputs in{FullMatching{sample_uniform_permutation(n, rng)},
            FullMatching{sample_uniform_permutation(n, rng)}, WeightMatrix(n)};
  for (VertexId i = 1; i <= n; ++i) {
    in.q.set(i, in.s_r.output_of(i), rng.below(50));
    in.q.set(i, in.s_g.output_of(i), rng.below(50));
  }
  return in;
}

void BM_SerenaMerge(benchmark::State& state) {
  const auto in = make_inputs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serena_merge(in.s_r, in.s_g, in.q));
}
BENCHMARK(BM_SerenaMerge)->RangeMultiplier(4)->Range(16, 1024);

void BM_CommonStage(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto in = make_inputs(n);
  CommonConfig cfg;
  cfg.mode = CommonMode::WithLeaders;
  for (auto _ : state) {
    MessageLog log(n, false);
    benchmark::DoNotOptimize(run_common(in.s_r, in.s_g, in.q, cfg, log));
  }
}
BENCHMARK(BM_CommonStage)->RangeMultiplier(4)->Range(16, 1024);

void BM_ESerenade(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto in = make_inputs(n);
  Rng coin(2);
  const auto kind = SchedulerKind::parse("e");
  for (auto _ : state) {
    MessageLog log(n, false);
    benchmark::DoNotOptimize(schedule(kind, in.s_r, in.s_g, in.q, coin, log));
  }
}
BENCHMARK(BM_ESerenade)->RangeMultiplier(4)->Range(16, 1024);

void BM_PopulateParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  const auto p = sample_uniform_permutation(n, rng);
  std::vector<std::optional<VertexId>> out(n);
  for (VertexId i = 1; i <= n; ++i)
    if (rng.below(2)) out[i - 1] = p(i);
  const PartialMatching pm(std::move(out));
  for (auto _ : state) {
    MessageLog log(n, false);
    benchmark::DoNotOptimize(populate_parallel(pm, log));
  }
}
BENCHMARK(BM_PopulateParallel)->RangeMultiplier(4)->Range(16, 1024);

void BM_SwitchSlot(benchmark::State& state) {
  ExperimentConfig c;
  c.n_ports = static_cast<std::size_t>(state.range(0));
  c.scheduler = SchedulerKind::parse("so:0.01");
  c.traffic.load = 0.9;
  SwitchSimulator sim(c);
  for (auto _ : state) benchmark::DoNotOptimize(sim.step());
}
BENCHMARK(BM_SwitchSlot)->Arg(16)->Arg(64);

}  // namespace
BENCHMARK_MAIN();
