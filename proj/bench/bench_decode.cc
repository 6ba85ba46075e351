// Copyright 2026 The astar-mle Authors
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

#include "mle/batch.h"
#include "mle/generators.h"
#include "mle/oracle.h"
#include "mle/search.h"
#include "mle/simulator.h"

namespace mle {
namespace {

std::vector<Syndrome> shots_for(const ErrorModel& m, size_t n) {
  Rng rng(1);
  std::vector<Syndrome> out;
  for (size_t i = 0; i < n; ++i) out.push_back(sample_shot(m, rng).syndrome);
  return out;
}

const ErrorModel& surface5() {
  static const ErrorModel m = canonicalize(gen_surface_code_capacity(5, 0.08));
  return m;
}

void BM_DecodeAStar(benchmark::State& state) {
  const auto shots = shots_for(surface5(), 256);
  for (auto _ : state) {
    for (const Syndrome& s : shots) benchmark::DoNotOptimize(decode(surface5(), s));
  }
  state.SetItemsProcessed(state.iterations() * shots.size());
}
BENCHMARK(BM_DecodeAStar);

void BM_DecodeDijkstra(benchmark::State& state) {
  const auto shots = shots_for(surface5(), 256);
  for (auto _ : state) {
    for (const Syndrome& s : shots) benchmark::DoNotOptimize(dijkstra_decode(surface5(), s));
  }
  state.SetItemsProcessed(state.iterations() * shots.size());
}
BENCHMARK(BM_DecodeDijkstra);

void BM_BatchSerial(benchmark::State& state) {
  const auto shots = shots_for(surface5(), 1024);
  DecoderSpec spec;
  spec.kind = DecoderKind::kEnsemble;
  spec.ensemble = short_beam_preset();
  spec.ensemble.num_orderings = 4;
  for (auto _ : state) benchmark::DoNotOptimize(decode_batch_serial(surface5(), shots, spec));
  state.SetItemsProcessed(state.iterations() * shots.size());
}
BENCHMARK(BM_BatchSerial)->Unit(benchmark::kMillisecond);

void BM_BatchParallel(benchmark::State& state) {
  const auto shots = shots_for(surface5(), 1024);
  DecoderSpec spec;
  spec.kind = DecoderKind::kEnsemble;
  spec.ensemble = short_beam_preset();
  spec.ensemble.num_orderings = 4;
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(decode_batch_parallel(surface5(), shots, spec, threads));
  }
  state.SetItemsProcessed(state.iterations() * shots.size());
}
BENCHMARK(BM_BatchParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace mle

BENCHMARK_MAIN();
