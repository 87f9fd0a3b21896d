// Copyright 2026 The UQF Authors.
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

#include "uqf/envs.h"
#include "uqf/projection.h"
#include "uqf/spectral.h"

namespace uqf {
namespace {

// Uniform-policy data from gridworld A, the workload of the learning curve.
Dataset uniform_data(const Pomdp& model, int episodes) {
  return extract_examples(
      sample_episodes(model, StatePolicy::uniform(model.num_states, 4), episodes, 100, 1));
}

struct Workload {
  Pomdp model;
  Dataset data;
  Basis basis;

  explicit Workload(int episodes)
      : model(compile_gridworld(builtin_gridworld("A")).model),
        data(uniform_data(model, episodes)),
        basis(select_basis(data, 100, 100, 3)) {}
};

const Workload& workload(int episodes) {
  static const Workload w800(800);
  static const Workload w100(100);
  return episodes >= 800 ? w800 : w100;
}

void BM_EstimateHankel(benchmark::State& state) {
  const Workload& w = workload(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_hankel(w.data, w.basis, w.model.alphabet()));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(w.data.examples.size()));
}
BENCHMARK(BM_EstimateHankel)->Arg(100)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_CompressedSketch(benchmark::State& state) {
  const Workload& w = workload(800);
  const int d = static_cast<int>(state.range(0));
  const JlProjection pu = JlProjection::gaussian(d, 1);
  const JlProjection pv = JlProjection::gaussian(d, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compressed_estimate(w.data, w.basis, w.model.alphabet(), pu, pv));
  }
}
BENCHMARK(BM_CompressedSketch)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_RecoverWfa(benchmark::State& state) {
  const Workload& w = workload(800);
  const HankelEstimate h = estimate_hankel(w.data, w.basis, w.model.alphabet());
  for (auto _ : state) {
    benchmark::DoNotOptimize(recover_wfa(h, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_RecoverWfa)->Arg(2)->Arg(4);

void BM_ForwardStep(benchmark::State& state) {
  const Workload& w = workload(800);
  const Wfa wfa = recover_wfa(estimate_hankel(w.data, w.basis, w.model.alphabet()), 4);
  ForwardState f = ForwardState::initial(wfa);
  const Symbol s{kRight, 1};
  for (auto _ : state) {
    f = step(f, wfa, s);
    f.vector /= f.vector.cwiseAbs().maxCoeff();
    benchmark::DoNotOptimize(f.vector.data());
  }
}
BENCHMARK(BM_ForwardStep);

}  // namespace
}  // namespace uqf

BENCHMARK_MAIN();
