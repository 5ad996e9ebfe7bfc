// Copyright 2026 The Spintomo Authors
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

// Micro-benchmarks for the hot paths: map composition and application,
// quadrature sampling, reconstruction, and the truncated-ladder gate.

#include <benchmark/benchmark.h>

#include <cmath>

#include "spintomo/fock_oracle.hpp"
#include "spintomo/interactions.hpp"
#include "spintomo/rng.hpp"
#include "spintomo/schemes.hpp"
#include "spintomo/tomography.hpp"

using namespace spintomo;

namespace {

GaussianState probe_state() {
  auto state = vacuum_state(light_spin_layout());
  prepare_mode(state, modes::kLight, {StatePrep::Kind::Squeezed, {0, 0}, 0.6, 0.5});
  prepare_mode(state, modes::kSpin, {StatePrep::Kind::Coherent, {0.7, -0.2}, 0.0, 0.5});
  return state;
}

void BM_ComposeThreePass(benchmark::State& bm) {
  const auto& layout = light_spin_layout();
  for (auto _ : bm) {
    auto map = compose(
        {fr_pass(layout, {CouplingType::Z, +1, 1.0}, modes::kLight, modes::kSpin),
         fr_pass(layout, {CouplingType::Y, +1, 1.0}, modes::kLight, modes::kSpin),
         fr_pass(layout, {CouplingType::Z, +1, 1.0}, modes::kLight, modes::kSpin)});
    benchmark::DoNotOptimize(map);
  }
}
BENCHMARK(BM_ComposeThreePass);

void BM_ApplyMap(benchmark::State& bm) {
  const auto state = probe_state();
  const auto map = two_pass_transducer_map(1.0);
  for (auto _ : bm) {
    auto out = apply_map(state, map);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_ApplyMap);

void BM_HomodyneSample(benchmark::State& bm) {
  const auto state = apply_map(probe_state(), two_pass_transducer_map(1.0));
  StreamRng rng(42, 0);
  for (auto _ : bm) {
    auto rec = homodyne_sample(state, {modes::kLight, 1.5 * M_PI}, rng);
    benchmark::DoNotOptimize(rec);
  }
}
BENCHMARK(BM_HomodyneSample);

void BM_DoubleHomodyne(benchmark::State& bm) {
  const auto state = apply_map(probe_state(), three_pass_swap_map());
  StreamRng rng(42, 0);
  for (auto _ : bm) {
    auto rec = double_homodyne_sample(state, modes::kLight, rng);
    benchmark::DoNotOptimize(rec);
  }
}
BENCHMARK(BM_DoubleHomodyne);

void BM_FbpReconstruct(benchmark::State& bm) {
  const auto samples = tomography_scan({StatePrep::Kind::Vacuum, {0, 0}, 0.0, 0.5},
                                       {0.0, M_PI / 3, 2 * M_PI / 3}, 4000, {7, 1});
  const auto sino = Sinogram::from_samples(samples, 101, 5.0);
  FbpOptions opt;
  opt.grid.resolution = 32;
  for (auto _ : bm) {
    auto grid = fbp_reconstruct(sino, opt);
    benchmark::DoNotOptimize(grid);
  }
}
BENCHMARK(BM_FbpReconstruct)->Unit(benchmark::kMillisecond);

void BM_HusimiEstimate(benchmark::State& bm) {
  const auto samples =
      husimi_acquisition({StatePrep::Kind::Coherent, {1.0, 0.0}, 0.0, 0.5}, 5000, {7, 1});
  HusimiOptions opt;
  opt.grid.resolution = 64;
  for (auto _ : bm) {
    auto est = husimi_estimate(samples, opt);
    benchmark::DoNotOptimize(est);
  }
}
BENCHMARK(BM_HusimiEstimate)->Unit(benchmark::kMillisecond);

void BM_FockGate(benchmark::State& bm) {
  const int d = static_cast<int>(bm.range(0));
  const auto base =
      fock::product(fock::coherent_fock(d, {0.6, 0.0}), fock::coherent_fock(d, {0.0, 0.3}));
  for (auto _ : bm) {
    auto state = base;
    fock::apply_gate(state, CouplingType::Z, 1.0);
    benchmark::DoNotOptimize(state);
  }
}
BENCHMARK(BM_FockGate)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
