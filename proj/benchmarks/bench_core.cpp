// Copyright 2026 The bellsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "bellsim/cat_scenario.hpp"
#include "bellsim/lhv.hpp"
#include "bellsim/mc_harness.hpp"
#include "bellsim/measurement.hpp"
#include "bellsim/monty.hpp"
#include "bellsim/qlin.hpp"
#include "bellsim/quantum_bell.hpp"
#include "bellsim/random_states.hpp"

namespace {

using namespace bellsim;  // NOLINT

void BM_PartialTrace(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  mc::TrialRng rng({1, 0}, 0);
  const auto rho = qlin::random_density_matrix(qlin::TensorSpace({d, d}), rng);
  for (auto _ : state) benchmark::DoNotOptimize(qlin::partial_trace(rho, {0}));
}
BENCHMARK(BM_PartialTrace)->Arg(2)->Arg(4)->Arg(8);

void BM_HermitianEigenvalues(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  mc::TrialRng rng({1, 0}, 0);
  const auto rho = qlin::random_density_matrix(qlin::TensorSpace::single(d), rng);
  for (auto _ : state) benchmark::DoNotOptimize(qlin::hermitian_eigenvalues(rho.matrix()));
}
BENCHMARK(BM_HermitianEigenvalues)->Arg(4)->Arg(12)->Arg(32);

void BM_DephasingVsUnitary(benchmark::State& state) {
  mc::TrialRng rng({1, 0}, 0);
  const qlin::TensorSpace sys = qlin::TensorSpace::single(3);
  const auto rho = qlin::random_density_matrix(sys, rng);
  const auto m = measurement::basis_projectors(3);
  const auto u = measurement::ideal_measurement_unitary(m, 3);
  const qlin::DensityMatrix ready(qlin::PureState::basis(qlin::TensorSpace::single(3), 0));
  const auto joint = qlin::tensor_product(rho, ready);
  if (state.range(0) == 0) {
    for (auto _ : state) benchmark::DoNotOptimize(measurement::dephasing_channel(rho, m));
  } else {
    for (auto _ : state) {
      benchmark::DoNotOptimize(qlin::partial_trace(qlin::evolve(joint, u), {0}));
    }
  }
}
BENCHMARK(BM_DephasingVsUnitary)->ArgName("unitary")->Arg(0)->Arg(1);

void BM_SingletTrials(benchmark::State& state) {
  const auto workers = static_cast<unsigned>(state.range(0));
  const Angle a = Angle::from_degrees(0), b = Angle::from_degrees(45);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        quantum_bell::correlation_with_trials(a, b, 100'000, {42, 0}, workers));
  }
  state.SetItemsProcessed(state.iterations() * 100'000);
}
BENCHMARK(BM_SingletTrials)->ArgName("workers")->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_LhvRandomFleet(benchmark::State& state) {
  const auto s = ChshSettings::maximal_violation();
  for (auto _ : state) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 1000; ++i) {
      mc::TrialRng rng({42, 0}, i);
      const auto m = lhv::random_model(1 + rng.uniform_index(32), s, rng);
      worst = std::max(worst, std::abs(lhv::chsh_exact(m, {})));
    }
    benchmark::DoNotOptimize(worst);
  }
}
BENCHMARK(BM_LhvRandomFleet)->Unit(benchmark::kMillisecond);

void BM_MontyGame(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t trial = 0;
  for (auto _ : state) {
    mc::TrialRng rng({42, 0}, trial++);
    benchmark::DoNotOptimize(monty::simulate_game(n, n - 2, monty::Strategy::kSwitch, rng));
  }
}
BENCHMARK(BM_MontyGame)->Arg(3)->Arg(1'000'000);

void BM_CatStory(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cat::stage_report(cat::run_story(1.0).seen));
}
BENCHMARK(BM_CatStory);

}  // namespace

BENCHMARK_MAIN();
