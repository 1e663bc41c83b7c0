// Copyright 2026 The spincat Authors
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

#include "spincat/dynamics.hpp"
#include "spincat/smp.hpp"
#include "spincat/tomography.hpp"
#include "spincat/wigner.hpp"

using namespace spincat;

namespace {

void BM_propagator(benchmark::State& state) {
  const SpinSystem sys = SpinSystem::from_twice(static_cast<int>(state.range(0)));
  const Matrix h = effective_hamiltonian(sys, omega_from_hz(15220.0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(expm_hermitian(h, cat_time(15220.0)));
}
BENCHMARK(BM_propagator)->Arg(3)->Arg(7)->Arg(15);

void BM_wigner_grid(benchmark::State& state) {
  const SpinSystem sys(1.5);
  const DensityMatrix rho = DensityMatrix::pure(cat_state(sys, {0.5 * kPi, 0.0}, 1));
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(wigner_function(sys, rho, {n, 2 * n}));
}
BENCHMARK(BM_wigner_grid)->Arg(64)->Arg(128);

void BM_design_matrix(benchmark::State& state) {
  const SpinSystem sys(1.5);
  AcquisitionOptions options;
  options.mode = state.range(0) == 0 ? AcquisitionMode::Coherence : AcquisitionMode::Fid;
  const auto cycles = phase_cycles(sys);
  for (auto _ : state) benchmark::DoNotOptimize(build_design_matrix(sys, cycles, options));
}
BENCHMARK(BM_design_matrix)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_reconstruct(benchmark::State& state) {
  const SpinSystem sys(1.5);
  const auto cycles = phase_cycles(sys);
  const DesignSystem design = build_design_matrix(sys, cycles);
  const Matrix rho = DensityMatrix::pure(cat_state(sys, {0.5 * kPi, 0.0}, 1)).matrix();
  const Vector b = acquire(sys, rho, cycles, {}, {0.01, 0.0, 1});
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(design, b));
}
BENCHMARK(BM_reconstruct);

void BM_smp_gradient(benchmark::State& state) {
  const SpinSystem sys(1.5);
  NmrParams params;
  params.omega_q = omega_from_hz(15220.0);
  PulseSequence seq;
  for (int k = 0; k < state.range(0); ++k) seq.segments.push_back({2.0 * kPi * 40e3, 0.3 * k, 0.5e-6});
  const DensityMatrix rho0 = zeeman_pseudo_pure(sys);
  const DensityMatrix target = DensityMatrix::pure(coherent_state(sys, {0.5 * kPi, 0.0}));
  for (auto _ : state) benchmark::DoNotOptimize(fidelity_gradient(sys, rho0, target, seq, params));
}
BENCHMARK(BM_smp_gradient)->Arg(20)->Arg(80);

}  // namespace

BENCHMARK_MAIN();
