// Copyright 2026 The ncsim Authors
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

#include "ncsim/decomposer.h"
#include "ncsim/sampler.h"
#include "ncsim/steane.h"

using namespace ncsim;

namespace {

Tableau ghz(size_t n) {
    Tableau t(n);
    t.h(0);
    for (size_t q = 0; q + 1 < n; q++) {
        t.cnot(q, q + 1);
    }
    return t;
}

void BM_tableau_measure_random(benchmark::State &state) {
    size_t n = static_cast<size_t>(state.range(0));
    Tableau base = ghz(n);
    PauliString x(n);
    for (size_t q = 0; q < n; q++) {
        x.set_letter(q, 'X');
    }
    SplitMix64 rng(1);
    for (auto _ : state) {
        Tableau t = base;
        benchmark::DoNotOptimize(t.measure(PauliString::single(n, n / 2, 'Z'), rng));
        benchmark::DoNotOptimize(t.measure(x, rng));
    }
}
BENCHMARK(BM_tableau_measure_random)->Arg(11)->Arg(64)->Arg(256);

void BM_tableau_projection_probability(benchmark::State &state) {
    size_t n = static_cast<size_t>(state.range(0));
    Tableau t = ghz(n);
    std::vector<PauliString> gens;
    for (size_t q = 0; q < n; q++) {
        gens.push_back(PauliString::single(n, q, 'Z'));
    }
    StabilizerProjector projector(gens);
    for (auto _ : state) {
        benchmark::DoNotOptimize(t.projection_probability(projector));
    }
}
BENCHMARK(BM_tableau_projection_probability)->Arg(7)->Arg(64);

void BM_rotation_demo_shot(benchmark::State &state) {
    PreparedPlan plan(rotation_demo_plan(50));
    std::vector<double> values(plan.num_observables());
    SplitMix64 rng(2);
    for (auto _ : state) {
        plan.run_shot(rng, values);
        benchmark::DoNotOptimize(values.data());
    }
}
BENCHMARK(BM_rotation_demo_shot);

void BM_steane_shot(benchmark::State &state) {
    SteaneExperiment experiment(ChannelSpec{"amplitude_damping", {1e-3}});
    SplitMix64 rng(3);
    size_t input = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(experiment.run(input, rng));
        input = (input + 1) % kSteaneInputs;
    }
}
BENCHMARK(BM_steane_shot);

void BM_decompose_one_qubit(benchmark::State &state) {
    ChannelDictionary dict(1);
    Ptm channel = ptm_from_kraus(kraus_amplitude_damping(0.1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_min_norm(channel, dict));
    }
}
BENCHMARK(BM_decompose_one_qubit)->Unit(benchmark::kMillisecond);

void BM_enumerate_two_qubit_dictionary(benchmark::State &state) {
    for (auto _ : state) {
        ChannelDictionary dict(2);
        benchmark::DoNotOptimize(dict.size());
    }
}
BENCHMARK(BM_enumerate_two_qubit_dictionary)->Unit(benchmark::kMillisecond);

void BM_decompose_two_qubit_product(benchmark::State &state) {
    ChannelDictionary dict(2);
    Ptm t = decomp_to_ptm(make_t_gate());
    Ptm channel = tensor_product(t, Ptm::identity(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_min_norm(channel, dict));
    }
}
BENCHMARK(BM_decompose_two_qubit_product)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
