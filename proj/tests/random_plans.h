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

#ifndef NCSIM_TESTS_RANDOM_PLANS_H
#define NCSIM_TESTS_RANDOM_PLANS_H

#include <numbers>
#include <random>

#include "ncsim/decomposer.h"
#include "ncsim/sampler.h"
#include "random_circuits.h"
#include "random_kraus.h"

namespace ncsim::test_support {

/// A random single-qubit channel from the constructors (several with
/// negative coefficients) or an LP decomposition of a random Kraus channel.
inline StabilizerDecomposition random_one_qubit_channel(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    switch (rng() % 8) {
        case 0:
            return make_t_gate();
        case 1:
            return make_rotation_z(unit(rng) * std::numbers::pi);
        case 2:
            return make_amplitude_damping(unit(rng));
        case 3:
            return make_depolarizing(unit(rng) * 0.75);
        case 4: {
            const auto &group = enumerate_cliffords(1);
            return make_clifford_channel(group[rng() % group.size()]);
        }
        case 5:
            return make_pauli_reset_channel(random_pauli(1, rng, false));
        case 6:
            return make_pauli_dephasing(random_pauli(1, rng, false));
        default: {
            static const ChannelDictionary dict(1);
            auto kraus = random_kraus(1, 1 + rng() % 3, rng);
            return decompose_min_norm(ptm_from_kraus(kraus), dict);
        }
    }
}

inline StabilizerDecomposition random_two_qubit_channel(std::mt19937_64 &rng) {
    switch (rng() % 3) {
        case 0: {
            const auto &group = enumerate_cliffords(2);
            return make_clifford_channel(group[rng() % group.size()]);
        }
        case 1:
            return make_pauli_reset_channel(random_pauli(2, rng, false));
        default:
            return make_pauli_dephasing(random_pauli(2, rng, false));
    }
}

/// n in 1..max_qubits, 1..max_channels channels, a random stabilizer input
/// state, one final observable and one intermediate observable.
inline SimulationPlan random_plan(std::mt19937_64 &rng, size_t max_qubits = 3, size_t max_channels = 4) {
    SimulationPlan plan;
    plan.num_qubits = 1 + rng() % max_qubits;
    size_t n = plan.num_qubits;
    Tableau t(n);
    for (const auto &op : random_ops(n, 4 * n, rng, false)) {
        t.apply_gate(op.gate, op.qubits);
    }
    for (size_t k = 0; k < n; k++) {
        plan.initial.push_back(t.stabilizer(k));
    }
    size_t count = 1 + rng() % max_channels;
    for (size_t k = 0; k < count; k++) {
        if (n >= 2 && rng() % 3 == 0) {
            plan.channels.push_back({random_two_qubit_channel(rng), random_qubits(n, 2, rng)});
        } else {
            plan.channels.push_back({random_one_qubit_channel(rng), random_qubits(n, 1, rng)});
        }
    }
    plan.observables.push_back({random_target(n, rng), kFinalState});
    plan.observables.push_back({random_target(n, rng), rng() % (count + 1)});
    return plan;
}

}  // namespace ncsim::test_support

#endif
