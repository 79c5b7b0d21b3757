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

#ifndef NCSIM_TESTS_RANDOM_CIRCUITS_H
#define NCSIM_TESTS_RANDOM_CIRCUITS_H

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "ncsim/channels.h"
#include "ncsim/oracle.h"
#include "ncsim/tableau.h"

namespace ncsim::test_support {

struct RandomOp {
    enum class Kind { Gate, Measure, Reset };
    Kind kind = Kind::Gate;
    Gate gate = Gate::I;
    std::vector<size_t> qubits;
    PauliString pauli;
};

/// Hermitian Pauli with random letters and sign.
inline PauliString random_pauli(size_t n, std::mt19937_64 &rng, bool allow_identity = true) {
    std::uniform_int_distribution<int> letter(0, 3);
    while (true) {
        PauliString p(n);
        for (size_t q = 0; q < n; q++) {
            p.set_letter(q, "IXYZ"[letter(rng)]);
        }
        if (rng() & 1) {
            p.negate();
        }
        if (allow_identity || !p.is_identity_letters()) {
            return p;
        }
    }
}

inline std::vector<size_t> random_qubits(size_t n, size_t k, std::mt19937_64 &rng) {
    std::vector<size_t> all(n);
    for (size_t q = 0; q < n; q++) {
        all[q] = q;
    }
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(k);
    return all;
}

/// Mostly gates, with Pauli measurements and resets mixed in when requested.
inline std::vector<RandomOp> random_ops(size_t n, size_t count, std::mt19937_64 &rng, bool with_measurements = true) {
    static const Gate kOneQubit[] = {Gate::I, Gate::H, Gate::S, Gate::X, Gate::Y, Gate::Z};
    std::vector<RandomOp> ops;
    std::uniform_int_distribution<int> pick(0, 9);
    for (size_t i = 0; i < count; i++) {
        RandomOp op;
        int r = pick(rng);
        if (with_measurements && r == 0) {
            op.kind = RandomOp::Kind::Measure;
            op.pauli = random_pauli(n, rng);
        } else if (with_measurements && r == 1) {
            op.kind = RandomOp::Kind::Reset;
            op.pauli = random_pauli(n, rng, false);
        } else if (n >= 2 && r <= 4) {
            op.gate = Gate::CNOT;
            op.qubits = random_qubits(n, 2, rng);
        } else {
            op.gate = kOneQubit[rng() % 6];
            op.qubits = random_qubits(n, 1, rng);
        }
        ops.push_back(std::move(op));
    }
    return ops;
}

/// Independent commuting generators: a random subset of the stabilizers of a
/// random stabilizer state, with random signs.
inline std::vector<PauliString> random_target(size_t n, std::mt19937_64 &rng) {
    Tableau t(n);
    for (const auto &op : random_ops(n, 6 * n, rng, false)) {
        t.apply_gate(op.gate, op.qubits);
    }
    std::vector<PauliString> out;
    for (size_t k = 0; k < n; k++) {
        if (rng() & 1) {
            PauliString g = t.stabilizer(k);
            if (rng() & 1) {
                g.negate();
            }
            out.push_back(g);
        }
    }
    if (out.empty()) {
        out.push_back(t.stabilizer(0));
    }
    return out;
}

/// Probability the oracle assigns to a tableau measurement: 1 for a
/// deterministic outcome, 1/2 for a random one.
inline double expected_probability(const MeasurementRecord &rec) { return rec.deterministic ? 1.0 : 0.5; }

struct ReplayCheck {
    /// Largest |oracle probability - tableau probability| over all checks.
    double max_error = 0;
    size_t checks = 0;
    void record(double error) {
        max_error = std::max(max_error, error);
        checks++;
    }
};

/// Runs `ops` on a tableau and a state vector side by side (the state vector
/// follows the tableau's outcomes), comparing every measurement probability,
/// then peek and projection probabilities for random targets at the end.
inline void replay_against_statevector(
    size_t n, const std::vector<RandomOp> &ops, uint64_t seed, std::mt19937_64 &target_rng, ReplayCheck &check) {
    Tableau t(n);
    StateVector sv(n);
    SplitMix64 rng(seed);
    for (const auto &op : ops) {
        switch (op.kind) {
            case RandomOp::Kind::Gate:
                t.apply_gate(op.gate, op.qubits);
                sv.apply_gate(op.gate, op.qubits);
                break;
            case RandomOp::Kind::Measure:
            case RandomOp::Kind::Reset: {
                MeasurementRecord rec = op.kind == RandomOp::Kind::Measure ? t.measure(op.pauli, rng)
                                                                           : t.measure_and_reset(op.pauli, rng);
                double p_plus = sv.probability_plus(op.pauli);
                double p_outcome = rec.outcome == 1 ? p_plus : 1.0 - p_plus;
                check.record(std::abs(p_outcome - expected_probability(rec)));
                if (!op.pauli.is_identity_letters()) {
                    sv.project(op.pauli, rec.outcome);
                }
                if (op.kind == RandomOp::Kind::Reset && rec.outcome == -1) {
                    sv.apply_pauli(reset_correction(op.pauli));
                }
                break;
            }
        }
    }
    t.check_invariants();
    for (size_t k = 0; k < 4; k++) {
        PauliString p = random_pauli(n, target_rng);
        int peek = t.peek(p);
        double p_plus = sv.probability_plus(p);
        double expected = peek == 1 ? 1.0 : peek == -1 ? 0.0 : 0.5;
        check.record(std::abs(p_plus - expected));
        std::vector<PauliString> target = random_target(n, target_rng);
        check.record(std::abs(t.projection_probability(target) - sv.projection_probability(target)));
    }
}

}  // namespace ncsim::test_support

#endif
