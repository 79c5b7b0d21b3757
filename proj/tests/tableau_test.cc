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

#include "ncsim/tableau.h"

#include <gtest/gtest.h>

#include <cmath>

#include "ncsim/decomposer.h"
#include "ncsim/oracle.h"
#include "random_circuits.h"

using namespace ncsim;

namespace {

PauliString P(const char *text) { return PauliString::from_text(text); }

std::vector<size_t> Q(std::initializer_list<size_t> qs) { return qs; }

}  // namespace

TEST(tableau, zero_state_measurements) {
    SplitMix64 rng(1);
    Tableau one(1);
    auto rec = one.measure(P("+Z"), rng);
    EXPECT_EQ(rec.outcome, 1);
    EXPECT_TRUE(rec.deterministic);

    Tableau three(3);
    std::vector<PauliString> zero{P("+ZII"), P("+IZI"), P("+IIZ")};
    EXPECT_EQ(three.projection_probability(zero), 1.0);

    Tableau two(2);
    EXPECT_EQ(two.peek(P("+XX")), 0);
    rec = two.measure(P("+XX"), rng);
    EXPECT_FALSE(rec.deterministic);
}

TEST(tableau, random_outcome_frequency) {
    size_t plus = 0;
    const size_t trials = 4000;
    for (size_t s = 0; s < trials; s++) {
        Tableau t(2);
        SplitMix64 rng(s);
        plus += t.measure(P("+XX"), rng).outcome == 1 ? 1 : 0;
    }
    double sigma = std::sqrt(0.25 / trials);
    EXPECT_NEAR(static_cast<double>(plus) / trials, 0.5, 4 * sigma);
}

TEST(tableau, hadamard_makes_z_random) {
    Tableau t(1);
    t.h(0);
    EXPECT_EQ(t.peek(P("+Z")), 0);
    EXPECT_EQ(t.peek(P("+X")), 1);
}

TEST(tableau, bell_pair) {
    Tableau t(2);
    t.h(0);
    t.cnot(0, 1);
    EXPECT_EQ(t.peek(P("+XX")), 1);
    EXPECT_EQ(t.peek(P("+ZZ")), 1);
    EXPECT_EQ(t.peek(P("-YY")), 1);
    SplitMix64 rng(3);
    auto rec = t.measure(P("+ZZ"), rng);
    EXPECT_EQ(rec.outcome, 1);
    EXPECT_TRUE(rec.deterministic);
    t.check_invariants();
}

TEST(tableau, repeated_measurement_is_deterministic) {
    for (uint64_t s = 0; s < 20; s++) {
        Tableau t(1);
        SplitMix64 rng(s);
        auto first = t.measure(P("+X"), rng);
        auto second = t.measure(P("+X"), rng);
        EXPECT_FALSE(first.deterministic);
        EXPECT_TRUE(second.deterministic);
        EXPECT_EQ(first.outcome, second.outcome);
    }
}

TEST(tableau, measurement_draws_only_when_random) {
    Tableau t(1);
    SplitMix64 rng(9);
    SplitMix64 copy = rng;
    t.measure(P("+Z"), rng);
    EXPECT_EQ(rng(), copy());

    Tableau plus(1);
    plus.h(0);
    SplitMix64 a(9);
    SplitMix64 b(9);
    plus.pauli_reset(P("+Z"), a);
    b();
    EXPECT_EQ(a(), b());
    EXPECT_EQ(plus.peek(P("+Z")), 1);
}

TEST(tableau, reset_flips_one_to_zero) {
    Tableau t(1);
    t.x(0);
    SplitMix64 rng(0);
    auto rec = t.measure_and_reset(P("+Z"), rng);
    EXPECT_EQ(rec.outcome, -1);
    EXPECT_EQ(t.peek(P("+Z")), 1);
}

TEST(tableau, reset_xx_matches_statevector) {
    for (uint64_t s = 0; s < 16; s++) {
        Tableau t(2);
        StateVector sv(2);
        SplitMix64 rng(s);
        auto rec = t.measure_and_reset(P("+XX"), rng);
        EXPECT_NEAR(sv.project(P("+XX"), rec.outcome), 0.5, 1e-12);
        if (rec.outcome == -1) {
            sv.apply_pauli(reset_correction(P("+XX")));
        }
        EXPECT_EQ(t.peek(P("+XX")), 1);
        EXPECT_NEAR(sv.probability_plus(P("+XX")), 1.0, 1e-12);
        for (const char *target : {"+ZZ", "-ZZ", "+ZI", "+YY"}) {
            std::vector<PauliString> g{P(target)};
            EXPECT_NEAR(t.projection_probability(g), sv.projection_probability(g), 1e-12) << target;
        }
    }
}

TEST(tableau, projection_probabilities) {
    Tableau zero(1);
    std::vector<PauliString> plus{P("+X")};
    std::vector<PauliString> minus_z{P("-Z")};
    EXPECT_EQ(zero.projection_probability(plus), 0.5);
    EXPECT_EQ(zero.projection_probability(minus_z), 0.0);

    Tableau ghz(3);
    ghz.h(0);
    ghz.cnot(0, 1);
    ghz.cnot(1, 2);
    std::vector<PauliString> own;
    for (size_t k = 0; k < 3; k++) {
        own.push_back(ghz.stabilizer(k));
    }
    EXPECT_EQ(ghz.projection_probability(own), 1.0);
    std::vector<PauliString> partial{P("+ZII"), P("+IXI")};
    StateVector sv(3);
    sv.apply_gate(Gate::H, Q({0}));
    sv.apply_gate(Gate::CNOT, Q({0, 1}));
    sv.apply_gate(Gate::CNOT, Q({1, 2}));
    EXPECT_NEAR(ghz.projection_probability(partial), sv.projection_probability(partial), 1e-12);
}

TEST(tableau, projector_validation) {
    EXPECT_THROW(StabilizerProjector({P("+X"), P("+Z")}), std::invalid_argument);
    EXPECT_THROW(StabilizerProjector({P("+XX"), P("+XX")}), std::invalid_argument);
    EXPECT_THROW(StabilizerProjector({P("+iX")}), std::invalid_argument);
    EXPECT_THROW(StabilizerProjector({P("+X"), P("+ZZ")}), std::invalid_argument);
    EXPECT_NO_THROW(StabilizerProjector({P("+XX"), P("-ZZ")}));
}

TEST(tableau, from_stabilizers) {
    std::vector<PauliString> gens{P("+XX"), P("-ZZ")};
    Tableau t = Tableau::from_stabilizers(gens);
    t.check_invariants();
    EXPECT_EQ(t.peek(P("+XX")), 1);
    EXPECT_EQ(t.peek(P("-ZZ")), 1);
    EXPECT_EQ(t.peek(P("+YY")), 1);
    std::vector<PauliString> bad{P("+XX"), P("+ZI")};
    EXPECT_THROW(Tableau::from_stabilizers(bad), std::invalid_argument);
}

TEST(tableau, single_qubit_clifford_group_table) {
    const auto &group = enumerate_cliffords(1);
    ASSERT_EQ(group.size(), 24u);
    CliffordAction s = CliffordAction::from_gate(Gate::S);
    EXPECT_EQ(s.then(s), CliffordAction::from_gate(Gate::Z));
    const std::vector<size_t> q0{0};
    std::vector<PauliString> probes{P("+X"), P("+Y"), P("+Z"), P("-X")};
    for (const auto &a : group) {
        for (const auto &b : group) {
            CliffordAction ab = a.then(b);
            for (size_t k = 0; k < 4; k++) {
                Tableau t1 = Tableau::from_stabilizers(std::span(&probes[k], 1));
                Tableau t2 = t1;
                t1.apply_clifford(a, q0);
                t1.apply_clifford(b, q0);
                t2.apply_clifford(ab, q0);
                for (const auto &p : probes) {
                    ASSERT_EQ(t1.peek(p), t2.peek(p));
                }
            }
        }
    }
}

TEST(tableau, named_gates_match_statevector_on_random_circuits) {
    std::mt19937_64 rng(11);
    test_support::ReplayCheck check;
    for (uint64_t c = 0; c < 100; c++) {
        size_t n = 1 + c % 4;
        auto ops = test_support::random_ops(n, 25, rng);
        test_support::replay_against_statevector(n, ops, c, rng, check);
    }
    EXPECT_GT(check.checks, 500u);
    EXPECT_LT(check.max_error, 1e-12);
}

TEST(tableau, apply_clifford_action_matches_table) {
    const auto &group = enumerate_cliffords(2);
    std::mt19937_64 rng(5);
    for (size_t trial = 0; trial < 50; trial++) {
        const CliffordAction &c = group[rng() % group.size()];
        Tableau a(3);
        a.h(0);
        a.cnot(0, 2);
        a.s(1);
        Tableau b = a;
        std::vector<size_t> qubits{2, 0};
        a.apply_clifford(c, qubits);
        b.apply_clifford(CliffordTable(c), qubits);
        a.check_invariants();
        for (size_t k = 0; k < 8; k++) {
            PauliString p = test_support::random_pauli(3, rng);
            ASSERT_EQ(a.peek(p), b.peek(p));
        }
    }
}

TEST(tableau, wide_register_ghz) {
    const size_t n = 130;
    Tableau t(n);
    t.h(0);
    for (size_t q = 0; q + 1 < n; q++) {
        t.cnot(q, q + 1);
    }
    t.check_invariants();
    SplitMix64 rng(4);
    auto first = t.measure(PauliString::single(n, 0, 'Z'), rng);
    EXPECT_FALSE(first.deterministic);
    for (size_t q = 1; q < n; q++) {
        auto rec = t.measure(PauliString::single(n, q, 'Z'), rng);
        ASSERT_TRUE(rec.deterministic);
        ASSERT_EQ(rec.outcome, first.outcome);
    }
}

TEST(tableau, identity_measurement_uses_sign) {
    Tableau t(2);
    SplitMix64 rng(0);
    EXPECT_EQ(t.measure(P("-II"), rng).outcome, -1);
    EXPECT_EQ(t.peek(P("+II")), 1);
}

TEST(tableau, rejects_wrong_sizes) {
    Tableau t(2);
    SplitMix64 rng(0);
    EXPECT_THROW(t.measure(P("+Z"), rng), std::invalid_argument);
    EXPECT_THROW(t.measure(P("+iZZ"), rng), std::invalid_argument);
}
