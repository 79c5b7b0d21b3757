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

#include "ncsim/sampler.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ncsim/oracle.h"
#include "random_plans.h"

using namespace ncsim;

namespace {

PauliString P(const char *text) { return PauliString::from_text(text); }

SimulationPlan single_channel_plan(const StabilizerDecomposition &d, const char *observable = "+Z") {
    SimulationPlan plan;
    plan.num_qubits = 1;
    plan.channels.push_back({d, {0}});
    plan.observables.push_back({{P(observable)}});
    return plan;
}

}  // namespace

TEST(sampler, term_probabilities) {
    auto t = term_probabilities(make_t_gate());
    ASSERT_EQ(t.size(), 3u);
    std::vector<double> sorted = t;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_NEAR(sorted[0], (1 / std::numbers::sqrt2 - 0.5) / std::numbers::sqrt2, 1e-12);
    EXPECT_NEAR(sorted[1], 0.5 / std::numbers::sqrt2, 1e-12);
    EXPECT_NEAR(sorted[2], 0.5, 1e-12);
    EXPECT_NEAR(sorted[0] + sorted[1] + sorted[2], 1.0, 1e-12);

    EXPECT_EQ(term_probabilities(make_identity_channel(1)), std::vector<double>{1.0});

    auto dep = term_probabilities(make_depolarizing(0.3));
    std::sort(dep.begin(), dep.end());
    EXPECT_NEAR(dep[0], 0.1, 1e-12);
    EXPECT_NEAR(dep[2], 0.1, 1e-12);
    EXPECT_NEAR(dep[3], 0.7, 1e-12);

    StabilizerDecomposition zero = make_identity_channel(1);
    zero.terms[0].q = 0;
    EXPECT_THROW(term_probabilities(zero), std::invalid_argument);
    EXPECT_THROW(term_probabilities(StabilizerDecomposition{1, {}}), std::invalid_argument);
}

TEST(sampler, identity_plan_is_one) {
    SimulationPlan plan = single_channel_plan(make_identity_channel(1));
    SplitMix64 rng(0);
    for (int k = 0; k < 20; k++) {
        EXPECT_EQ(run_shot(plan, rng), std::vector<double>{1.0});
    }
}

TEST(sampler, t_gate_shot_values) {
    SimulationPlan plan = single_channel_plan(make_t_gate());
    PreparedPlan prepared(plan);
    SplitMix64 rng(1);
    const double root2 = std::numbers::sqrt2;
    size_t negative = 0;
    for (int k = 0; k < 2000; k++) {
        double v = 0;
        prepared.run_shot(rng, std::span(&v, 1));
        double f = std::abs(v) / root2;
        ASSERT_TRUE(std::abs(f) < 1e-12 || std::abs(f - 0.5) < 1e-12 || std::abs(f - 1) < 1e-12) << v;
        negative += v < 0;
    }
    EXPECT_GT(negative, 0u);
}

TEST(sampler, depolarizing_shot_values) {
    const double p = 0.3;
    SimulationPlan plan = single_channel_plan(make_depolarizing(p));
    auto results = estimate(plan, 20000, 5);
    SplitMix64 rng(2);
    for (int k = 0; k < 200; k++) {
        double v = run_shot(plan, rng)[0];
        ASSERT_TRUE(v == 0.0 || v == 1.0);
    }
    EXPECT_EQ(results[0].one_norm_product, 1.0);
    EXPECT_NEAR(results[0].mean, 1 - 2 * p / 3, 4 * results[0].std_error);
}

TEST(sampler, weights_have_product_magnitude) {
    SimulationPlan plan;
    plan.num_qubits = 2;
    plan.channels.push_back({make_t_gate(), {0}});
    plan.channels.push_back({make_amplitude_damping(0.2), {1}});
    plan.channels.push_back({make_rotation_z(0.4), {1}});
    plan.observables.push_back({{P("+ZZ")}});
    plan.observables.push_back({{P("-ZI")}});
    double g = one_norm_product(plan);
    EXPECT_NEAR(g, std::numbers::sqrt2 * one_norm(make_amplitude_damping(0.2)) * one_norm(make_rotation_z(0.4)), 1e-15);
    SplitMix64 rng(3);
    for (int k = 0; k < 500; k++) {
        auto v = run_shot(plan, rng);
        ASSERT_DOUBLE_EQ(std::abs(v[0]), g);
        ASSERT_EQ(v[1], 0.0);
    }
}

TEST(sampler, estimate_is_unbiased_on_random_plans) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 6; trial++) {
        SimulationPlan plan = test_support::random_plan(rng, 2, 2);
        auto exact = exact_expectations(plan);
        auto results = estimate(plan, 20000, trial, 2);
        for (size_t o = 0; o < exact.size(); o++) {
            EXPECT_NEAR(results[o].mean, exact[o], 4 * results[o].std_error + 1e-12) << trial << " " << o;
            EXPECT_NEAR(results[o].std_error, std::sqrt(results[o].sample_variance / 20000), 1e-15);
        }
    }
}

TEST(sampler, estimate_deterministic_across_workers) {
    std::mt19937_64 rng(8);
    SimulationPlan plan = test_support::random_plan(rng);
    auto one = estimate(plan, 3000, 11, 1);
    auto four = estimate(plan, 3000, 11, 4);
    for (size_t o = 0; o < one.size(); o++) {
        EXPECT_EQ(one[o].mean, four[o].mean);
        EXPECT_EQ(one[o].sample_variance, four[o].sample_variance);
    }
}

TEST(sampler, positive_plans_have_unit_weights) {
    SimulationPlan plan = single_channel_plan(make_depolarizing(0.4));
    plan.channels.push_back({make_pauli_reset_channel(P("+X")), {0}});
    plan.channels.push_back({make_pauli_dephasing(P("+Y")), {0}});
    SplitMix64 rng(4);
    for (int k = 0; k < 200; k++) {
        double v = run_shot(plan, rng)[0];
        ASSERT_GE(v, 0.0);
        ASSERT_LE(v, 1.0);
    }
}

TEST(sampler, rotation_demo) {
    SimulationPlan plan = rotation_demo_plan(50);
    ASSERT_EQ(plan.observables.size(), 50u);
    auto results = estimate(plan, 10000, kDefaultSeed);
    EXPECT_NEAR(results[49].mean, 1.0, 4 * results[49].std_error);
    EXPECT_GT(results[49].std_error, 0.01);
    EXPECT_LT(results[49].std_error, 0.06);
    for (size_t k = 4; k < 50; k += 5) {
        double expected = (1 + std::sin((k + 1) * std::numbers::pi / 100)) / 2;
        EXPECT_NEAR(results[k].mean, expected, 4 * results[k].std_error + 1e-12) << k;
    }
    auto biased = estimate(rotation_demo_plan(50, true), 10000, kDefaultSeed);
    EXPECT_GT(biased[49].mean, 0.55);
    EXPECT_LT(biased[49].mean, 0.65);
    EXPECT_LT(biased[49].std_error, 0.01);
    EXPECT_THROW(rotation_demo_plan(0), std::invalid_argument);
}

TEST(sampler, shots_for_variance) {
    EXPECT_EQ(shots_for_variance(1, 1, 1, 17, 0.01), 2500u);
    EXPECT_EQ(shots_for_variance(1, 1, std::numbers::sqrt2, 1, 0.1), 50u);
    EXPECT_EQ(shots_for_variance(1, 1, std::numbers::sqrt2, 2, 0.1), 100u);
    EXPECT_THROW(shots_for_variance(1, 1, 1, 1, 0), std::invalid_argument);
    EXPECT_THROW(shots_for_variance(1, 1, 0.5, 1, 0.1), std::invalid_argument);
}

TEST(sampler, shots_for_hoeffding) {
    EXPECT_EQ(shots_for_hoeffding(1, 1, 1, 0, 0.1, 0.05), 185u);
    EXPECT_THROW(shots_for_hoeffding(1, 1, 1, 0, 0.1, 2), std::invalid_argument);
    EXPECT_THROW(shots_for_hoeffding(1, 1, 1, 0, -0.1, 0.5), std::invalid_argument);
    double base = static_cast<double>(shots_for_hoeffding(1, 1, 1, 0, 0.001, 0.05));
    double noisy = static_cast<double>(shots_for_hoeffding(1, 1, std::sqrt(1 + 1e-3), 1000, 0.001, 0.05));
    EXPECT_NEAR(noisy / base, std::exp(1000 * std::log1p(1e-3)), 1e-6);
    EXPECT_NEAR(noisy / base, std::numbers::e, 2e-3);
}

TEST(sampler, validate_plan_errors) {
    SimulationPlan empty;
    EXPECT_THROW(validate_plan(empty), std::invalid_argument);

    SimulationPlan plan = single_channel_plan(make_t_gate());
    EXPECT_NO_THROW(validate_plan(plan));

    SimulationPlan bad_initial = plan;
    bad_initial.initial = {P("+Z"), P("+X")};
    EXPECT_THROW(validate_plan(bad_initial), std::invalid_argument);

    SimulationPlan bad_qubit = plan;
    bad_qubit.channels[0].qubits = {1};
    EXPECT_THROW(validate_plan(bad_qubit), std::invalid_argument);

    SimulationPlan bad_size = plan;
    bad_size.channels[0].qubits = {0, 0};
    EXPECT_THROW(validate_plan(bad_size), std::invalid_argument);

    SimulationPlan bad_obs = plan;
    bad_obs.observables[0].generators = {P("+ZZ")};
    EXPECT_THROW(validate_plan(bad_obs), std::invalid_argument);

    EXPECT_THROW(estimate(plan, 1, 0), std::invalid_argument);
}
