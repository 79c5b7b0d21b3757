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

#include "ncsim/circuit.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ncsim/sampler.h"
#include "ncsim/steane.h"

using namespace ncsim;

namespace {

PauliString P(const char *text) { return PauliString::from_text(text); }

struct ErrorPosition {
    size_t line;
    size_t column;
};

ErrorPosition parse_error_at(const std::string &text) {
    try {
        parse_circuit(text);
    } catch (const ParseError &e) {
        return {e.line(), e.column()};
    }
    ADD_FAILURE() << "no parse error for:\n" << text;
    return {0, 0};
}

const char *kMixedCircuit = R"(# mixed instructions
qubits 3
h 0
cnot 1 2
noise depolarizing(0.001) 0 1
barrier
s 2
measure_pauli -XZI -> 0
reset_pauli +IIY
mr 1 -> 1
noise amplitude_damping(0.25) 2
i 0
)";

}  // namespace

TEST(circuit, parse_single_gate) {
    Circuit c = parse_circuit("qubits 1\nh 0\n");
    EXPECT_EQ(c.num_qubits, 1u);
    ASSERT_EQ(c.steps.size(), 1u);
    ASSERT_EQ(c.steps[0].size(), 1u);
    EXPECT_EQ(std::get<GateOp>(c.steps[0][0]), (GateOp{Gate::H, {0}}));
}

TEST(circuit, parse_gate_then_noise) {
    Circuit c = parse_circuit("qubits 2\ncnot 0 1\nnoise depolarizing(0.001) 0 1\n");
    ASSERT_EQ(c.steps.size(), 2u);
    EXPECT_EQ(std::get<GateOp>(c.steps[0][0]), (GateOp{Gate::CNOT, {0, 1}}));
    const auto &n = std::get<NoiseOp>(c.steps[1][0]);
    EXPECT_EQ(n.channel.name, "depolarizing");
    EXPECT_EQ(n.channel.params, std::vector<double>{0.001});
    EXPECT_EQ(n.qubits, (std::vector<size_t>{0, 1}));
}

TEST(circuit, greedy_step_fusion_and_barriers) {
    EXPECT_EQ(parse_circuit("qubits 2\nh 0\nh 1\n").steps.size(), 1u);
    EXPECT_EQ(parse_circuit("qubits 2\nh 0\nbarrier\nh 1\n").steps.size(), 2u);
    EXPECT_EQ(parse_circuit("qubits 2\nh 0\ns 0\n").steps.size(), 2u);
    EXPECT_EQ(parse_circuit("qubits 2\ncnot 0 1\nh 1\n").steps.size(), 2u);
    Circuit c = parse_circuit(kMixedCircuit);
    EXPECT_EQ(c.num_instructions(), 9u);
    EXPECT_EQ(c.num_cbits(), 2u);
}

TEST(circuit, parse_errors_report_positions) {
    auto e = parse_error_at("qubits 2\nh 5\n");
    EXPECT_EQ(e.line, 2u);
    EXPECT_EQ(e.column, 3u);
    e = parse_error_at("h 0\n");
    EXPECT_EQ(e.line, 1u);
    e = parse_error_at("qubits 2\n  frobnicate 0\n");
    EXPECT_EQ(e.line, 2u);
    EXPECT_EQ(e.column, 3u);
    e = parse_error_at("qubits 2\nmeasure_pauli +ZZZ -> 0\n");
    EXPECT_EQ(e.column, 15u);
    e = parse_error_at("qubits 2\nmeasure_pauli +ZZ -> 0\nmr 1 -> 0\n");
    EXPECT_EQ(e.line, 3u);
    EXPECT_EQ(e.column, 9u);
    e = parse_error_at("qubits 2\ncnot 0\n");
    EXPECT_EQ(e.line, 2u);
    e = parse_error_at("qubits 2\ncnot 0 0\n");
    EXPECT_EQ(e.line, 2u);
    e = parse_error_at("qubits 2\nh 0 1\n");
    EXPECT_EQ(e.column, 5u);
    e = parse_error_at("qubits 1\nnoise depolarizing(abc) 0\n");
    EXPECT_EQ(e.column, 7u);
    e = parse_error_at("qubits 1\nnoise depolarizing(0.1) \n");
    EXPECT_EQ(e.line, 2u);
    e = parse_error_at("qubits 1\nmeasure_pauli +Z ->\n");
    EXPECT_EQ(e.line, 2u);
    e = parse_error_at("qubits 1\nmeasure_pauli +Z\n");
    EXPECT_EQ(e.line, 2u);
    e = parse_error_at("qubits\n");
    EXPECT_EQ(e.line, 1u);
    e = parse_error_at("qubits 0\n");
    EXPECT_EQ(e.line, 1u);
    e = parse_error_at("qubits 1\nqubits 1\n");
    EXPECT_EQ(e.line, 2u);
    e = parse_error_at("qubits 1\nreset_pauli +I\n");
    EXPECT_EQ(e.column, 13u);
    e = parse_error_at("qubits 1\nmeasure_pauli +iZ -> 0\n");
    EXPECT_EQ(e.line, 2u);
    e = parse_error_at("# only a comment\n");
    EXPECT_EQ(e.line, 2u);
}

TEST(circuit, parse_error_message_mentions_position) {
    try {
        parse_circuit("qubits 2\nh 5\n");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_NE(std::string(e.what()).find("line 2, column 3"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("not declared"), std::string::npos);
    }
}

TEST(circuit, render_round_trip) {
    Circuit c = parse_circuit(kMixedCircuit);
    std::string text = render_circuit(c);
    EXPECT_EQ(parse_circuit(text), c);
    EXPECT_EQ(render_circuit(parse_circuit(text)), text);
}

TEST(circuit, append_validates) {
    Circuit c{2, {}};
    EXPECT_THROW(c.append(GateOp{Gate::H, {2}}), std::exception);
    EXPECT_THROW(c.append(GateOp{Gate::CNOT, {0}}), std::exception);
    EXPECT_THROW(c.append(MeasurePauliOp{P("+Z"), 0}), std::exception);
    c.append(GateOp{Gate::H, {0}});
    c.append(GateOp{Gate::H, {1}});
    EXPECT_EQ(c.steps.size(), 1u);
    c.append(GateOp{Gate::H, {1}}, true);
    EXPECT_EQ(c.steps.size(), 2u);
}

TEST(circuit, insert_noise_after_each_step) {
    NoiseModel model{{"depolarizing", {0.01}}};
    Circuit h = parse_circuit("qubits 1\nh 0\n");
    Circuit noisy = insert_noise(h, model);
    ASSERT_EQ(noisy.steps.size(), 2u);
    EXPECT_EQ(std::get<NoiseOp>(noisy.steps[1][0]), (NoiseOp{model.channel, {0}}));

    Circuit empty{3, {}};
    EXPECT_EQ(insert_noise(empty, model), empty);

    Circuit two = parse_circuit("qubits 3\ncnot 0 2\nbarrier\nnoise depolarizing(0.1) 1\n");
    Circuit out = insert_noise(two, model);
    ASSERT_EQ(out.steps.size(), 3u);
    EXPECT_EQ(out.steps[1].size(), 2u);
    EXPECT_EQ(out.steps[2], two.steps[1]);
}

TEST(circuit, insert_noise_builds_logical_identity) {
    Circuit ids{kSteaneDataQubits, {}};
    for (size_t q = 0; q < kSteaneDataQubits; q++) {
        ids.append(GateOp{Gate::I, {q}});
    }
    Circuit noisy = insert_noise(ids, NoiseModel{{kSteaneNoiseName, {}}});
    ChannelRegistry registry;
    registry.add(kSteaneNoiseName, make_depolarizing(0.01));
    SimulationPlan a = compile(noisy, registry);
    SimulationPlan b = compile(build_noop_circuit(), registry);
    ASSERT_EQ(a.channels.size(), 14u);
    ASSERT_EQ(b.channels.size(), a.channels.size());
    for (size_t k = 0; k < a.channels.size(); k++) {
        EXPECT_EQ(a.channels[k].qubits, b.channels[k].qubits);
        EXPECT_EQ(one_norm(a.channels[k].channel), one_norm(b.channels[k].channel));
    }
}

TEST(circuit, compile_one_norms) {
    ChannelRegistry registry;
    Circuit clifford = parse_circuit("qubits 2\nh 0\ncnot 0 1\ns 1\nmeasure_pauli +ZZ -> 0\n");
    EXPECT_EQ(one_norm_product(compile(clifford, registry)), 1.0);

    Circuit t = parse_circuit("qubits 1\nh 0\nnoise t() 0\n");
    EXPECT_NEAR(one_norm_product(compile(t, registry)), std::numbers::sqrt2, 1e-12);

    std::string text = "qubits 1\n";
    for (int k = 0; k < 50; k++) {
        text += "noise rotation_z(" + std::to_string(std::numbers::pi / 100) + ") 0\n";
    }
    SimulationPlan plan = compile(parse_circuit(text), registry);
    ASSERT_EQ(plan.channels.size(), 50u);
    double g = one_norm(make_rotation_z(std::stod(std::to_string(std::numbers::pi / 100))));
    EXPECT_NEAR(one_norm_product(plan), std::pow(g, 50), 1e-12);
}

TEST(circuit, registry_lookup) {
    ChannelRegistry registry;
    registry.add("mine", make_t_gate());
    EXPECT_NEAR(one_norm(registry.lookup({"mine", {}})), std::numbers::sqrt2, 1e-15);
    EXPECT_THROW(registry.lookup({"mine", {0.1}}), std::invalid_argument);
    EXPECT_THROW(registry.lookup({"nonexistent", {}}), std::invalid_argument);
    EXPECT_EQ(registry.lookup({"depolarizing", {0.3}}).terms.size(), 4u);
}

TEST(circuit, instruction_channels_split_single_qubit_noise) {
    ChannelRegistry registry;
    auto apps = instruction_channels(NoiseOp{{"depolarizing", {0.1}}, {0, 2}}, 3, registry);
    ASSERT_EQ(apps.size(), 2u);
    EXPECT_EQ(apps[0].qubits, std::vector<size_t>{0});
    EXPECT_EQ(apps[1].qubits, std::vector<size_t>{2});
    auto meas = instruction_channels(MeasurePauliOp{P("+XIZ"), 0}, 3, registry);
    ASSERT_EQ(meas.size(), 1u);
    EXPECT_EQ(meas[0].qubits, (std::vector<size_t>{0, 2}));
    auto mr = instruction_channels(MeasureResetOp{1, 0}, 3, registry);
    ASSERT_EQ(mr.size(), 1u);
    EXPECT_TRUE(std::holds_alternative<PauliReset>(mr[0].channel.terms[0].term));
}

TEST(circuit, reset_by_feedback) {
    Circuit c = parse_circuit("qubits 1\nh 0\nmeasure_pauli +Z -> 0\n");
    FeedbackHandler flip = [](const DynamicResult &r) {
        std::vector<Instruction> out;
        if (r.bits[0]) {
            out.push_back(GateOp{Gate::X, {0}});
        }
        return out;
    };
    size_t ones = 0;
    for (uint64_t s = 0; s < 200; s++) {
        Tableau t(1);
        SplitMix64 rng(s);
        DynamicResult r = execute_dynamic(c, t, rng, flip);
        ones += r.bits[0];
        EXPECT_EQ(r.num_measurements, 1u);
        EXPECT_EQ(t.peek(P("+Z")), 1);
    }
    EXPECT_GT(ones, 50u);
    EXPECT_LT(ones, 150u);
}

TEST(circuit, dynamic_execution_matches_run_shot) {
    Circuit c = parse_circuit(
        "qubits 2\nh 0\nnoise t() 0\ncnot 0 1\nnoise amplitude_damping(0.3) 0 1\nnoise rotation_z(0.3) 1\nh 1\n");
    ChannelRegistry registry;
    SimulationPlan plan = compile(c, registry);
    std::vector<PauliString> target{P("+XX"), P("+ZZ")};
    plan.observables.push_back({target});
    PreparedPlan prepared(plan);
    StabilizerProjector projector(target);
    DynamicExecutor executor(c, registry);
    EXPECT_NEAR(executor.one_norm_product(), prepared.one_norm_product(0), 1e-12);
    for (uint64_t s = 0; s < 200; s++) {
        SplitMix64 a(s);
        SplitMix64 b(s);
        double value = 0;
        prepared.run_shot(a, std::span(&value, 1));
        Tableau t(2);
        DynamicResult r = executor.run(t, b);
        EXPECT_NEAR(r.weight * t.projection_probability(projector), value, 1e-12);
        EXPECT_EQ(a(), b());
    }
}

TEST(circuit, dynamic_records_measure_reset) {
    Circuit c = parse_circuit("qubits 2\nx 1\nmr 1 -> 3\nmr 0 -> 0\n");
    Tableau t(2);
    SplitMix64 rng(0);
    DynamicResult r = execute_dynamic(c, t, rng, nullptr);
    ASSERT_EQ(r.bits.size(), 4u);
    EXPECT_EQ(r.bits[3], 1);
    EXPECT_EQ(r.bits[0], 0);
    EXPECT_EQ(r.num_measurements, 2u);
    EXPECT_EQ(t.peek(P("+IZ")), 1);
}

TEST(circuit, feedback_is_validated) {
    Circuit c = parse_circuit("qubits 1\nmeasure_pauli +Z -> 0\n");
    FeedbackHandler bad = [](const DynamicResult &) { return std::vector<Instruction>{GateOp{Gate::X, {4}}}; };
    Tableau t(1);
    SplitMix64 rng(0);
    EXPECT_THROW(execute_dynamic(c, t, rng, bad), std::invalid_argument);
    Tableau wrong(2);
    EXPECT_THROW(execute_dynamic(c, wrong, rng, nullptr), std::invalid_argument);
}
