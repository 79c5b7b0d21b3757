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

#ifndef NCSIM_CIRCUIT_H
#define NCSIM_CIRCUIT_H

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ncsim/channels.h"
#include "ncsim/sampler.h"
#include "ncsim/tableau.h"

namespace ncsim {

struct GateOp {
    Gate gate;
    std::vector<size_t> qubits;
    bool operator==(const GateOp &) const = default;
};
struct NoiseOp {
    ChannelSpec channel;
    std::vector<size_t> qubits;
    bool operator==(const NoiseOp &) const = default;
};
struct MeasurePauliOp {
    PauliString observable;
    size_t cbit;
    bool operator==(const MeasurePauliOp &) const = default;
};
struct ResetPauliOp {
    PauliString target;
    bool operator==(const ResetPauliOp &) const = default;
};
/// Z-basis measurement of one qubit followed by reset to |0>.
struct MeasureResetOp {
    size_t qubit;
    size_t cbit;
    bool operator==(const MeasureResetOp &) const = default;
};

using Instruction = std::variant<GateOp, NoiseOp, MeasurePauliOp, ResetPauliOp, MeasureResetOp>;

/// Qubits an instruction touches (the support for Pauli instructions).
std::vector<size_t> instruction_qubits(const Instruction &inst);
bool is_measurement(const Instruction &inst);
/// One line of the text format.
std::string instruction_str(const Instruction &inst);

struct Circuit {
    size_t num_qubits = 0;
    /// Within a step, instruction qubit sets are disjoint.
    std::vector<std::vector<Instruction>> steps;

    /// Adds to the last step when its qubits are free there (and no boundary
    /// is forced), otherwise opens a new step. Validates indices and arity.
    void append(Instruction inst, bool new_step = false);
    size_t num_instructions() const;
    size_t num_cbits() const;
    bool operator==(const Circuit &) const = default;
};

class ParseError : public std::runtime_error {
   public:
    ParseError(size_t line, size_t column, const std::string &message);
    size_t line() const { return line_; }
    size_t column() const { return column_; }

   private:
    size_t line_;
    size_t column_;
};

/// Line-based text format:
///   qubits N
///   h|s|x|y|z|i Q     cnot C T
///   noise NAME(P,...) Q+
///   measure_pauli PAULI -> C     reset_pauli PAULI     mr Q -> C
///   barrier
/// '#' starts a comment.
Circuit parse_circuit(std::string_view text);
/// Steps are separated by barrier lines, so parse_circuit(render_circuit(c)) == c.
std::string render_circuit(const Circuit &c);

struct NoiseModel {
    ChannelSpec channel;
};

/// After every step that contains a non-noise instruction, adds a step with
/// one noise instruction per touched qubit.
Circuit insert_noise(const Circuit &c, const NoiseModel &model);

/// Resolves channel names to decompositions: entries added with add() first,
/// then the built-in parametric constructors.
class ChannelRegistry {
   public:
    void add(const std::string &name, StabilizerDecomposition d);
    StabilizerDecomposition lookup(const ChannelSpec &spec) const;

   private:
    std::map<std::string, StabilizerDecomposition> custom_;
};

/// Channel applications for one instruction. Single-qubit noise on several
/// qubits becomes one application per qubit; measurements become non-selective
/// dephasing; mr becomes reset(+Z).
std::vector<ChannelApplication> instruction_channels(
    const Instruction &inst, size_t num_qubits, const ChannelRegistry &registry);

/// Plan from |0...0> with no observables; the caller adds observables.
SimulationPlan compile(const Circuit &c, const ChannelRegistry &registry);

struct DynamicResult {
    /// Outcome bits (1 for -1) indexed by classical bit.
    std::vector<uint8_t> bits;
    size_t num_measurements = 0;
    double weight = 1.0;
};

/// Called after every step that contains a measurement. Returns instructions
/// to run immediately (Clifford, measurement, reset or noise).
using FeedbackHandler = std::function<std::vector<Instruction>(const DynamicResult &record)>;

/// Executes a circuit with noise sampling and classical feedback; noise
/// decompositions are resolved once at construction.
class DynamicExecutor {
   public:
    DynamicExecutor(const Circuit &c, const ChannelRegistry &registry);

    size_t num_qubits() const { return num_qubits_; }
    /// Product of all one-norms in the fixed circuit (injected noise excluded).
    double one_norm_product() const;
    DynamicResult run(Tableau &t, SplitMix64 &rng, const FeedbackHandler &handler = nullptr) const;

   private:
    struct Op {
        Instruction inst;
        std::vector<SampledChannel> noise;
    };
    void run_instruction(const Instruction &inst, Tableau &t, SplitMix64 &rng, DynamicResult &out) const;

    size_t num_qubits_;
    ChannelRegistry registry_;
    std::vector<std::vector<Op>> steps_;
    std::vector<bool> step_measures_;
};

DynamicResult execute_dynamic(
    const Circuit &c, Tableau &t, SplitMix64 &rng, const FeedbackHandler &handler,
    const ChannelRegistry &registry = ChannelRegistry());

}  // namespace ncsim

#endif
