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

#ifndef NCSIM_ORACLE_H
#define NCSIM_ORACLE_H

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "ncsim/circuit.h"
#include "ncsim/ptm.h"
#include "ncsim/sampler.h"

namespace ncsim {

/// Largest register handled by the PTM-chain and density-matrix oracles.
inline constexpr size_t kMaxOracleQubits = 4;
/// Largest register handled by StateVector.
inline constexpr size_t kMaxStateVectorQubits = 12;

/// Pauli vector r_j = Tr(P_j rho) of the stabilizer state (or the projector
/// prod (I + g) / 2 when fewer than n generators are given).
std::vector<double> stabilizer_pauli_vector(std::span<const PauliString> generators);

/// Applies a k-qubit PTM acting on `qubits` to an n-qubit Pauli vector.
std::vector<double> apply_embedded_ptm(std::span<const double> vec, const Ptm &ptm, std::span<const size_t> qubits);

/// Exact value of each observable: 2^-n phi^T R_K ... R_1 r.
std::vector<double> exact_expectations(const SimulationPlan &plan);
/// The first observable's value.
double exact_expectation(const SimulationPlan &plan);

/// Full-register operator acting as `local` on `qubits` (qubit q is bit q of
/// the basis index).
Eigen::MatrixXcd embed_operator(const Eigen::MatrixXcd &local, std::span<const size_t> qubits, size_t num_qubits);
Eigen::MatrixXcd gate_matrix(Gate gate);
/// Dense projector prod_k (I + g_k) / 2.
Eigen::MatrixXcd projector_matrix(std::span<const PauliString> generators);

class DensityMatrix {
   public:
    /// |0...0><0...0|.
    explicit DensityMatrix(size_t num_qubits);
    static DensityMatrix from_stabilizers(std::span<const PauliString> generators);

    size_t num_qubits() const { return num_qubits_; }
    const Eigen::MatrixXcd &matrix() const { return rho_; }

    void apply_unitary(const Eigen::MatrixXcd &local, std::span<const size_t> qubits);
    void apply_kraus(std::span<const Eigen::MatrixXcd> kraus, std::span<const size_t> qubits);
    void apply_gate(Gate gate, std::span<const size_t> qubits);
    /// Non-selective measurement of a full-width Pauli.
    void dephase(const PauliString &p);
    /// Measure target, and on -1 apply reset_correction(target).
    void pauli_reset(const PauliString &target);
    /// Applies a decomposition through its exact channel (as a sum of term
    /// actions), valid for any quasiprobability mixture.
    void apply_decomposition(const StabilizerDecomposition &d, std::span<const size_t> qubits);

    double expectation(const Eigen::MatrixXcd &op) const;
    double projection_probability(std::span<const PauliString> generators) const;
    double trace() const { return rho_.trace().real(); }

   private:
    size_t num_qubits_;
    Eigen::MatrixXcd rho_;
};

/// Exact action of one circuit instruction (measurements are non-selective;
/// noise uses the built-in Kraus operators).
void dense_apply(DensityMatrix &rho, const Instruction &inst);

class StateVector {
   public:
    explicit StateVector(size_t num_qubits);

    size_t num_qubits() const { return num_qubits_; }
    const Eigen::VectorXcd &amplitudes() const { return psi_; }

    void apply_gate(Gate gate, std::span<const size_t> qubits);
    void apply_pauli(const PauliString &p);
    /// Probability that measuring p gives +1.
    double probability_plus(const PauliString &p) const;
    /// Projects onto the given outcome of p and renormalizes; returns its probability.
    double project(const PauliString &p, int outcome);
    /// <psi| prod (I + g) / 2 |psi>.
    double projection_probability(std::span<const PauliString> generators) const;
    double norm() const { return psi_.norm(); }

   private:
    Eigen::VectorXcd pauli_times(const PauliString &p, const Eigen::VectorXcd &v) const;

    size_t num_qubits_;
    Eigen::VectorXcd psi_;
};

}  // namespace ncsim

#endif
