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

#ifndef NCSIM_TABLEAU_H
#define NCSIM_TABLEAU_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ncsim/clifford.h"
#include "ncsim/pauli.h"
#include "ncsim/rng.h"

namespace ncsim {

struct MeasurementRecord {
    int outcome;  // +1 or -1
    bool deterministic;
};

/// A validated list of commuting, independent, Hermitian Pauli generators.
/// Represents the projector prod_k (I + g_k) / 2.
class StabilizerProjector {
   public:
    /// Throws std::invalid_argument when the generators are not Hermitian,
    /// not mutually commuting, dependent, or of mixed size.
    explicit StabilizerProjector(std::vector<PauliString> generators);

    size_t num_qubits() const { return num_qubits_; }
    const std::vector<PauliString> &generators() const { return generators_; }

   private:
    size_t num_qubits_ = 0;
    std::vector<PauliString> generators_;
};

/// CHP-style stabilizer tableau extended with multi-qubit Pauli measurement,
/// Pauli reset and projection onto stabilizer subspaces.
///
/// Rows 0..n-1 are destabilizers, rows n..2n-1 stabilizers; each row is a
/// bit-packed Pauli with a sign. Destabilizer k anticommutes with stabilizer k
/// and commutes with every other row. A tableau never owns randomness; the
/// caller passes its shot's stream to every operation that needs one.
class Tableau {
   public:
    /// The state |0...0>.
    explicit Tableau(size_t num_qubits);

    /// The unique state stabilized by `generators` (n of them on n qubits).
    static Tableau from_stabilizers(std::span<const PauliString> generators);

    size_t num_qubits() const { return n_; }
    PauliString destabilizer(size_t k) const { return row(k); }
    PauliString stabilizer(size_t k) const { return row(n_ + k); }

    void h(size_t q);
    void s(size_t q);
    void x(size_t q);
    void y(size_t q);
    void z(size_t q);
    void cnot(size_t control, size_t target);
    /// Named gate; `qubits` must match the gate arity.
    void apply_gate(Gate gate, std::span<const size_t> qubits);
    /// Arbitrary Clifford action on the listed qubits (O(n) per call plus table setup).
    void apply_clifford(const CliffordAction &action, std::span<const size_t> qubits);
    void apply_clifford(const CliffordTable &table, std::span<const size_t> qubits);
    /// Conjugation by a full-width Pauli.
    void apply_pauli(const PauliString &p);

    /// Measures a Hermitian Pauli observable. Draws one random bit from `rng`
    /// only when the outcome is not determined. The identity (with sign s)
    /// measures s deterministically.
    MeasurementRecord measure(const PauliString &observable, SplitMix64 &rng);
    /// Outcome if determined, 0 otherwise. Does not modify the state.
    int peek(const PauliString &observable) const;
    /// Measures `target` and, on -1, applies reset_correction(target). Returns
    /// the measurement record before correction.
    MeasurementRecord measure_and_reset(const PauliString &target, SplitMix64 &rng);
    void pauli_reset(const PauliString &target, SplitMix64 &rng) { measure_and_reset(target, rng); }

    /// <psi| rho |psi> style overlap Tr(Pi rho) with the projector; always 0 or 2^-s.
    double projection_probability(const StabilizerProjector &projector) const;
    double projection_probability(std::span<const PauliString> generators) const;

    /// Throws std::logic_error when the symplectic structure or signs are broken.
    void check_invariants() const;
    /// Destabilizers then stabilizers, one row per line in +-[IXYZ] notation.
    std::string dump() const;

   private:
    PauliString row(size_t r) const;
    void set_row(size_t r, const PauliString &p);
    bool row_anticommutes(size_t r, const PauliString &p) const;
    void row_mul(size_t target, size_t source);
    MeasurementRecord measure_impl(const PauliString &observable, SplitMix64 *rng, int forced);
    void check_pauli(const PauliString &p) const;

    size_t n_;
    size_t words_;
    // (2n + 1) rows; the last row is scratch space.
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    std::vector<uint8_t> phases_;
};

}  // namespace ncsim

#endif
