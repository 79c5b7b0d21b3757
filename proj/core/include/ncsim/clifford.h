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

#ifndef NCSIM_CLIFFORD_H
#define NCSIM_CLIFFORD_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncsim/pauli.h"

namespace ncsim {

/// Named Clifford gates understood by the kernel, the circuit format and the oracle.
enum class Gate { I, H, S, X, Y, Z, CNOT };

std::string_view gate_name(Gate gate);
std::optional<Gate> gate_from_name(std::string_view name);
size_t gate_arity(Gate gate);

/// A Clifford channel stored by its symplectic action: the signed image of
/// every X_k and Z_k generator under conjugation U P U^dagger.
class CliffordAction {
   public:
    CliffordAction() = default;
    /// Throws std::invalid_argument if the images do not satisfy the Pauli
    /// commutation relations or are not Hermitian.
    CliffordAction(std::vector<PauliString> x_images, std::vector<PauliString> z_images);

    static CliffordAction identity(size_t num_qubits);
    static CliffordAction from_gate(Gate gate);
    /// Conjugation by a Pauli operator (phase of p is irrelevant).
    static CliffordAction pauli(const PauliString &p);

    size_t num_qubits() const { return x_images_.size(); }
    const PauliString &x_image(size_t k) const { return x_images_[k]; }
    const PauliString &z_image(size_t k) const { return z_images_[k]; }

    /// U p U^dagger, phase included.
    PauliString conjugate(const PauliString &p) const;
    /// The action of applying *this first and then `after`.
    CliffordAction then(const CliffordAction &after) const;

    bool is_identity() const;
    /// True when every generator maps to plus or minus itself.
    bool is_pauli() const;
    /// For Pauli actions: the Pauli whose conjugation this is.
    PauliString as_pauli() const;

    std::string str() const;
    bool operator==(const CliffordAction &other) const = default;

   private:
    std::vector<PauliString> x_images_;
    std::vector<PauliString> z_images_;
};

/// Lookup table of a small Clifford action: for every unsigned local Pauli
/// (basis index) the image letters and whether the sign flips.
class CliffordTable {
   public:
    explicit CliffordTable(const CliffordAction &action);

    size_t num_qubits() const { return num_qubits_; }
    uint32_t image_index(uint32_t local) const { return image_[local]; }
    bool sign_flip(uint32_t local) const { return flip_[local]; }

   private:
    size_t num_qubits_;
    std::vector<uint32_t> image_;
    std::vector<uint8_t> flip_;
};

}  // namespace ncsim

#endif
