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

#include "ncsim/clifford.h"

#include <array>
#include <stdexcept>

namespace ncsim {

namespace {

struct GateInfo {
    Gate gate;
    std::string_view name;
    size_t arity;
};

constexpr std::array<GateInfo, 7> kGates = {{
    {Gate::I, "i", 1},
    {Gate::H, "h", 1},
    {Gate::S, "s", 1},
    {Gate::X, "x", 1},
    {Gate::Y, "y", 1},
    {Gate::Z, "z", 1},
    {Gate::CNOT, "cnot", 2},
}};

}  // namespace

std::string_view gate_name(Gate gate) { return kGates[static_cast<size_t>(gate)].name; }

size_t gate_arity(Gate gate) { return kGates[static_cast<size_t>(gate)].arity; }

std::optional<Gate> gate_from_name(std::string_view name) {
    for (const auto &info : kGates) {
        if (info.name == name) {
            return info.gate;
        }
    }
    return std::nullopt;
}

CliffordAction::CliffordAction(std::vector<PauliString> x_images, std::vector<PauliString> z_images)
    : x_images_(std::move(x_images)), z_images_(std::move(z_images)) {
    size_t n = x_images_.size();
    if (z_images_.size() != n) {
        throw std::invalid_argument("Clifford action needs one X and one Z image per qubit");
    }
    std::vector<const PauliString *> all;
    for (size_t k = 0; k < n; k++) {
        for (const PauliString *p : {&x_images_[k], &z_images_[k]}) {
            if (p->num_qubits() != n) {
                throw std::invalid_argument("Clifford image has wrong qubit count: " + p->str());
            }
            if (!p->is_hermitian() || p->is_identity_letters()) {
                throw std::invalid_argument("Clifford image must be a signed non-identity Pauli: " + p->str());
            }
        }
    }
    for (size_t a = 0; a < 2 * n; a++) {
        const PauliString &pa = a < n ? x_images_[a] : z_images_[a - n];
        for (size_t b = a + 1; b < 2 * n; b++) {
            const PauliString &pb = b < n ? x_images_[b] : z_images_[b - n];
            bool should_anticommute = b == a + n;
            if ((comm_sign(pa, pb) == -1) != should_anticommute) {
                throw std::invalid_argument("Clifford images violate commutation relations");
            }
        }
    }
}

CliffordAction CliffordAction::identity(size_t num_qubits) {
    std::vector<PauliString> xs, zs;
    for (size_t k = 0; k < num_qubits; k++) {
        xs.push_back(PauliString::single(num_qubits, k, 'X'));
        zs.push_back(PauliString::single(num_qubits, k, 'Z'));
    }
    return CliffordAction(std::move(xs), std::move(zs));
}

CliffordAction CliffordAction::from_gate(Gate gate) {
    auto p = [](std::string_view text) { return PauliString::from_text(text); };
    switch (gate) {
        case Gate::I:
            return identity(1);
        case Gate::H:
            return CliffordAction({p("+Z")}, {p("+X")});
        case Gate::S:
            return CliffordAction({p("+Y")}, {p("+Z")});
        case Gate::X:
            return CliffordAction({p("+X")}, {p("-Z")});
        case Gate::Y:
            return CliffordAction({p("-X")}, {p("-Z")});
        case Gate::Z:
            return CliffordAction({p("-X")}, {p("+Z")});
        case Gate::CNOT:
            return CliffordAction({p("+XX"), p("+IX")}, {p("+ZI"), p("+ZZ")});
    }
    throw std::invalid_argument("unknown gate");
}

CliffordAction CliffordAction::pauli(const PauliString &p) {
    size_t n = p.num_qubits();
    std::vector<PauliString> xs, zs;
    for (size_t k = 0; k < n; k++) {
        PauliString x = PauliString::single(n, k, 'X');
        PauliString z = PauliString::single(n, k, 'Z');
        if (comm_sign(p, x) < 0) {
            x.negate();
        }
        if (comm_sign(p, z) < 0) {
            z.negate();
        }
        xs.push_back(std::move(x));
        zs.push_back(std::move(z));
    }
    return CliffordAction(std::move(xs), std::move(zs));
}

PauliString CliffordAction::conjugate(const PauliString &p) const {
    size_t n = num_qubits();
    if (p.num_qubits() != n) {
        throw std::invalid_argument("conjugate: Pauli has " + std::to_string(p.num_qubits()) +
                                    " qubits, action has " + std::to_string(n));
    }
    // p = i^(phase + #Y) * prod_q X_q^x Z_q^z, mapped factor by factor.
    PauliString out(n);
    int k = p.phase();
    for (size_t q = 0; q < n; q++) {
        if (p.x(q) && p.z(q)) {
            k += 1;
        }
    }
    out.set_phase(static_cast<uint8_t>(k & 3));
    for (size_t q = 0; q < n; q++) {
        if (p.x(q)) {
            out = pauli_mul(out, x_images_[q]);
        }
        if (p.z(q)) {
            out = pauli_mul(out, z_images_[q]);
        }
    }
    return out;
}

CliffordAction CliffordAction::then(const CliffordAction &after) const {
    if (after.num_qubits() != num_qubits()) {
        throw std::invalid_argument("Clifford composition dimension mismatch");
    }
    std::vector<PauliString> xs, zs;
    for (size_t k = 0; k < num_qubits(); k++) {
        xs.push_back(after.conjugate(x_images_[k]));
        zs.push_back(after.conjugate(z_images_[k]));
    }
    return CliffordAction(std::move(xs), std::move(zs));
}

bool CliffordAction::is_identity() const {
    for (size_t k = 0; k < num_qubits(); k++) {
        if (x_images_[k] != PauliString::single(num_qubits(), k, 'X') ||
            z_images_[k] != PauliString::single(num_qubits(), k, 'Z')) {
            return false;
        }
    }
    return true;
}

bool CliffordAction::is_pauli() const {
    for (size_t k = 0; k < num_qubits(); k++) {
        if (x_images_[k].unsigned_part() != PauliString::single(num_qubits(), k, 'X') ||
            z_images_[k].unsigned_part() != PauliString::single(num_qubits(), k, 'Z')) {
            return false;
        }
    }
    return true;
}

PauliString CliffordAction::as_pauli() const {
    if (!is_pauli()) {
        throw std::logic_error("as_pauli called on a non-Pauli Clifford");
    }
    // X_k flips sign iff the Pauli has Z or Y at k; Z_k flips iff X or Y.
    PauliString out(num_qubits());
    for (size_t k = 0; k < num_qubits(); k++) {
        bool has_z = x_images_[k].sign() < 0;
        bool has_x = z_images_[k].sign() < 0;
        out.set_letter(k, has_x ? (has_z ? 'Y' : 'X') : (has_z ? 'Z' : 'I'));
    }
    return out;
}

std::string CliffordAction::str() const {
    std::string out = "{";
    for (size_t k = 0; k < num_qubits(); k++) {
        if (k) {
            out += ", ";
        }
        out += "X" + std::to_string(k) + ": " + x_images_[k].str() + ", Z" + std::to_string(k) + ": " +
               z_images_[k].str();
    }
    return out + "}";
}

CliffordTable::CliffordTable(const CliffordAction &action) : num_qubits_(action.num_qubits()) {
    if (num_qubits_ > 8) {
        throw std::invalid_argument("CliffordTable supports at most 8 qubits");
    }
    size_t size = pauli_basis_size(num_qubits_);
    image_.resize(size);
    flip_.resize(size);
    for (uint32_t i = 0; i < size; i++) {
        PauliString image = action.conjugate(PauliString::from_index(num_qubits_, i));
        image_[i] = static_cast<uint32_t>(image.basis_index());
        flip_[i] = image.sign() < 0;
    }
}

}  // namespace ncsim
