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

#include "ncsim/pauli.h"

#include <stdexcept>

namespace ncsim {

namespace {

size_t words_for(size_t num_qubits) { return (num_qubits + 63) / 64; }

void require_same_size(const PauliString &a, const PauliString &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument(
            "Pauli dimension mismatch: " + std::to_string(a.num_qubits()) + " vs " +
            std::to_string(b.num_qubits()));
    }
}

}  // namespace

PauliString::PauliString(size_t num_qubits)
    : num_qubits_(num_qubits), xs_(words_for(num_qubits), 0), zs_(words_for(num_qubits), 0) {}

PauliString PauliString::from_text(std::string_view text) {
    uint8_t phase = 0;
    size_t pos = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        phase = text[pos] == '-' ? 2 : 0;
        pos++;
    }
    if (pos < text.size() && text[pos] == 'i') {
        phase = (phase + 1) & 3;
        pos++;
    }
    PauliString out(text.size() - pos);
    for (size_t q = 0; pos < text.size(); pos++, q++) {
        char c = text[pos];
        if (c == '_') {
            c = 'I';
        }
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
            throw std::invalid_argument("invalid Pauli text '" + std::string(text) + "'");
        }
        out.set_letter(q, c);
    }
    out.phase_ = phase;
    return out;
}

PauliString PauliString::from_index(size_t num_qubits, uint64_t index) {
    static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
    PauliString out(num_qubits);
    for (size_t q = 0; q < num_qubits; q++) {
        out.set_letter(q, kLetters[(index >> (2 * q)) & 3]);
    }
    return out;
}

PauliString PauliString::single(size_t num_qubits, size_t qubit, char letter) {
    if (qubit >= num_qubits) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) + " out of range");
    }
    PauliString out(num_qubits);
    out.set_letter(qubit, letter);
    return out;
}

char PauliString::letter(size_t q) const {
    static constexpr char kLetters[4] = {'I', 'X', 'Z', 'Y'};
    return kLetters[x(q) | (z(q) << 1)];
}

void PauliString::set_letter(size_t q, char letter) {
    bool bx = letter == 'X' || letter == 'Y';
    bool bz = letter == 'Z' || letter == 'Y';
    uint64_t mask = uint64_t{1} << (q & 63);
    xs_[q >> 6] = bx ? (xs_[q >> 6] | mask) : (xs_[q >> 6] & ~mask);
    zs_[q >> 6] = bz ? (zs_[q >> 6] | mask) : (zs_[q >> 6] & ~mask);
}

bool PauliString::is_identity_letters() const {
    for (size_t w = 0; w < xs_.size(); w++) {
        if (xs_[w] | zs_[w]) {
            return false;
        }
    }
    return true;
}

size_t PauliString::weight() const {
    size_t total = 0;
    for (size_t w = 0; w < xs_.size(); w++) {
        total += __builtin_popcountll(xs_[w] | zs_[w]);
    }
    return total;
}

uint64_t PauliString::basis_index() const {
    if (num_qubits_ > 32) {
        throw std::out_of_range("basis_index requires at most 32 qubits");
    }
    uint64_t index = 0;
    for (size_t q = 0; q < num_qubits_; q++) {
        uint64_t digit = x(q) ? (z(q) ? 2 : 1) : (z(q) ? 3 : 0);
        index |= digit << (2 * q);
    }
    return index;
}

PauliString PauliString::unsigned_part() const {
    PauliString out = *this;
    out.phase_ = 0;
    return out;
}

std::string PauliString::str() const {
    static constexpr const char *kPrefix[4] = {"+", "+i", "-", "-i"};
    std::string out = kPrefix[phase_];
    out.reserve(out.size() + num_qubits_);
    for (size_t q = 0; q < num_qubits_; q++) {
        out.push_back(letter(q));
    }
    return out;
}

PauliString pauli_mul(const PauliString &a, const PauliString &b) {
    require_same_size(a, b);
    PauliString out = a;
    uint8_t k = pauli_words::multiply_into(
        out.x_words().data(), out.z_words().data(), a.phase(), b.x_words().data(), b.z_words().data(),
        b.phase(), a.num_words());
    out.set_phase(k);
    return out;
}

int comm_sign(const PauliString &a, const PauliString &b) {
    require_same_size(a, b);
    bool anti = pauli_words::anticommutes(
        a.x_words().data(), a.z_words().data(), b.x_words().data(), b.z_words().data(), a.num_words());
    return anti ? -1 : 1;
}

std::vector<PauliString> pauli_basis(size_t num_qubits) {
    if (num_qubits > 8) {
        throw std::invalid_argument("pauli_basis is limited to 8 qubits");
    }
    std::vector<PauliString> out;
    size_t size = pauli_basis_size(num_qubits);
    out.reserve(size);
    for (uint64_t i = 0; i < size; i++) {
        out.push_back(PauliString::from_index(num_qubits, i));
    }
    return out;
}

}  // namespace ncsim
