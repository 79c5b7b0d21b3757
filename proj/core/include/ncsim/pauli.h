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

#ifndef NCSIM_PAULI_H
#define NCSIM_PAULI_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ncsim {

/// A phased n-qubit Pauli operator i^k * (P_0 ⊗ P_1 ⊗ ... ⊗ P_{n-1}).
///
/// Each qubit carries an (x, z) bit pair: I=(0,0), X=(1,0), Y=(1,1), Z=(0,1).
/// The phase is stored as the exponent k (mod 4) in front of the letter
/// product, so a Hermitian operator has k in {0, 2}. Bits are packed 64 per
/// word, qubit q living in bit (q % 64) of word (q / 64).
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(size_t num_qubits);

    /// Parses "±[IXYZ]*" (optionally "+i"/"-i" prefixes). Leftmost letter is qubit 0.
    static PauliString from_text(std::string_view text);
    /// Unsigned Pauli for a basis index (base-4 digits I,X,Y,Z, qubit 0 least significant).
    static PauliString from_index(size_t num_qubits, uint64_t index);
    /// Single-qubit letter embedded in an n-qubit identity.
    static PauliString single(size_t num_qubits, size_t qubit, char letter);

    size_t num_qubits() const { return num_qubits_; }
    size_t num_words() const { return xs_.size(); }

    bool x(size_t q) const { return (xs_[q >> 6] >> (q & 63)) & 1; }
    bool z(size_t q) const { return (zs_[q >> 6] >> (q & 63)) & 1; }
    char letter(size_t q) const;
    void set_letter(size_t q, char letter);

    /// Exponent k of the i^k prefix.
    uint8_t phase() const { return phase_; }
    void set_phase(uint8_t k) { phase_ = k & 3; }
    bool is_hermitian() const { return (phase_ & 1) == 0; }
    /// +1 or -1; only meaningful for Hermitian strings.
    int sign() const { return phase_ == 2 ? -1 : 1; }
    void negate() { phase_ = (phase_ + 2) & 3; }

    /// True when every letter is I (phase ignored).
    bool is_identity_letters() const;
    /// True when every letter is I and the phase is +1.
    bool is_identity() const { return phase_ == 0 && is_identity_letters(); }
    size_t weight() const;

    /// Position in the PTM basis ordering; phase ignored.
    uint64_t basis_index() const;
    PauliString unsigned_part() const;

    std::span<uint64_t> x_words() { return xs_; }
    std::span<uint64_t> z_words() { return zs_; }
    std::span<const uint64_t> x_words() const { return xs_; }
    std::span<const uint64_t> z_words() const { return zs_; }

    /// "+XZI", "-Y", "+iXX" style text.
    std::string str() const;

    bool operator==(const PauliString &other) const = default;

   private:
    size_t num_qubits_ = 0;
    uint8_t phase_ = 0;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
};

/// Product a*b with exact phase tracking.
PauliString pauli_mul(const PauliString &a, const PauliString &b);

/// +1 when a and b commute, -1 when they anticommute.
int comm_sign(const PauliString &a, const PauliString &b);

/// All 4^n unsigned Paulis in basis-index order. Entry 0 is the identity.
std::vector<PauliString> pauli_basis(size_t num_qubits);

/// Number of basis elements 4^n.
constexpr size_t pauli_basis_size(size_t num_qubits) { return size_t{1} << (2 * num_qubits); }

/// Word-level helpers shared by the tableau kernel.
namespace pauli_words {

/// Parity of the symplectic product of two bit-packed rows (1 means anticommute).
inline bool anticommutes(
    const uint64_t *x1, const uint64_t *z1, const uint64_t *x2, const uint64_t *z2, size_t words) {
    uint64_t acc = 0;
    for (size_t w = 0; w < words; w++) {
        acc ^= (x1[w] & z2[w]) ^ (z1[w] & x2[w]);
    }
    return __builtin_parityll(acc);
}

/// Multiplies (x1,z1,phase1) on the right by (x2,z2,phase2) in place and
/// returns the new phase exponent. Phases use the letter convention of PauliString.
inline uint8_t multiply_into(
    uint64_t *x1, uint64_t *z1, uint8_t phase1, const uint64_t *x2, const uint64_t *z2, uint8_t phase2,
    size_t words) {
    // Convert letter phases to the X^x Z^z convention (Y = i X Z), multiply, convert back.
    int k = phase1 + phase2;
    for (size_t w = 0; w < words; w++) {
        k += __builtin_popcountll(x1[w] & z1[w]);
        k += __builtin_popcountll(x2[w] & z2[w]);
        k += 2 * __builtin_popcountll(z1[w] & x2[w]);
        x1[w] ^= x2[w];
        z1[w] ^= z2[w];
        k -= __builtin_popcountll(x1[w] & z1[w]);
    }
    return static_cast<uint8_t>(k & 3);
}

}  // namespace pauli_words

}  // namespace ncsim

#endif
