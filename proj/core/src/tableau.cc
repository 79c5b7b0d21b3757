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

#include <sstream>
#include <stdexcept>

#include "ncsim/channels.h"

namespace ncsim {

namespace {

// Bit rows over GF(2) of 2n columns: x bits then z bits.
using BitRow = std::vector<uint64_t>;

bool get_bit(const BitRow &r, size_t k) { return (r[k >> 6] >> (k & 63)) & 1; }
void flip_bit(BitRow &r, size_t k) { r[k >> 6] ^= uint64_t{1} << (k & 63); }
void xor_into(BitRow &a, const BitRow &b) {
    for (size_t w = 0; w < a.size(); w++) {
        a[w] ^= b[w];
    }
}

BitRow symplectic_row(const PauliString &p) {
    size_t n = p.num_qubits();
    BitRow r((2 * n + 63) / 64, 0);
    for (size_t q = 0; q < n; q++) {
        if (p.x(q)) {
            flip_bit(r, q);
        }
        if (p.z(q)) {
            flip_bit(r, n + q);
        }
    }
    return r;
}

size_t gf2_rank(std::vector<BitRow> rows, size_t cols) {
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows.size(); c++) {
        size_t pivot = rank;
        while (pivot < rows.size() && !get_bit(rows[pivot], c)) {
            pivot++;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        for (size_t r = 0; r < rows.size(); r++) {
            if (r != rank && get_bit(rows[r], c)) {
                xor_into(rows[r], rows[rank]);
            }
        }
        rank++;
    }
    return rank;
}

void validate_generators(std::span<const PauliString> generators, size_t n) {
    for (const auto &g : generators) {
        if (g.num_qubits() != n) {
            throw std::invalid_argument("stabilizer generators have mixed qubit counts");
        }
        if (!g.is_hermitian()) {
            throw std::invalid_argument("stabilizer generator " + g.str() + " is not Hermitian");
        }
        if (g.is_identity_letters()) {
            throw std::invalid_argument("stabilizer generator list contains the identity");
        }
    }
    for (size_t i = 0; i < generators.size(); i++) {
        for (size_t j = i + 1; j < generators.size(); j++) {
            if (comm_sign(generators[i], generators[j]) < 0) {
                throw std::invalid_argument(
                    "stabilizer generators " + generators[i].str() + " and " + generators[j].str() +
                    " anticommute");
            }
        }
    }
    std::vector<BitRow> rows;
    for (const auto &g : generators) {
        rows.push_back(symplectic_row(g));
    }
    if (gf2_rank(rows, 2 * n) != generators.size()) {
        throw std::invalid_argument("stabilizer generators are not independent");
    }
}

}  // namespace

StabilizerProjector::StabilizerProjector(std::vector<PauliString> generators) : generators_(std::move(generators)) {
    if (generators_.empty()) {
        throw std::invalid_argument("projector needs at least one generator");
    }
    num_qubits_ = generators_[0].num_qubits();
    validate_generators(generators_, num_qubits_);
}

Tableau::Tableau(size_t num_qubits)
    : n_(num_qubits),
      words_((num_qubits + 63) / 64),
      xs_((2 * num_qubits + 1) * words_, 0),
      zs_((2 * num_qubits + 1) * words_, 0),
      phases_(2 * num_qubits + 1, 0) {
    if (num_qubits == 0) {
        throw std::invalid_argument("tableau needs at least one qubit");
    }
    for (size_t q = 0; q < n_; q++) {
        xs_[q * words_ + (q >> 6)] |= uint64_t{1} << (q & 63);
        zs_[(n_ + q) * words_ + (q >> 6)] |= uint64_t{1} << (q & 63);
    }
}

Tableau Tableau::from_stabilizers(std::span<const PauliString> generators) {
    if (generators.empty()) {
        throw std::invalid_argument("from_stabilizers: no generators");
    }
    size_t n = generators[0].num_qubits();
    if (generators.size() != n) {
        throw std::invalid_argument("from_stabilizers: need exactly n generators for a pure state");
    }
    validate_generators(generators, n);

    // Destabilizer candidates: solve omega(d_i, s_j) = delta_ij. With A = rows
    // (z_j | x_j), omega(d, s_j) = A_j . d, so d_i is a right-inverse column.
    size_t cols = 2 * n;
    std::vector<BitRow> a;
    std::vector<BitRow> rhs;
    for (size_t j = 0; j < n; j++) {
        BitRow row((cols + 63) / 64, 0);
        for (size_t q = 0; q < n; q++) {
            if (generators[j].z(q)) {
                flip_bit(row, q);
            }
            if (generators[j].x(q)) {
                flip_bit(row, n + q);
            }
        }
        a.push_back(row);
        BitRow e((n + 63) / 64, 0);
        flip_bit(e, j);
        rhs.push_back(e);
    }
    std::vector<size_t> pivot_cols;
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < n; c++) {
        size_t pivot = rank;
        while (pivot < n && !get_bit(a[pivot], c)) {
            pivot++;
        }
        if (pivot == n) {
            continue;
        }
        std::swap(a[rank], a[pivot]);
        std::swap(rhs[rank], rhs[pivot]);
        for (size_t r = 0; r < n; r++) {
            if (r != rank && get_bit(a[r], c)) {
                xor_into(a[r], a[rank]);
                xor_into(rhs[r], rhs[rank]);
            }
        }
        pivot_cols.push_back(c);
        rank++;
    }
    std::vector<PauliString> destab(n, PauliString(n));
    for (size_t i = 0; i < n; i++) {
        for (size_t r = 0; r < n; r++) {
            if (!get_bit(rhs[r], i)) {
                continue;
            }
            size_t c = pivot_cols[r];
            if (c < n) {
                destab[i].set_letter(c, destab[i].z(c) ? 'Y' : 'X');
            } else {
                size_t q = c - n;
                destab[i].set_letter(q, destab[i].x(q) ? 'Y' : 'Z');
            }
        }
    }
    for (size_t j = 0; j < n; j++) {
        for (size_t i = 0; i < j; i++) {
            if (comm_sign(destab[i], destab[j]) < 0) {
                destab[j] = pauli_mul(destab[j], generators[i]).unsigned_part();
            }
        }
    }

    Tableau t(n);
    for (size_t k = 0; k < n; k++) {
        t.set_row(k, destab[k]);
        t.set_row(n + k, generators[k]);
    }
    return t;
}

PauliString Tableau::row(size_t r) const {
    PauliString p(n_);
    auto px = p.x_words();
    auto pz = p.z_words();
    for (size_t w = 0; w < words_; w++) {
        px[w] = xs_[r * words_ + w];
        pz[w] = zs_[r * words_ + w];
    }
    p.set_phase(phases_[r]);
    return p;
}

void Tableau::set_row(size_t r, const PauliString &p) {
    auto px = p.x_words();
    auto pz = p.z_words();
    for (size_t w = 0; w < words_; w++) {
        xs_[r * words_ + w] = px[w];
        zs_[r * words_ + w] = pz[w];
    }
    phases_[r] = p.phase();
}

bool Tableau::row_anticommutes(size_t r, const PauliString &p) const {
    return pauli_words::anticommutes(
        &xs_[r * words_], &zs_[r * words_], p.x_words().data(), p.z_words().data(), words_);
}

void Tableau::row_mul(size_t target, size_t source) {
    phases_[target] = pauli_words::multiply_into(
        &xs_[target * words_], &zs_[target * words_], phases_[target], &xs_[source * words_],
        &zs_[source * words_], phases_[source], words_);
}

void Tableau::check_pauli(const PauliString &p) const {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("Pauli " + p.str() + " does not match the tableau size");
    }
    if (!p.is_hermitian()) {
        throw std::invalid_argument("Pauli " + p.str() + " is not Hermitian");
    }
}

#define NCSIM_CHECK_QUBIT(q)                                      \
    if ((q) >= n_) {                                              \
        throw std::out_of_range("qubit index out of range");      \
    }

void Tableau::h(size_t q) {
    NCSIM_CHECK_QUBIT(q);
    size_t w = q >> 6;
    uint64_t m = uint64_t{1} << (q & 63);
    for (size_t r = 0; r < 2 * n_; r++) {
        uint64_t &x = xs_[r * words_ + w];
        uint64_t &z = zs_[r * words_ + w];
        uint64_t bx = x & m, bz = z & m;
        if (bx && bz) {
            phases_[r] ^= 2;
        }
        x = (x & ~m) | bz;
        z = (z & ~m) | bx;
    }
}

void Tableau::s(size_t q) {
    NCSIM_CHECK_QUBIT(q);
    size_t w = q >> 6;
    uint64_t m = uint64_t{1} << (q & 63);
    for (size_t r = 0; r < 2 * n_; r++) {
        uint64_t x = xs_[r * words_ + w] & m;
        uint64_t &z = zs_[r * words_ + w];
        if (x && (z & m)) {
            phases_[r] ^= 2;
        }
        z ^= x;
    }
}

void Tableau::x(size_t q) {
    NCSIM_CHECK_QUBIT(q);
    size_t w = q >> 6;
    uint64_t m = uint64_t{1} << (q & 63);
    for (size_t r = 0; r < 2 * n_; r++) {
        if (zs_[r * words_ + w] & m) {
            phases_[r] ^= 2;
        }
    }
}

void Tableau::y(size_t q) {
    NCSIM_CHECK_QUBIT(q);
    size_t w = q >> 6;
    uint64_t m = uint64_t{1} << (q & 63);
    for (size_t r = 0; r < 2 * n_; r++) {
        if ((xs_[r * words_ + w] ^ zs_[r * words_ + w]) & m) {
            phases_[r] ^= 2;
        }
    }
}

void Tableau::z(size_t q) {
    NCSIM_CHECK_QUBIT(q);
    size_t w = q >> 6;
    uint64_t m = uint64_t{1} << (q & 63);
    for (size_t r = 0; r < 2 * n_; r++) {
        if (xs_[r * words_ + w] & m) {
            phases_[r] ^= 2;
        }
    }
}

void Tableau::cnot(size_t control, size_t target) {
    NCSIM_CHECK_QUBIT(control);
    NCSIM_CHECK_QUBIT(target);
    if (control == target) {
        throw std::invalid_argument("cnot control and target must differ");
    }
    size_t wc = control >> 6, wt = target >> 6;
    unsigned bc = control & 63, bt = target & 63;
    for (size_t r = 0; r < 2 * n_; r++) {
        uint64_t &x_c = xs_[r * words_ + wc];
        uint64_t &z_c = zs_[r * words_ + wc];
        uint64_t &x_t = xs_[r * words_ + wt];
        uint64_t &z_t = zs_[r * words_ + wt];
        bool xc = (x_c >> bc) & 1, zc = (z_c >> bc) & 1;
        bool xt = (x_t >> bt) & 1, zt = (z_t >> bt) & 1;
        if (xc && zt && (xt == zc)) {
            phases_[r] ^= 2;
        }
        if (xc) {
            x_t ^= uint64_t{1} << bt;
        }
        if (zt) {
            z_c ^= uint64_t{1} << bc;
        }
    }
}

void Tableau::apply_gate(Gate gate, std::span<const size_t> qubits) {
    if (qubits.size() != gate_arity(gate)) {
        throw std::invalid_argument("gate arity mismatch for " + std::string(gate_name(gate)));
    }
    switch (gate) {
        case Gate::I:
            NCSIM_CHECK_QUBIT(qubits[0]);
            break;
        case Gate::H:
            h(qubits[0]);
            break;
        case Gate::S:
            s(qubits[0]);
            break;
        case Gate::X:
            x(qubits[0]);
            break;
        case Gate::Y:
            y(qubits[0]);
            break;
        case Gate::Z:
            z(qubits[0]);
            break;
        case Gate::CNOT:
            cnot(qubits[0], qubits[1]);
            break;
    }
}

void Tableau::apply_clifford(const CliffordAction &action, std::span<const size_t> qubits) {
    apply_clifford(CliffordTable(action), qubits);
}

void Tableau::apply_clifford(const CliffordTable &table, std::span<const size_t> qubits) {
    size_t m = table.num_qubits();
    if (qubits.size() != m) {
        throw std::invalid_argument("Clifford action qubit count mismatch");
    }
    for (size_t k = 0; k < m; k++) {
        NCSIM_CHECK_QUBIT(qubits[k]);
        for (size_t j = 0; j < k; j++) {
            if (qubits[j] == qubits[k]) {
                throw std::invalid_argument("Clifford action applied to repeated qubits");
            }
        }
    }
    static constexpr uint8_t kDigit[2][2] = {{0, 3}, {1, 2}};  // [x][z] -> I,Z / X,Y
    for (size_t r = 0; r < 2 * n_; r++) {
        uint32_t local = 0;
        uint32_t scale = 1;
        for (size_t k = 0; k < m; k++) {
            size_t q = qubits[k];
            bool bx = (xs_[r * words_ + (q >> 6)] >> (q & 63)) & 1;
            bool bz = (zs_[r * words_ + (q >> 6)] >> (q & 63)) & 1;
            local += kDigit[bx][bz] * scale;
            scale *= 4;
        }
        if (local == 0) {
            continue;
        }
        uint32_t image = table.image_index(local);
        if (table.sign_flip(local)) {
            phases_[r] ^= 2;
        }
        for (size_t k = 0; k < m; k++) {
            size_t q = qubits[k];
            uint32_t d = image & 3;
            image >>= 2;
            uint64_t bit = uint64_t{1} << (q & 63);
            uint64_t &x = xs_[r * words_ + (q >> 6)];
            uint64_t &z = zs_[r * words_ + (q >> 6)];
            x = (d == 1 || d == 2) ? (x | bit) : (x & ~bit);
            z = (d == 2 || d == 3) ? (z | bit) : (z & ~bit);
        }
    }
}

void Tableau::apply_pauli(const PauliString &p) {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("Pauli " + p.str() + " does not match the tableau size");
    }
    for (size_t r = 0; r < 2 * n_; r++) {
        if (row_anticommutes(r, p)) {
            phases_[r] ^= 2;
        }
    }
}

MeasurementRecord Tableau::measure_impl(const PauliString &obs, SplitMix64 *rng, int forced) {
    check_pauli(obs);
    if (obs.is_identity_letters()) {
        return {obs.sign(), true};
    }
    size_t p = n_;
    for (size_t k = 0; k < n_; k++) {
        if (row_anticommutes(n_ + k, obs)) {
            p = k;
            break;
        }
    }
    if (p < n_) {
        for (size_t r = 0; r < 2 * n_; r++) {
            if (r != p && r != n_ + p && row_anticommutes(r, obs)) {
                row_mul(r, n_ + p);
            }
        }
        for (size_t w = 0; w < words_; w++) {
            xs_[p * words_ + w] = xs_[(n_ + p) * words_ + w];
            zs_[p * words_ + w] = zs_[(n_ + p) * words_ + w];
        }
        phases_[p] = phases_[n_ + p];
        int outcome = forced != 0 ? forced : (rng->bit() ? -1 : 1);
        set_row(n_ + p, obs);
        if (outcome < 0) {
            phases_[n_ + p] ^= 2;
        }
        return {outcome, false};
    }
    return {peek(obs), true};
}

int Tableau::peek(const PauliString &obs) const {
    check_pauli(obs);
    if (obs.is_identity_letters()) {
        return obs.sign();
    }
    for (size_t k = 0; k < n_; k++) {
        if (row_anticommutes(n_ + k, obs)) {
            return 0;
        }
    }
    // obs is, up to sign, the product of the stabilizers paired with the
    // destabilizers it anticommutes with.
    std::vector<uint64_t> sx(words_, 0), sz(words_, 0);
    uint8_t phase = 0;
    for (size_t k = 0; k < n_; k++) {
        if (row_anticommutes(k, obs)) {
            phase = pauli_words::multiply_into(
                sx.data(), sz.data(), phase, &xs_[(n_ + k) * words_], &zs_[(n_ + k) * words_], phases_[n_ + k],
                words_);
        }
    }
    return phase == obs.phase() ? 1 : -1;
}

MeasurementRecord Tableau::measure(const PauliString &observable, SplitMix64 &rng) {
    return measure_impl(observable, &rng, 0);
}

MeasurementRecord Tableau::measure_and_reset(const PauliString &target, SplitMix64 &rng) {
    check_pauli(target);
    if (target.is_identity_letters()) {
        throw std::invalid_argument("cannot reset onto the identity");
    }
    MeasurementRecord rec = measure_impl(target, &rng, 0);
    if (rec.outcome < 0) {
        apply_pauli(reset_correction(target));
    }
    return rec;
}

double Tableau::projection_probability(const StabilizerProjector &projector) const {
    if (projector.num_qubits() != n_) {
        throw std::invalid_argument("projector size does not match the tableau");
    }
    Tableau scratch = *this;
    double prob = 1.0;
    for (const auto &g : projector.generators()) {
        MeasurementRecord rec = scratch.measure_impl(g, nullptr, 1);
        if (rec.deterministic) {
            if (rec.outcome < 0) {
                return 0.0;
            }
        } else {
            prob *= 0.5;
        }
    }
    return prob;
}

double Tableau::projection_probability(std::span<const PauliString> generators) const {
    return projection_probability(StabilizerProjector(std::vector<PauliString>(generators.begin(), generators.end())));
}

void Tableau::check_invariants() const {
    for (size_t r = 0; r < 2 * n_; r++) {
        if (phases_[r] & 1) {
            throw std::logic_error("tableau row " + std::to_string(r) + " has an imaginary phase");
        }
    }
    for (size_t a = 0; a < 2 * n_; a++) {
        for (size_t b = a + 1; b < 2 * n_; b++) {
            bool anti = pauli_words::anticommutes(
                &xs_[a * words_], &zs_[a * words_], &xs_[b * words_], &zs_[b * words_], words_);
            bool expected = (a < n_ && b == a + n_);
            if (anti != expected) {
                throw std::logic_error(
                    "tableau rows " + std::to_string(a) + " and " + std::to_string(b) +
                    " violate the symplectic structure");
            }
        }
    }
}

std::string Tableau::dump() const {
    std::ostringstream out;
    for (size_t r = 0; r < 2 * n_; r++) {
        out << row(r).str() << "\n";
    }
    return out.str();
}

}  // namespace ncsim
