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

#include "ncsim/oracle.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ncsim {

using cd = std::complex<double>;

namespace {

void check_oracle_size(size_t n, size_t limit) {
    if (n == 0 || n > limit) {
        throw std::invalid_argument(
            "oracle supports 1 to " + std::to_string(limit) + " qubits, got " + std::to_string(n));
    }
}

}  // namespace

Eigen::MatrixXcd projector_matrix(std::span<const PauliString> generators) {
    if (generators.empty()) {
        throw std::invalid_argument("projector needs at least one generator");
    }
    size_t dim = size_t{1} << generators[0].num_qubits();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto &g : generators) {
        out = out * (Eigen::MatrixXcd::Identity(dim, dim) + pauli_matrix(g)) * 0.5;
    }
    return out;
}

std::vector<double> stabilizer_pauli_vector(std::span<const PauliString> generators) {
    Eigen::MatrixXcd proj = projector_matrix(generators);
    size_t n = generators[0].num_qubits();
    std::vector<double> out;
    for (const auto &p : pauli_basis(n)) {
        out.push_back((pauli_matrix(p) * proj).trace().real());
    }
    return out;
}

std::vector<double> apply_embedded_ptm(std::span<const double> vec, const Ptm &ptm, std::span<const size_t> qubits) {
    size_t k = ptm.num_qubits();
    if (qubits.size() != k) {
        throw std::invalid_argument("PTM qubit list has the wrong length");
    }
    std::vector<double> out(vec.size(), 0.0);
    for (size_t j_full = 0; j_full < vec.size(); j_full++) {
        double v = vec[j_full];
        if (v == 0.0) {
            continue;
        }
        size_t j_local = 0;
        size_t rest = j_full;
        for (size_t a = 0; a < k; a++) {
            size_t shift = 2 * qubits[a];
            j_local |= ((j_full >> shift) & 3) << (2 * a);
            rest &= ~(size_t{3} << shift);
        }
        for (size_t i_local = 0; i_local < ptm.dim(); i_local++) {
            double r = ptm(i_local, j_local);
            if (r == 0.0) {
                continue;
            }
            size_t i_full = rest;
            for (size_t a = 0; a < k; a++) {
                i_full |= ((i_local >> (2 * a)) & 3) << (2 * qubits[a]);
            }
            out[i_full] += r * v;
        }
    }
    return out;
}

std::vector<double> exact_expectations(const SimulationPlan &plan) {
    check_oracle_size(plan.num_qubits, kMaxOracleQubits);
    validate_plan(plan);
    size_t n = plan.num_qubits;
    std::vector<PauliString> initial = plan.initial.empty() ? zero_state_generators(n) : plan.initial;
    std::vector<double> r = stabilizer_pauli_vector(initial);
    double norm = 1.0 / static_cast<double>(size_t{1} << n);

    std::vector<double> out(plan.observables.size(), 0.0);
    auto evaluate = [&](size_t k) {
        for (size_t o = 0; o < plan.observables.size(); o++) {
            if (std::min(plan.observables[o].after, plan.channels.size()) != k) {
                continue;
            }
            std::vector<double> phi = stabilizer_pauli_vector(plan.observables[o].generators);
            double acc = 0;
            for (size_t i = 0; i < phi.size(); i++) {
                acc += phi[i] * r[i];
            }
            out[o] = norm * acc;
        }
    };
    evaluate(0);
    for (size_t k = 0; k < plan.channels.size(); k++) {
        const auto &ch = plan.channels[k];
        r = apply_embedded_ptm(r, decomp_to_ptm(ch.channel), ch.qubits);
        evaluate(k + 1);
    }
    return out;
}

double exact_expectation(const SimulationPlan &plan) {
    if (plan.observables.empty()) {
        throw std::invalid_argument("plan has no observables");
    }
    return exact_expectations(plan)[0];
}

Eigen::MatrixXcd embed_operator(const Eigen::MatrixXcd &local, std::span<const size_t> qubits, size_t num_qubits) {
    size_t k = qubits.size();
    if (local.rows() != (Eigen::Index{1} << k) || local.cols() != local.rows()) {
        throw std::invalid_argument("local operator size does not match its qubit list");
    }
    size_t dim = size_t{1} << num_qubits;
    size_t mask = 0;
    for (size_t q : qubits) {
        if (q >= num_qubits) {
            throw std::out_of_range("operator acts on a qubit out of range");
        }
        mask |= size_t{1} << q;
    }
    auto local_index = [&](size_t b) {
        size_t out = 0;
        for (size_t a = 0; a < k; a++) {
            out |= ((b >> qubits[a]) & 1) << a;
        }
        return out;
    };
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (size_t col = 0; col < dim; col++) {
        size_t lc = local_index(col);
        for (size_t lr = 0; lr < (size_t{1} << k); lr++) {
            cd v = local(lr, lc);
            if (v == cd(0, 0)) {
                continue;
            }
            size_t row = col & ~mask;
            for (size_t a = 0; a < k; a++) {
                row |= ((lr >> a) & 1) << qubits[a];
            }
            out(row, col) += v;
        }
    }
    return out;
}

Eigen::MatrixXcd gate_matrix(Gate gate) {
    const double r = std::numbers::sqrt2 / 2;
    Eigen::MatrixXcd m;
    switch (gate) {
        case Gate::I:
            return Eigen::MatrixXcd::Identity(2, 2);
        case Gate::H:
            m.resize(2, 2);
            m << r, r, r, -r;
            return m;
        case Gate::S:
            m.resize(2, 2);
            m << 1, 0, 0, cd(0, 1);
            return m;
        case Gate::X:
            return pauli_matrix(PauliString::from_text("X"));
        case Gate::Y:
            return pauli_matrix(PauliString::from_text("Y"));
        case Gate::Z:
            return pauli_matrix(PauliString::from_text("Z"));
        case Gate::CNOT:
            // Qubit 0 (low bit) controls qubit 1.
            m = Eigen::MatrixXcd::Zero(4, 4);
            m(0, 0) = 1;
            m(3, 1) = 1;
            m(2, 2) = 1;
            m(1, 3) = 1;
            return m;
    }
    throw std::logic_error("unknown gate");
}

DensityMatrix::DensityMatrix(size_t num_qubits) : num_qubits_(num_qubits) {
    check_oracle_size(num_qubits, kMaxOracleQubits);
    size_t dim = size_t{1} << num_qubits;
    rho_ = Eigen::MatrixXcd::Zero(dim, dim);
    rho_(0, 0) = 1;
}

DensityMatrix DensityMatrix::from_stabilizers(std::span<const PauliString> generators) {
    if (generators.empty()) {
        throw std::invalid_argument("no generators");
    }
    DensityMatrix out(generators[0].num_qubits());
    out.rho_ = projector_matrix(generators);
    double tr = out.trace();
    if (std::abs(tr - 1.0) > 1e-12) {
        throw std::invalid_argument("generators do not define a pure state");
    }
    return out;
}

void DensityMatrix::apply_unitary(const Eigen::MatrixXcd &local, std::span<const size_t> qubits) {
    Eigen::MatrixXcd u = embed_operator(local, qubits, num_qubits_);
    rho_ = u * rho_ * u.adjoint();
}

void DensityMatrix::apply_kraus(std::span<const Eigen::MatrixXcd> kraus, std::span<const size_t> qubits) {
    Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(rho_.rows(), rho_.cols());
    for (const auto &k : kraus) {
        Eigen::MatrixXcd e = embed_operator(k, qubits, num_qubits_);
        next += e * rho_ * e.adjoint();
    }
    rho_ = next;
}

void DensityMatrix::apply_gate(Gate gate, std::span<const size_t> qubits) {
    if (qubits.size() != gate_arity(gate)) {
        throw std::invalid_argument("gate arity mismatch");
    }
    apply_unitary(gate_matrix(gate), qubits);
}

void DensityMatrix::dephase(const PauliString &p) {
    Eigen::MatrixXcd m = pauli_matrix(p);
    rho_ = 0.5 * (rho_ + m * rho_ * m.adjoint());
}

void DensityMatrix::pauli_reset(const PauliString &target) {
    size_t dim = rho_.rows();
    Eigen::MatrixXcd p = pauli_matrix(target);
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::MatrixXcd plus = 0.5 * (id + p);
    Eigen::MatrixXcd minus = 0.5 * (id - p);
    Eigen::MatrixXcd n = pauli_matrix(reset_correction(target));
    rho_ = plus * rho_ * plus + n * minus * rho_ * minus * n.adjoint();
}

void DensityMatrix::apply_decomposition(const StabilizerDecomposition &d, std::span<const size_t> qubits) {
    if (qubits.size() != d.num_qubits) {
        throw std::invalid_argument("decomposition qubit list has the wrong length");
    }
    // Evolve through the mixture's PTM in the full Pauli basis.
    std::vector<PauliString> basis = pauli_basis(num_qubits_);
    std::vector<double> r;
    for (const auto &p : basis) {
        r.push_back((pauli_matrix(p) * rho_).trace().real());
    }
    r = apply_embedded_ptm(r, decomp_to_ptm(d), qubits);
    Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(rho_.rows(), rho_.cols());
    for (size_t i = 0; i < basis.size(); i++) {
        if (r[i] != 0.0) {
            next += r[i] * pauli_matrix(basis[i]);
        }
    }
    next /= static_cast<double>(rho_.rows());
    rho_ = next;
}

double DensityMatrix::expectation(const Eigen::MatrixXcd &op) const { return (op * rho_).trace().real(); }

double DensityMatrix::projection_probability(std::span<const PauliString> generators) const {
    return expectation(projector_matrix(generators));
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

void dense_apply(DensityMatrix &rho, const Instruction &inst) {
    size_t n = rho.num_qubits();
    std::visit(
        Overloaded{
            [&](const GateOp &g) { rho.apply_gate(g.gate, g.qubits); },
            [&](const NoiseOp &op) {
                auto kraus = named_channel_kraus(op.channel);
                size_t k = static_cast<size_t>(__builtin_ctzll(static_cast<uint64_t>(kraus[0].rows())));
                if (k == 1) {
                    for (size_t q : op.qubits) {
                        size_t qs[] = {q};
                        rho.apply_kraus(kraus, qs);
                    }
                } else {
                    rho.apply_kraus(kraus, op.qubits);
                }
            },
            [&](const MeasurePauliOp &m) { rho.dephase(m.observable); },
            [&](const ResetPauliOp &r) {
                // Same local correction convention as the sampler.
                std::vector<size_t> qs;
                for (size_t q = 0; q < n; q++) {
                    if (r.target.x(q) || r.target.z(q)) {
                        qs.push_back(q);
                    }
                }
                PauliString local(qs.size());
                for (size_t a = 0; a < qs.size(); a++) {
                    local.set_letter(a, r.target.letter(qs[a]));
                }
                local.set_phase(r.target.phase());
                rho.apply_decomposition(make_pauli_reset_channel(local), qs);
            },
            [&](const MeasureResetOp &m) { rho.pauli_reset(PauliString::single(n, m.qubit, 'Z')); },
        },
        inst);
}

StateVector::StateVector(size_t num_qubits) : num_qubits_(num_qubits) {
    check_oracle_size(num_qubits, kMaxStateVectorQubits);
    psi_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << num_qubits);
    psi_(0) = 1;
}

void StateVector::apply_gate(Gate gate, std::span<const size_t> qubits) {
    if (qubits.size() != gate_arity(gate)) {
        throw std::invalid_argument("gate arity mismatch");
    }
    for (size_t q : qubits) {
        if (q >= num_qubits_) {
            throw std::out_of_range("qubit out of range");
        }
    }
    const double r = std::numbers::sqrt2 / 2;
    size_t dim = psi_.size();
    switch (gate) {
        case Gate::I:
            return;
        case Gate::H: {
            size_t m = size_t{1} << qubits[0];
            for (size_t b = 0; b < dim; b++) {
                if (!(b & m)) {
                    cd a0 = psi_(b), a1 = psi_(b | m);
                    psi_(b) = r * (a0 + a1);
                    psi_(b | m) = r * (a0 - a1);
                }
            }
            return;
        }
        case Gate::S: {
            size_t m = size_t{1} << qubits[0];
            for (size_t b = 0; b < dim; b++) {
                if (b & m) {
                    psi_(b) *= cd(0, 1);
                }
            }
            return;
        }
        case Gate::X:
        case Gate::Y:
        case Gate::Z: {
            PauliString p = PauliString::single(num_qubits_, qubits[0], gate == Gate::X ? 'X' : gate == Gate::Y ? 'Y' : 'Z');
            apply_pauli(p);
            return;
        }
        case Gate::CNOT: {
            size_t mc = size_t{1} << qubits[0], mt = size_t{1} << qubits[1];
            for (size_t b = 0; b < dim; b++) {
                if ((b & mc) && !(b & mt)) {
                    std::swap(psi_(b), psi_(b | mt));
                }
            }
            return;
        }
    }
}

Eigen::VectorXcd StateVector::pauli_times(const PauliString &p, const Eigen::VectorXcd &v) const {
    if (p.num_qubits() != num_qubits_) {
        throw std::invalid_argument("Pauli size does not match the state");
    }
    uint64_t xmask = 0, zmask = 0;
    for (size_t q = 0; q < num_qubits_; q++) {
        xmask |= uint64_t{p.x(q)} << q;
        zmask |= uint64_t{p.z(q)} << q;
    }
    static const cd kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    int base = p.phase() + __builtin_popcountll(xmask & zmask);
    Eigen::VectorXcd out(v.size());
    for (uint64_t b = 0; b < static_cast<uint64_t>(v.size()); b++) {
        int k = base + 2 * __builtin_popcountll(zmask & b);
        out(b ^ xmask) = kIPow[k & 3] * v(b);
    }
    return out;
}

void StateVector::apply_pauli(const PauliString &p) { psi_ = pauli_times(p, psi_); }

double StateVector::probability_plus(const PauliString &p) const {
    cd e = psi_.dot(pauli_times(p, psi_));
    return 0.5 * (1.0 + e.real());
}

double StateVector::project(const PauliString &p, int outcome) {
    Eigen::VectorXcd pv = pauli_times(p, psi_);
    Eigen::VectorXcd next = 0.5 * (psi_ + static_cast<double>(outcome) * pv);
    double prob = next.squaredNorm();
    if (prob > 0) {
        psi_ = next / std::sqrt(prob);
    }
    return prob;
}

double StateVector::projection_probability(std::span<const PauliString> generators) const {
    Eigen::VectorXcd v = psi_;
    for (const auto &g : generators) {
        v = 0.5 * (v + pauli_times(g, v));
    }
    return v.squaredNorm();
}

}  // namespace ncsim
