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

#include "ncsim/channels.h"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace ncsim {

namespace {

using cd = std::complex<double>;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

CliffordAction single_gate(Gate g) { return CliffordAction::from_gate(g); }

Eigen::MatrixXcd mat2(cd a, cd b, cd c, cd d) {
    Eigen::MatrixXcd m(2, 2);
    m << a, b, c, d;
    return m;
}

void require_params(const ChannelSpec &spec, size_t count) {
    if (spec.params.size() != count) {
        throw std::invalid_argument(
            "channel '" + spec.name + "' expects " + std::to_string(count) + " parameter(s), got " +
            std::to_string(spec.params.size()));
    }
}

}  // namespace

PauliString reset_correction(const PauliString &target) {
    for (size_t q = 0; q < target.num_qubits(); q++) {
        char c = target.letter(q);
        if (c != 'I') {
            return PauliString::single(target.num_qubits(), q, c == 'X' ? 'Z' : 'X');
        }
    }
    throw std::invalid_argument("Pauli reset target must not be the identity");
}

size_t term_qubits(const StabilizerChannelTerm &term) {
    return std::visit(
        Overloaded{
            [](const CliffordAction &c) { return c.num_qubits(); },
            [](const PauliReset &r) { return r.target.num_qubits(); },
        },
        term);
}

std::string term_str(const StabilizerChannelTerm &term) {
    return std::visit(
        Overloaded{
            [](const CliffordAction &c) { return "clifford" + c.str(); },
            [](const PauliReset &r) { return "reset(" + r.target.str() + ")"; },
        },
        term);
}

Ptm term_to_ptm(const StabilizerChannelTerm &term) {
    return std::visit(
        Overloaded{
            [](const CliffordAction &c) {
                size_t n = c.num_qubits();
                Ptm out(n);
                for (uint64_t j = 0; j < out.dim(); j++) {
                    PauliString image = c.conjugate(PauliString::from_index(n, j));
                    out(image.basis_index(), j) = image.sign();
                }
                return out;
            },
            [](const PauliReset &r) {
                const PauliString &p = r.target;
                if (!p.is_hermitian()) {
                    throw std::invalid_argument("Pauli reset target must be Hermitian: " + p.str());
                }
                PauliString correction = reset_correction(p);
                size_t n = p.num_qubits();
                Ptm out(n);
                // A basis element Q survives only if it commutes with P and with
                // the correction; it then maps to Q + QP.
                for (uint64_t j = 0; j < out.dim(); j++) {
                    PauliString q = PauliString::from_index(n, j);
                    if (comm_sign(q, p) < 0 || comm_sign(q, correction) < 0) {
                        continue;
                    }
                    PauliString qp = pauli_mul(q, p);
                    out(j, j) += 1.0;
                    out(qp.basis_index(), j) += qp.sign();
                }
                return out;
            },
        },
        term);
}

Ptm decomp_to_ptm(const StabilizerDecomposition &d) {
    Ptm out(d.num_qubits);
    for (const auto &t : d.terms) {
        if (term_qubits(t.term) != d.num_qubits) {
            throw std::invalid_argument("decomposition mixes qubit counts");
        }
        out.add_scaled(term_to_ptm(t.term), t.q);
    }
    return out;
}

double negativity(const StabilizerDecomposition &d) {
    double total = 0;
    for (const auto &t : d.terms) {
        if (t.q < 0) {
            total -= t.q;
        }
    }
    return total;
}

double one_norm(const StabilizerDecomposition &d) {
    double total = 0;
    for (const auto &t : d.terms) {
        total += std::abs(t.q);
    }
    return total;
}

double coefficient_sum(const StabilizerDecomposition &d) {
    double total = 0;
    for (const auto &t : d.terms) {
        total += t.q;
    }
    return total;
}

StabilizerDecomposition merge_terms(const StabilizerDecomposition &d, double prune_tol) {
    StabilizerDecomposition merged{d.num_qubits, {}};
    for (const auto &t : d.terms) {
        bool found = false;
        for (auto &m : merged.terms) {
            if (m.term == t.term) {
                m.q += t.q;
                found = true;
                break;
            }
        }
        if (!found) {
            merged.terms.push_back(t);
        }
    }
    std::erase_if(merged.terms, [&](const WeightedTerm &t) { return std::abs(t.q) <= prune_tol; });
    return merged;
}

StabilizerDecomposition tensor_product(const StabilizerDecomposition &a, const StabilizerDecomposition &b) {
    size_t na = a.num_qubits;
    size_t n = na + b.num_qubits;
    auto embed = [n](const PauliString &p, size_t offset) {
        PauliString out(n);
        for (size_t q = 0; q < p.num_qubits(); q++) {
            out.set_letter(q + offset, p.letter(q));
        }
        out.set_phase(p.phase());
        return out;
    };
    StabilizerDecomposition out{n, {}};
    for (const auto &ta : a.terms) {
        for (const auto &tb : b.terms) {
            const auto *ca = std::get_if<CliffordAction>(&ta.term);
            const auto *cb = std::get_if<CliffordAction>(&tb.term);
            if (ca == nullptr || cb == nullptr) {
                throw std::invalid_argument("tensor_product supports Clifford-only decompositions");
            }
            std::vector<PauliString> xs, zs;
            for (size_t k = 0; k < na; k++) {
                xs.push_back(embed(ca->x_image(k), 0));
                zs.push_back(embed(ca->z_image(k), 0));
            }
            for (size_t k = 0; k < b.num_qubits; k++) {
                xs.push_back(embed(cb->x_image(k), na));
                zs.push_back(embed(cb->z_image(k), na));
            }
            out.terms.push_back({ta.q * tb.q, CliffordAction(std::move(xs), std::move(zs))});
        }
    }
    return out;
}

StabilizerDecomposition make_identity_channel(size_t num_qubits) {
    return {num_qubits, {{1.0, CliffordAction::identity(num_qubits)}}};
}

StabilizerDecomposition make_clifford_channel(const CliffordAction &action) {
    return {action.num_qubits(), {{1.0, action}}};
}

StabilizerDecomposition make_pauli_reset_channel(const PauliString &target) {
    reset_correction(target);
    if (!target.is_hermitian()) {
        throw std::invalid_argument("Pauli reset target must be Hermitian: " + target.str());
    }
    return {target.num_qubits(), {{1.0, PauliReset{target}}}};
}

StabilizerDecomposition make_pauli_dephasing(const PauliString &p) {
    size_t n = p.num_qubits();
    return {n, {{0.5, CliffordAction::identity(n)}, {0.5, CliffordAction::pauli(p)}}};
}

StabilizerDecomposition make_rotation_z(double theta) {
    double c = std::cos(theta);
    double s = std::sin(theta);
    return {
        1,
        {
            {(1 + c - s) / 2, single_gate(Gate::I)},
            {(1 - c - s) / 2, single_gate(Gate::Z)},
            {s, single_gate(Gate::S)},
        }};
}

StabilizerDecomposition make_t_gate() {
    double r = std::numbers::sqrt2 / 2;
    return {
        1,
        {
            {0.5, single_gate(Gate::I)},
            {0.5 - r, single_gate(Gate::Z)},
            {r, single_gate(Gate::S)},
        }};
}

StabilizerDecomposition make_rotation_z_positive_approx(double theta) {
    if (theta < 0 || theta > std::numbers::pi / 2) {
        throw std::invalid_argument("positive rotation approximation needs 0 <= theta <= pi/2");
    }
    double s = std::sin(theta);
    if (s == 0.0) {
        return make_identity_channel(1);
    }
    return {1, {{1 - s, single_gate(Gate::I)}, {s, single_gate(Gate::S)}}};
}

StabilizerDecomposition make_amplitude_damping(double gamma) {
    if (!(gamma >= 0 && gamma <= 1)) {
        throw std::invalid_argument("amplitude damping needs 0 <= gamma <= 1");
    }
    double keep = 1 - gamma;
    double root = std::sqrt(keep);
    return {
        1,
        {
            {(keep + root) / 2, single_gate(Gate::I)},
            {(keep - root) / 2, single_gate(Gate::Z)},
            {gamma, PauliReset{PauliString::from_text("+Z")}},
        }};
}

StabilizerDecomposition make_depolarizing(double p) {
    if (!(p >= 0 && p <= 0.75)) {
        throw std::invalid_argument("depolarizing needs 0 <= p <= 3/4");
    }
    if (p == 0.0) {
        return make_identity_channel(1);
    }
    return {
        1,
        {
            {1 - p, single_gate(Gate::I)},
            {p / 3, single_gate(Gate::X)},
            {p / 3, single_gate(Gate::Y)},
            {p / 3, single_gate(Gate::Z)},
        }};
}

std::vector<Eigen::MatrixXcd> kraus_rotation_z(double theta) {
    return {mat2(1, 0, 0, std::polar(1.0, theta))};
}

std::vector<Eigen::MatrixXcd> kraus_rotation_z_positive_approx(double theta) {
    double s = std::sin(theta);
    return {
        mat2(std::sqrt(1 - s), 0, 0, std::sqrt(1 - s)),
        mat2(std::sqrt(s), 0, 0, cd(0, std::sqrt(s))),
    };
}

std::vector<Eigen::MatrixXcd> kraus_amplitude_damping(double gamma) {
    if (!(gamma >= 0 && gamma <= 1)) {
        throw std::invalid_argument("amplitude damping needs 0 <= gamma <= 1");
    }
    return {
        mat2(1, 0, 0, std::sqrt(1 - gamma)),
        mat2(0, std::sqrt(gamma), 0, 0),
    };
}

std::vector<Eigen::MatrixXcd> kraus_depolarizing(double p) {
    if (!(p >= 0 && p <= 0.75)) {
        throw std::invalid_argument("depolarizing needs 0 <= p <= 3/4");
    }
    double a = std::sqrt(1 - p);
    double b = std::sqrt(p / 3);
    return {
        mat2(a, 0, 0, a),
        mat2(0, b, b, 0),
        mat2(0, cd(0, -b), cd(0, b), 0),
        mat2(b, 0, 0, -b),
    };
}

std::string ChannelSpec::str() const {
    std::string out = name;
    if (!params.empty()) {
        out += "(";
        for (size_t i = 0; i < params.size(); i++) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.17g", params[i]);
            out += (i ? "," : "") + std::string(buf);
        }
        out += ")";
    }
    return out;
}

StabilizerDecomposition make_named_channel(const ChannelSpec &spec) {
    if (spec.name == "identity") {
        require_params(spec, 0);
        return make_identity_channel(1);
    }
    if (spec.name == "t") {
        require_params(spec, 0);
        return make_t_gate();
    }
    if (spec.name == "rotation_z") {
        require_params(spec, 1);
        return make_rotation_z(spec.params[0]);
    }
    if (spec.name == "rotation_z_positive") {
        require_params(spec, 1);
        return make_rotation_z_positive_approx(spec.params[0]);
    }
    if (spec.name == "amplitude_damping") {
        require_params(spec, 1);
        return make_amplitude_damping(spec.params[0]);
    }
    if (spec.name == "depolarizing") {
        require_params(spec, 1);
        return make_depolarizing(spec.params[0]);
    }
    throw std::invalid_argument("unknown channel '" + spec.name + "'");
}

std::vector<Eigen::MatrixXcd> named_channel_kraus(const ChannelSpec &spec) {
    if (spec.name == "identity") {
        require_params(spec, 0);
        return {Eigen::MatrixXcd::Identity(2, 2)};
    }
    if (spec.name == "t") {
        require_params(spec, 0);
        return kraus_rotation_z(std::numbers::pi / 4);
    }
    if (spec.name == "rotation_z") {
        require_params(spec, 1);
        return kraus_rotation_z(spec.params[0]);
    }
    if (spec.name == "rotation_z_positive") {
        require_params(spec, 1);
        return kraus_rotation_z_positive_approx(spec.params[0]);
    }
    if (spec.name == "amplitude_damping") {
        require_params(spec, 1);
        return kraus_amplitude_damping(spec.params[0]);
    }
    if (spec.name == "depolarizing") {
        require_params(spec, 1);
        return kraus_depolarizing(spec.params[0]);
    }
    throw std::invalid_argument("unknown channel '" + spec.name + "'");
}

}  // namespace ncsim
