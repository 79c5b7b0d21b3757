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

#include "ncsim/ptm.h"

#include <cmath>
#include <complex>
#include <iostream>
#include <stdexcept>

namespace ncsim {

Ptm::Ptm(size_t num_qubits)
    : num_qubits_(num_qubits), dim_(pauli_basis_size(num_qubits)), entries_(dim_ * dim_, 0.0) {}

Ptm Ptm::identity(size_t num_qubits) {
    Ptm out(num_qubits);
    for (size_t i = 0; i < out.dim_; i++) {
        out(i, i) = 1.0;
    }
    return out;
}

Ptm Ptm::operator*(const Ptm &rhs) const {
    if (rhs.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("PTM product dimension mismatch");
    }
    Ptm out(num_qubits_);
    for (size_t i = 0; i < dim_; i++) {
        for (size_t k = 0; k < dim_; k++) {
            double a = (*this)(i, k);
            if (a == 0.0) {
                continue;
            }
            for (size_t j = 0; j < dim_; j++) {
                out(i, j) += a * rhs(k, j);
            }
        }
    }
    return out;
}

Ptm &Ptm::operator+=(const Ptm &rhs) {
    add_scaled(rhs, 1.0);
    return *this;
}

void Ptm::add_scaled(const Ptm &rhs, double scale) {
    if (rhs.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("PTM sum dimension mismatch");
    }
    for (size_t i = 0; i < entries_.size(); i++) {
        entries_[i] += scale * rhs.entries_[i];
    }
}

std::vector<double> Ptm::apply(std::span<const double> pauli_vector) const {
    if (pauli_vector.size() != dim_) {
        throw std::invalid_argument("PTM apply: vector has wrong length");
    }
    std::vector<double> out(dim_, 0.0);
    for (size_t i = 0; i < dim_; i++) {
        double acc = 0;
        for (size_t j = 0; j < dim_; j++) {
            acc += (*this)(i, j) * pauli_vector[j];
        }
        out[i] = acc;
    }
    return out;
}

bool Ptm::is_trace_preserving(double tol) const {
    for (size_t j = 0; j < dim_; j++) {
        if (std::abs((*this)(0, j) - (j == 0 ? 1.0 : 0.0)) > tol) {
            return false;
        }
    }
    return true;
}

bool Ptm::is_unital(double tol) const {
    for (size_t i = 0; i < dim_; i++) {
        if (std::abs((*this)(i, 0) - (i == 0 ? 1.0 : 0.0)) > tol) {
            return false;
        }
    }
    return true;
}

double Ptm::max_abs_diff(const Ptm &other) const {
    if (other.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("PTM comparison dimension mismatch");
    }
    double worst = 0;
    for (size_t i = 0; i < entries_.size(); i++) {
        worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
    }
    return worst;
}

Eigen::MatrixXcd pauli_matrix(const PauliString &p) {
    size_t n = p.num_qubits();
    if (n > 12) {
        throw std::invalid_argument("pauli_matrix limited to 12 qubits");
    }
    size_t dim = size_t{1} << n;
    uint64_t xmask = 0, zmask = 0;
    for (size_t q = 0; q < n; q++) {
        xmask |= uint64_t{p.x(q)} << q;
        zmask |= uint64_t{p.z(q)} << q;
    }
    static const std::complex<double> kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    // Letter product = i^(#Y) X^x Z^z and X^x Z^z |b> = (-1)^(z.b) |b ^ x>.
    int base = p.phase() + __builtin_popcountll(xmask & zmask);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (uint64_t b = 0; b < dim; b++) {
        int k = base + 2 * __builtin_popcountll(zmask & b);
        out(b ^ xmask, b) = kIPow[k & 3];
    }
    return out;
}

Ptm ptm_from_kraus(std::span<const Eigen::MatrixXcd> kraus) {
    if (kraus.empty()) {
        throw std::invalid_argument("ptm_from_kraus: empty Kraus list");
    }
    Eigen::Index dim = kraus[0].rows();
    if (dim <= 0 || (dim & (dim - 1)) != 0) {
        throw std::invalid_argument("ptm_from_kraus: dimension must be a power of two");
    }
    size_t n = static_cast<size_t>(__builtin_ctzll(static_cast<uint64_t>(dim)));
    Eigen::MatrixXcd completeness = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &e : kraus) {
        if (e.rows() != e.cols()) {
            throw std::invalid_argument("ptm_from_kraus: Kraus operators must be square");
        }
        if (e.rows() != dim) {
            throw std::invalid_argument("ptm_from_kraus: Kraus dimension mismatch");
        }
        completeness += e.adjoint() * e;
    }
    double tp_error = (completeness - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (tp_error > 1e-9) {
        std::cerr << "warning: Kraus set is not trace preserving (max deviation " << tp_error << ")\n";
    }

    std::vector<PauliString> basis = pauli_basis(n);
    std::vector<Eigen::MatrixXcd> mats;
    mats.reserve(basis.size());
    for (const auto &p : basis) {
        mats.push_back(pauli_matrix(p));
    }
    Ptm out(n);
    double norm = 1.0 / static_cast<double>(dim);
    for (size_t j = 0; j < basis.size(); j++) {
        Eigen::MatrixXcd image = Eigen::MatrixXcd::Zero(dim, dim);
        for (const auto &e : kraus) {
            image += e * mats[j] * e.adjoint();
        }
        for (size_t i = 0; i < basis.size(); i++) {
            out(i, j) = norm * (mats[i] * image).trace().real();
        }
    }
    return out;
}

Ptm tensor_product(const Ptm &a, const Ptm &b) {
    size_t na = a.num_qubits();
    Ptm out(na + b.num_qubits());
    size_t da = a.dim();
    for (size_t ia = 0; ia < da; ia++) {
        for (size_t ja = 0; ja < da; ja++) {
            double va = a(ia, ja);
            if (va == 0.0) {
                continue;
            }
            for (size_t ib = 0; ib < b.dim(); ib++) {
                for (size_t jb = 0; jb < b.dim(); jb++) {
                    out(ia + ib * da, ja + jb * da) = va * b(ib, jb);
                }
            }
        }
    }
    return out;
}

double average_fidelity(const Ptm &ptm) {
    double d = static_cast<double>(size_t{1} << ptm.num_qubits());
    double trace = 0;
    for (size_t i = 0; i < ptm.dim(); i++) {
        trace += ptm(i, i);
    }
    double process_fidelity = trace / (d * d);
    return (d * process_fidelity + 1.0) / (d + 1.0);
}

}  // namespace ncsim
