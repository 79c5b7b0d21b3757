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

#ifndef NCSIM_PTM_H
#define NCSIM_PTM_H

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "ncsim/pauli.h"

namespace ncsim {

/// Pauli transfer matrix of an n-qubit channel.
///
/// Entry (i, j) = 2^-n Tr(P_i chi(P_j)), rows and columns in basis-index order.
/// Column j therefore holds the Pauli components of the image of P_j.
class Ptm {
   public:
    Ptm() = default;
    /// All-zero matrix.
    explicit Ptm(size_t num_qubits);
    static Ptm identity(size_t num_qubits);

    size_t num_qubits() const { return num_qubits_; }
    size_t dim() const { return dim_; }

    double &operator()(size_t row, size_t col) { return entries_[row * dim_ + col]; }
    double operator()(size_t row, size_t col) const { return entries_[row * dim_ + col]; }
    std::span<const double> entries() const { return entries_; }

    /// Composition: (a * b) applies b first, then a.
    Ptm operator*(const Ptm &rhs) const;
    Ptm &operator+=(const Ptm &rhs);
    void add_scaled(const Ptm &rhs, double scale);

    std::vector<double> apply(std::span<const double> pauli_vector) const;

    bool is_trace_preserving(double tol = 1e-9) const;
    bool is_unital(double tol = 1e-9) const;
    double max_abs_diff(const Ptm &other) const;

   private:
    size_t num_qubits_ = 0;
    size_t dim_ = 0;
    std::vector<double> entries_;
};

/// Dense matrix of a Pauli string. Computational basis index bit q is qubit q.
Eigen::MatrixXcd pauli_matrix(const PauliString &p);

/// PTM of rho -> sum_k E_k rho E_k^dagger. Kraus matrices use the same basis
/// convention as pauli_matrix. Writes a warning to stderr when the Kraus set
/// is not trace preserving within 1e-9; the PTM is still returned.
Ptm ptm_from_kraus(std::span<const Eigen::MatrixXcd> kraus);

/// Channel a on the low qubits, b on the high qubits.
Ptm tensor_product(const Ptm &a, const Ptm &b);

/// Average gate fidelity with the identity channel, (d F_pro + 1) / (d + 1).
double average_fidelity(const Ptm &ptm);

}  // namespace ncsim

#endif
