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

#ifndef NCSIM_DECOMPOSER_H
#define NCSIM_DECOMPOSER_H

#include <span>
#include <stdexcept>
#include <vector>

#include "ncsim/channels.h"
#include "ncsim/ptm.h"

namespace ncsim {

/// All 1- or 2-qubit Clifford channels (24 or 11520), identity first.
const std::vector<CliffordAction> &enumerate_cliffords(size_t num_qubits);
/// Resets onto every signed non-identity Pauli (6 or 30); +P precedes -P.
std::vector<PauliReset> enumerate_pauli_resets(size_t num_qubits);

class ChannelDictionary {
   public:
    /// Cliffords followed by resets, with every term's PTM precomputed.
    explicit ChannelDictionary(size_t num_qubits);

    size_t num_qubits() const { return num_qubits_; }
    size_t size() const { return terms_.size(); }
    const std::vector<StabilizerChannelTerm> &terms() const { return terms_; }
    /// Row-major flattened PTM of term t (16^n entries).
    std::span<const double> ptm_column(size_t t) const {
        return {columns_.data() + t * column_size_, column_size_};
    }
    size_t column_size() const { return column_size_; }

   private:
    size_t num_qubits_;
    size_t column_size_;
    std::vector<StabilizerChannelTerm> terms_;
    std::vector<double> columns_;
};

class InfeasibleError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct LpSolution {
    enum class Status { Optimal, Infeasible };
    Status status = Status::Infeasible;
    std::vector<double> q;
    double objective = 0;
    double residual = 0;
    size_t iterations = 0;
};

/// Two-phase revised primal simplex (explicit basis inverse, sparse columns,
/// Dantzig pricing, Bland's rule after runs of degenerate pivots, right-hand
/// side perturbed for both phases and removed by a dual cleanup) for
///   min c.x  subject to  A x = b, x >= 0,
/// where A is m-by-n row-major. Rows with b < 0 are flipped internally.
struct StandardFormLp {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> c;
};
struct SimplexResult {
    bool feasible = false;
    std::vector<double> x;
    double objective = 0;
    size_t iterations = 0;
};
SimplexResult solve_simplex(const StandardFormLp &lp, double feas_tol = 1e-9);

/// Minimal sum |q_i| subject to sum_i q_i PTM(S_i) = channel.
LpSolution solve_min_norm(const Ptm &channel, const ChannelDictionary &dict, double feas_tol = 1e-9);

/// Throws std::invalid_argument when the channel is not trace preserving or
/// the sizes differ, and InfeasibleError when no decomposition is found.
StabilizerDecomposition decompose_min_norm(const Ptm &channel, const ChannelDictionary &dict, double feas_tol = 1e-9);

/// Decomposition of the basis channel mapping the unsigned Pauli p_in to
/// p_out and annihilating every other basis element. Throws when p_in is not
/// the identity but p_out is.
StabilizerDecomposition basis_channel_decomposition(const PauliString &p_in, const PauliString &p_out);

/// Max elementwise |channel - decomp_to_ptm(d)|.
double verify_decomposition(const Ptm &channel, const StabilizerDecomposition &d);

}  // namespace ncsim

#endif
