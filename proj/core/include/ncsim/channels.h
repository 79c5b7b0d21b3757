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

#ifndef NCSIM_CHANNELS_H
#define NCSIM_CHANNELS_H

#include <string>
#include <variant>
#include <vector>

#include "ncsim/clifford.h"
#include "ncsim/pauli.h"
#include "ncsim/ptm.h"

namespace ncsim {

/// Coefficient comparison tolerance used throughout.
inline constexpr double kCoefficientTolerance = 1e-9;

/// Measure `target`; on outcome -1 apply reset_correction(target). Leaves the
/// register in the +1 eigenspace of target.
struct PauliReset {
    PauliString target;
    bool operator==(const PauliReset &other) const = default;
};

using StabilizerChannelTerm = std::variant<CliffordAction, PauliReset>;

/// The fixed Clifford N_P applied after a -1 outcome when resetting P: a
/// single-qubit Pauli on the first non-identity qubit of P that anticommutes
/// with P (X when that letter is Z or Y, Z when it is X). Throws for P = I.
PauliString reset_correction(const PauliString &target);

size_t term_qubits(const StabilizerChannelTerm &term);
std::string term_str(const StabilizerChannelTerm &term);
Ptm term_to_ptm(const StabilizerChannelTerm &term);

struct WeightedTerm {
    double q;
    StabilizerChannelTerm term;
};

/// Quasiprobability mixture chi = sum_i q_i S_i of stabilizer channels.
struct StabilizerDecomposition {
    size_t num_qubits = 0;
    std::vector<WeightedTerm> terms;
};

Ptm decomp_to_ptm(const StabilizerDecomposition &d);
double negativity(const StabilizerDecomposition &d);
double one_norm(const StabilizerDecomposition &d);
double coefficient_sum(const StabilizerDecomposition &d);

/// Sums coefficients of identical terms (first-occurrence order) and drops
/// terms whose merged |q| is at most prune_tol.
StabilizerDecomposition merge_terms(const StabilizerDecomposition &d, double prune_tol = 0.0);

/// Term-by-term tensor product of two Clifford-only decompositions (a on the
/// low qubits). Throws std::invalid_argument if either contains a reset.
StabilizerDecomposition tensor_product(const StabilizerDecomposition &a, const StabilizerDecomposition &b);

StabilizerDecomposition make_identity_channel(size_t num_qubits);
StabilizerDecomposition make_clifford_channel(const CliffordAction &action);
StabilizerDecomposition make_pauli_reset_channel(const PauliString &target);
/// Non-selective measurement of p: (rho + p rho p) / 2.
StabilizerDecomposition make_pauli_dephasing(const PauliString &p);

/// Z_theta = diag(1, e^{i theta}) as {I, Z, S} with the least-negativity
/// coefficients (minimal for 0 <= theta <= pi/4).
StabilizerDecomposition make_rotation_z(double theta);
StabilizerDecomposition make_t_gate();
/// Nonnegative approximation (1 - sin theta) I + sin theta S. Biased on purpose.
StabilizerDecomposition make_rotation_z_positive_approx(double theta);
/// Amplitude damping as {I, Z, reset(+Z)}. Throws for gamma outside [0, 1].
StabilizerDecomposition make_amplitude_damping(double gamma);
/// (1-p) I + p/3 (X + Y + Z). Throws for p outside [0, 3/4].
StabilizerDecomposition make_depolarizing(double p);

std::vector<Eigen::MatrixXcd> kraus_rotation_z(double theta);
std::vector<Eigen::MatrixXcd> kraus_rotation_z_positive_approx(double theta);
std::vector<Eigen::MatrixXcd> kraus_amplitude_damping(double gamma);
std::vector<Eigen::MatrixXcd> kraus_depolarizing(double p);

/// A channel referenced by name, e.g. depolarizing(0.001).
struct ChannelSpec {
    std::string name;
    std::vector<double> params;
    bool operator==(const ChannelSpec &other) const = default;
    std::string str() const;
};

/// Built-in names: identity, t, rotation_z(theta), rotation_z_positive(theta),
/// amplitude_damping(gamma), depolarizing(p). Throws for unknown names or
/// wrong parameter counts.
StabilizerDecomposition make_named_channel(const ChannelSpec &spec);
std::vector<Eigen::MatrixXcd> named_channel_kraus(const ChannelSpec &spec);

}  // namespace ncsim

#endif
