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

#ifndef NCSIM_SAMPLER_H
#define NCSIM_SAMPLER_H

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "ncsim/channels.h"
#include "ncsim/estimation.h"
#include "ncsim/tableau.h"

namespace ncsim {

struct ChannelApplication {
    StabilizerDecomposition channel;
    std::vector<size_t> qubits;
};

inline constexpr size_t kFinalState = std::numeric_limits<size_t>::max();

/// Projector onto the +1 eigenspace of all generators, evaluated after the
/// first `after` channels (kFinalState: after all of them).
struct Observable {
    std::vector<PauliString> generators;
    size_t after = kFinalState;
};

struct SimulationPlan {
    size_t num_qubits = 0;
    /// Stabilizer generators of the input state; empty means |0...0>.
    std::vector<PauliString> initial;
    std::vector<ChannelApplication> channels;
    std::vector<Observable> observables;
};

/// Throws std::invalid_argument describing the first problem found.
void validate_plan(const SimulationPlan &plan);
std::vector<PauliString> zero_state_generators(size_t num_qubits);
/// Product of the first `upto` channel 1-norms, multiplied in channel order.
double one_norm_product(const SimulationPlan &plan, size_t upto = kFinalState);

/// |q_i| / sum_j |q_j|. Throws for an empty or all-zero decomposition.
std::vector<double> term_probabilities(const StabilizerDecomposition &d);

/// A decomposition prepared for sampling on a fixed register: zero terms
/// dropped, terms embedded into the full register, cumulative table built.
class SampledChannel {
   public:
    SampledChannel(const StabilizerDecomposition &d, std::span<const size_t> qubits, size_t num_qubits);

    double one_norm() const { return one_norm_; }
    size_t num_terms() const { return terms_.size(); }
    /// Samples a term (no draw when only one term survives), applies it and
    /// returns the sign of its coefficient.
    int apply(Tableau &t, SplitMix64 &rng) const;

   private:
    enum class Kind : uint8_t { Identity, Gate, Pauli, Table, Reset };
    struct Term {
        Kind kind = Kind::Identity;
        int sign = 1;
        Gate gate = Gate::I;
        PauliString pauli;
        PauliString correction;
        size_t table = 0;
    };
    void apply_term(const Term &term, Tableau &t, SplitMix64 &rng) const;

    std::vector<size_t> qubits_;
    std::vector<Term> terms_;
    std::vector<CliffordTable> tables_;
    std::vector<double> cumulative_;
    double one_norm_ = 0;
};

class PreparedPlan {
   public:
    explicit PreparedPlan(const SimulationPlan &plan);

    size_t num_observables() const { return projectors_.size(); }
    double one_norm_product(size_t observable) const { return weights_[after_[observable]]; }
    /// One realization: w * f per observable, written into `values`.
    void run_shot(SplitMix64 &rng, std::span<double> values) const;

   private:
    Tableau initial_;
    std::vector<SampledChannel> channels_;
    std::vector<StabilizerProjector> projectors_;
    std::vector<size_t> after_;
    // weights_[k]: product of the first k one-norms.
    std::vector<double> weights_;
};

std::vector<double> run_shot(const SimulationPlan &plan, SplitMix64 &rng);

/// Unbiased estimates for every observable; deterministic in `seed` for any
/// worker count. Requires shots >= 2.
std::vector<EstimatorResult> estimate(
    const SimulationPlan &plan, uint64_t shots, uint64_t seed, size_t workers = 1);

/// Single qubit from |+> rotated about Z by pi / (2 steps) per step; observable
/// k (k = 0..steps-1) is the |+i> projector after k + 1 rotations. The
/// positive variant uses the nonnegative two-term approximation.
SimulationPlan rotation_demo_plan(size_t steps, bool positive_approximation = false);

/// ceil(g_in^2 g_obs^2 g_ch^(2K) / (4 eps^2)).
uint64_t shots_for_variance(double g_in, double g_obs, double g_ch, uint64_t k, double eps);
/// ceil(g_in^2 g_obs^2 g_ch^(2K) / (2 eps^2) * ln(2 / delta)).
uint64_t shots_for_hoeffding(double g_in, double g_obs, double g_ch, uint64_t k, double eps, double delta);

}  // namespace ncsim

#endif
