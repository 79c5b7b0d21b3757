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

#include "ncsim/sampler.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ncsim {

namespace {

PauliString embed(const PauliString &local, std::span<const size_t> qubits, size_t n) {
    PauliString out(n);
    for (size_t k = 0; k < qubits.size(); k++) {
        out.set_letter(qubits[k], local.letter(k));
    }
    out.set_phase(local.phase());
    return out;
}

double ceil_with_slack(double x) {
    // Absorbs rounding in exact-integer cases such as 1 / (4 * 0.01^2).
    return std::ceil(x * (1 - 1e-12));
}

}  // namespace

void validate_plan(const SimulationPlan &plan) {
    size_t n = plan.num_qubits;
    if (n == 0) {
        throw std::invalid_argument("plan has no qubits");
    }
    if (!plan.initial.empty()) {
        if (plan.initial.size() != n) {
            throw std::invalid_argument("initial state needs exactly n stabilizer generators");
        }
        StabilizerProjector check(plan.initial);
    }
    for (size_t k = 0; k < plan.channels.size(); k++) {
        const auto &ch = plan.channels[k];
        if (ch.qubits.size() != ch.channel.num_qubits) {
            throw std::invalid_argument("channel " + std::to_string(k) + " qubit tag does not match its size");
        }
        for (size_t i = 0; i < ch.qubits.size(); i++) {
            if (ch.qubits[i] >= n) {
                throw std::invalid_argument("channel " + std::to_string(k) + " acts on a qubit out of range");
            }
            for (size_t j = 0; j < i; j++) {
                if (ch.qubits[i] == ch.qubits[j]) {
                    throw std::invalid_argument("channel " + std::to_string(k) + " repeats a qubit");
                }
            }
        }
        if (one_norm(ch.channel) == 0.0) {
            throw std::invalid_argument("channel " + std::to_string(k) + " has no nonzero terms");
        }
    }
    for (const auto &obs : plan.observables) {
        if (obs.generators.empty() || obs.generators[0].num_qubits() != n) {
            throw std::invalid_argument("observable generators do not match the register size");
        }
        StabilizerProjector check(obs.generators);
    }
}

std::vector<PauliString> zero_state_generators(size_t num_qubits) {
    std::vector<PauliString> out;
    for (size_t q = 0; q < num_qubits; q++) {
        out.push_back(PauliString::single(num_qubits, q, 'Z'));
    }
    return out;
}

double one_norm_product(const SimulationPlan &plan, size_t upto) {
    double g = 1.0;
    size_t end = std::min(upto, plan.channels.size());
    for (size_t k = 0; k < end; k++) {
        g *= one_norm(plan.channels[k].channel);
    }
    return g;
}

std::vector<double> term_probabilities(const StabilizerDecomposition &d) {
    if (d.terms.empty()) {
        throw std::invalid_argument("empty decomposition");
    }
    double g = one_norm(d);
    if (g == 0.0) {
        throw std::invalid_argument("all-zero decomposition");
    }
    std::vector<double> p;
    for (const auto &t : d.terms) {
        p.push_back(std::abs(t.q) / g);
    }
    return p;
}

SampledChannel::SampledChannel(const StabilizerDecomposition &d, std::span<const size_t> qubits, size_t num_qubits)
    : qubits_(qubits.begin(), qubits.end()) {
    if (qubits.size() != d.num_qubits) {
        throw std::invalid_argument("channel qubit list does not match its size");
    }
    one_norm_ = ncsim::one_norm(d);
    if (one_norm_ == 0.0) {
        throw std::invalid_argument("all-zero decomposition");
    }
    static const Gate kNamed[] = {Gate::H, Gate::S, Gate::X, Gate::Y, Gate::Z};
    double acc = 0;
    for (const auto &wt : d.terms) {
        if (wt.q == 0.0) {
            continue;
        }
        Term term;
        term.kind = Kind::Identity;
        term.sign = wt.q < 0 ? -1 : 1;
        if (const auto *c = std::get_if<CliffordAction>(&wt.term)) {
            if (c->is_identity()) {
                term.kind = Kind::Identity;
            } else if (c->is_pauli()) {
                term.kind = Kind::Pauli;
                term.pauli = embed(c->as_pauli(), qubits, num_qubits);
            } else {
                term.kind = Kind::Table;
                if (c->num_qubits() == 1) {
                    for (Gate g : kNamed) {
                        if (*c == CliffordAction::from_gate(g)) {
                            term.kind = Kind::Gate;
                            term.gate = g;
                        }
                    }
                } else if (c->num_qubits() == 2 && *c == CliffordAction::from_gate(Gate::CNOT)) {
                    term.kind = Kind::Gate;
                    term.gate = Gate::CNOT;
                }
                if (term.kind == Kind::Table) {
                    term.table = tables_.size();
                    tables_.emplace_back(*c);
                }
            }
        } else {
            const auto &r = std::get<PauliReset>(wt.term);
            term.kind = Kind::Reset;
            term.pauli = embed(r.target, qubits, num_qubits);
            // The correction is fixed in the channel's local frame.
            term.correction = embed(reset_correction(r.target), qubits, num_qubits);
        }
        acc += std::abs(wt.q);
        terms_.push_back(std::move(term));
        cumulative_.push_back(acc / one_norm_);
    }
    cumulative_.back() = 1.0;
    bool positive = std::all_of(terms_.begin(), terms_.end(), [](const Term &t) { return t.sign > 0; });
    if (positive && std::abs(one_norm_ - 1.0) <= kCoefficientTolerance) {
        one_norm_ = 1.0;
    }
}

void SampledChannel::apply_term(const Term &term, Tableau &t, SplitMix64 &rng) const {
    switch (term.kind) {
        case Kind::Identity:
            break;
        case Kind::Gate:
            t.apply_gate(term.gate, std::span<const size_t>(qubits_.data(), gate_arity(term.gate)));
            break;
        case Kind::Pauli:
            t.apply_pauli(term.pauli);
            break;
        case Kind::Table:
            t.apply_clifford(tables_[term.table], qubits_);
            break;
        case Kind::Reset:
            if (t.measure(term.pauli, rng).outcome < 0) {
                t.apply_pauli(term.correction);
            }
            break;
    }
}

int SampledChannel::apply(Tableau &t, SplitMix64 &rng) const {
    size_t index = 0;
    if (terms_.size() > 1) {
        double u = rng.uniform();
        index = static_cast<size_t>(std::upper_bound(cumulative_.begin(), cumulative_.end(), u) - cumulative_.begin());
        index = std::min(index, terms_.size() - 1);
    }
    const Term &term = terms_[index];
    apply_term(term, t, rng);
    return term.sign;
}

namespace {

Tableau initial_tableau(const SimulationPlan &plan) {
    validate_plan(plan);
    if (plan.initial.empty()) {
        return Tableau(plan.num_qubits);
    }
    return Tableau::from_stabilizers(plan.initial);
}

}  // namespace

PreparedPlan::PreparedPlan(const SimulationPlan &plan) : initial_(initial_tableau(plan)) {
    weights_.push_back(1.0);
    for (const auto &ch : plan.channels) {
        channels_.emplace_back(ch.channel, ch.qubits, plan.num_qubits);
        weights_.push_back(weights_.back() * channels_.back().one_norm());
    }
    for (const auto &obs : plan.observables) {
        projectors_.emplace_back(obs.generators);
        after_.push_back(std::min(obs.after, plan.channels.size()));
    }
}

void PreparedPlan::run_shot(SplitMix64 &rng, std::span<double> values) const {
    Tableau t = initial_;
    int sign = 1;
    for (size_t k = 0; k <= channels_.size(); k++) {
        for (size_t o = 0; o < projectors_.size(); o++) {
            if (after_[o] == k) {
                values[o] = sign * weights_[k] * t.projection_probability(projectors_[o]);
            }
        }
        if (k < channels_.size()) {
            sign *= channels_[k].apply(t, rng);
        }
    }
}

std::vector<double> run_shot(const SimulationPlan &plan, SplitMix64 &rng) {
    PreparedPlan prepared(plan);
    std::vector<double> values(prepared.num_observables());
    prepared.run_shot(rng, values);
    return values;
}

std::vector<EstimatorResult> estimate(const SimulationPlan &plan, uint64_t shots, uint64_t seed, size_t workers) {
    if (shots < 2) {
        throw std::invalid_argument("estimate needs at least 2 shots");
    }
    PreparedPlan prepared(plan);
    auto stats = parallel_estimate(
        prepared.num_observables(), shots, seed, workers,
        [&](uint64_t, SplitMix64 &rng, std::span<double> values) { prepared.run_shot(rng, values); });
    std::vector<EstimatorResult> out;
    for (size_t o = 0; o < stats.size(); o++) {
        out.push_back(EstimatorResult::from_stats(stats[o], prepared.one_norm_product(o)));
    }
    return out;
}

SimulationPlan rotation_demo_plan(size_t steps, bool positive_approximation) {
    if (steps == 0) {
        throw std::invalid_argument("rotation demo needs at least one step");
    }
    double theta = std::numbers::pi / (2.0 * static_cast<double>(steps));
    StabilizerDecomposition step =
        positive_approximation ? make_rotation_z_positive_approx(theta) : make_rotation_z(theta);
    SimulationPlan plan;
    plan.num_qubits = 1;
    plan.initial = {PauliString::from_text("+X")};
    for (size_t k = 0; k < steps; k++) {
        plan.channels.push_back(ChannelApplication{step, {0}});
        plan.observables.push_back(Observable{{PauliString::from_text("+Y")}, k + 1});
    }
    return plan;
}

uint64_t shots_for_variance(double g_in, double g_obs, double g_ch, uint64_t k, double eps) {
    if (!(eps > 0)) {
        throw std::invalid_argument("eps must be positive");
    }
    if (g_in < 1 || g_obs < 1 || g_ch < 1) {
        throw std::invalid_argument("one-norms of trace-preserving decompositions are at least 1");
    }
    double scale = g_in * g_in * g_obs * g_obs * std::pow(g_ch * g_ch, static_cast<double>(k));
    return static_cast<uint64_t>(ceil_with_slack(scale / (4 * eps * eps)));
}

uint64_t shots_for_hoeffding(double g_in, double g_obs, double g_ch, uint64_t k, double eps, double delta) {
    if (!(eps > 0)) {
        throw std::invalid_argument("eps must be positive");
    }
    if (!(delta > 0 && delta < 1)) {
        throw std::invalid_argument("delta must lie in (0, 1)");
    }
    if (g_in < 1 || g_obs < 1 || g_ch < 1) {
        throw std::invalid_argument("one-norms of trace-preserving decompositions are at least 1");
    }
    double scale = g_in * g_in * g_obs * g_obs * std::pow(g_ch * g_ch, static_cast<double>(k));
    return static_cast<uint64_t>(ceil_with_slack(scale / (2 * eps * eps) * std::log(2 / delta)));
}

}  // namespace ncsim
