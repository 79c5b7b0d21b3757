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

#include "ncsim/steane.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ncsim {

namespace {

constexpr size_t kAncilla0 = kSteaneDataQubits;
constexpr size_t kBitsPerRound = kSteaneSyndromes * kSteaneAncillas;

const std::array<std::array<size_t, 4>, 3> kSupports = {{{0, 3, 5, 6}, {1, 3, 4, 6}, {2, 3, 4, 5}}};

size_t ancilla(size_t k) {
    return kAncilla0 + k;
}

Instruction gate(Gate g, std::vector<size_t> qubits) {
    return GateOp{g, std::move(qubits)};
}

Instruction error_location(std::vector<size_t> qubits) {
    return NoiseOp{ChannelSpec{kSteaneNoiseName, {}}, std::move(qubits)};
}

PauliString checks_string(size_t check, char letter) {
    PauliString p(kSteaneDataQubits);
    for (size_t q : kSupports[check]) {
        p.set_letter(q, letter);
    }
    return p;
}

PauliString widen(const PauliString &p, size_t num_qubits) {
    PauliString out(num_qubits);
    for (size_t q = 0; q < p.num_qubits(); q++) {
        out.set_letter(q, p.letter(q));
    }
    out.set_phase(p.phase());
    return out;
}

void prepare_cat(Circuit &c) {
    c.append(gate(Gate::H, {ancilla(1)}), true);
    c.append(gate(Gate::CNOT, {ancilla(1), ancilla(2)}), true);
    c.append(gate(Gate::CNOT, {ancilla(1), ancilla(0)}), true);
    c.append(gate(Gate::CNOT, {ancilla(2), ancilla(3)}));
}

std::vector<size_t> all_ancillas() {
    return {ancilla(0), ancilla(1), ancilla(2), ancilla(3)};
}

Circuit z_check_circuit(size_t check) {
    Circuit c{kSteaneQubits, {}};
    prepare_cat(c);
    for (size_t k = 0; k < kSteaneAncillas; k++) {
        c.append(gate(Gate::H, {ancilla(k)}), k == 0);
    }
    c.append(error_location(all_ancillas()));
    for (size_t k = 0; k < kSteaneAncillas; k++) {
        c.append(gate(Gate::CNOT, {kSupports[check][k], ancilla(k)}), k == 0);
    }
    std::vector<size_t> touched(kSupports[check].begin(), kSupports[check].end());
    for (size_t k = 0; k < kSteaneAncillas; k++) {
        touched.push_back(ancilla(k));
    }
    c.append(error_location(touched), true);
    for (size_t k = 0; k < kSteaneAncillas; k++) {
        c.append(MeasureResetOp{ancilla(k), k}, k == 0);
    }
    return c;
}

Circuit x_check_circuit(size_t check) {
    Circuit c{kSteaneQubits, {}};
    prepare_cat(c);
    for (size_t k = 0; k < kSteaneAncillas; k++) {
        c.append(gate(Gate::CNOT, {ancilla(k), kSupports[check][k]}), k == 0);
    }
    std::vector<size_t> touched(kSupports[check].begin(), kSupports[check].end());
    for (size_t k = 0; k < kSteaneAncillas; k++) {
        touched.push_back(ancilla(k));
    }
    c.append(error_location(touched), true);
    for (size_t k = 0; k < kSteaneAncillas; k++) {
        c.append(gate(Gate::H, {ancilla(k)}), k == 0);
    }
    c.append(error_location(all_ancillas()));
    for (size_t k = 0; k < kSteaneAncillas; k++) {
        c.append(MeasureResetOp{ancilla(k), k}, k == 0);
    }
    return c;
}

/// Appends `src` as new steps, shifting classical bits by `cbit_offset`.
void append_circuit(Circuit &dst, const Circuit &src, size_t cbit_offset) {
    for (const auto &step : src.steps) {
        bool first = true;
        for (Instruction inst : step) {
            if (auto *m = std::get_if<MeasureResetOp>(&inst)) {
                m->cbit += cbit_offset;
            } else if (auto *p = std::get_if<MeasurePauliOp>(&inst)) {
                p->cbit += cbit_offset;
            }
            dst.append(std::move(inst), first);
            first = false;
        }
    }
}

size_t count_error_locations(const Circuit &c) {
    size_t total = 0;
    for (const auto &step : c.steps) {
        for (const auto &inst : step) {
            if (const auto *n = std::get_if<NoiseOp>(&inst)) {
                total += n->qubits.size();
            }
        }
    }
    return total;
}

/// Syndrome value of one check type in one round from the recorded bits.
uint8_t round_syndrome(const DynamicResult &record, size_t round, size_t type) {
    uint8_t value = 0;
    for (size_t k = 0; k < 3; k++) {
        size_t base = (round * kSteaneSyndromes + type * 3 + k) * kSteaneAncillas;
        uint8_t parity = 0;
        for (size_t a = 0; a < kSteaneAncillas; a++) {
            parity ^= record.bits[base + a];
        }
        value |= static_cast<uint8_t>(parity << k);
    }
    return value;
}

/// Value shared by a strict majority of the rounds in [first, first + count).
std::optional<uint8_t> majority_syndrome(const DynamicResult &record, size_t first, size_t count, size_t type) {
    std::array<size_t, 8> votes{};
    for (size_t r = first; r < first + count; r++) {
        votes[round_syndrome(record, r, type)]++;
    }
    for (uint8_t v = 0; v < 8; v++) {
        if (2 * votes[v] > count) {
            return v;
        }
    }
    return std::nullopt;
}

std::vector<Instruction> correction_ops(const DynamicResult &record, size_t first, size_t count) {
    const auto &layout = steane_layout();
    std::vector<Instruction> ops;
    for (size_t type = 0; type < 2; type++) {
        auto s = majority_syndrome(record, first, count, type);
        if (!s || layout.lookup[*s] < 0) {
            continue;
        }
        ops.push_back(gate(type == 0 ? Gate::X : Gate::Z, {static_cast<size_t>(layout.lookup[*s])}));
    }
    return ops;
}

void require_steane_noise(const ChannelSpec &noise) {
    if (noise.name != "depolarizing" && noise.name != "amplitude_damping") {
        throw std::invalid_argument("noise model must be depolarizing or amplitude_damping, got '" + noise.name + "'");
    }
    if (noise.params.size() != 1) {
        throw std::invalid_argument(noise.name + " takes one parameter");
    }
}

/// Noisy logical identity, `rounds` noisy extraction rounds, one noiseless round.
Circuit experiment_circuit(size_t rounds) {
    if (rounds == 0) {
        throw std::invalid_argument("at least one noisy extraction round is needed");
    }
    Circuit c{kSteaneQubits, {}};
    Circuit noop = build_noop_circuit();
    noop.num_qubits = kSteaneQubits;
    append_circuit(c, noop, 0);
    auto syndromes = build_syndrome_circuits();
    for (size_t r = 0; r <= rounds; r++) {
        for (size_t s = 0; s < kSteaneSyndromes; s++) {
            const Circuit &sc = syndromes[s];
            append_circuit(c, r < rounds ? sc : strip_noise(sc), (r * kSteaneSyndromes + s) * kSteaneAncillas);
        }
    }
    return c;
}

ChannelRegistry noise_registry(const ChannelSpec &noise) {
    StabilizerDecomposition d = make_named_channel(noise);
    if (d.num_qubits != 1) {
        throw std::invalid_argument("the error channel must act on one qubit");
    }
    ChannelRegistry registry;
    registry.add(kSteaneNoiseName, std::move(d));
    return registry;
}

StabilizerProjector ideal_projector(const Tableau &t) {
    std::vector<PauliString> gens;
    for (size_t k = 0; k < t.num_qubits(); k++) {
        gens.push_back(t.stabilizer(k));
    }
    return StabilizerProjector(std::move(gens));
}

}  // namespace

const SteaneLayout &steane_layout() {
    static const SteaneLayout layout = [] {
        SteaneLayout l;
        l.supports = kSupports;
        for (size_t k = 0; k < 3; k++) {
            l.generators.push_back(checks_string(k, 'Z'));
        }
        for (size_t k = 0; k < 3; k++) {
            l.generators.push_back(checks_string(k, 'X'));
        }
        l.logical_x = PauliString::from_text("+IIIIXXX");
        l.logical_z = PauliString::from_text("+ZZIIIIZ");
        l.lookup.fill(-1);
        for (size_t q = 0; q < kSteaneDataQubits; q++) {
            uint8_t s = 0;
            for (size_t k = 0; k < 3; k++) {
                auto &sup = kSupports[k];
                if (std::find(sup.begin(), sup.end(), q) != sup.end()) {
                    s |= static_cast<uint8_t>(1 << k);
                }
            }
            l.lookup[s] = static_cast<int>(q);
        }
        return l;
    }();
    return layout;
}

Circuit build_encoding_circuit() {
    Circuit c{kSteaneDataQubits, {}};
    c.append(gate(Gate::H, {0}), true);
    c.append(gate(Gate::H, {1}));
    c.append(gate(Gate::H, {2}));
    const std::array<std::pair<size_t, size_t>, 11> cnots = {{
        {6, 5},
        {6, 4},
        {0, 3},
        {0, 5},
        {0, 6},
        {1, 3},
        {1, 4},
        {1, 6},
        {2, 3},
        {2, 4},
        {2, 5},
    }};
    for (auto [control, target] : cnots) {
        c.append(gate(Gate::CNOT, {control, target}), true);
    }
    return c;
}

Circuit build_noop_circuit() {
    Circuit c{kSteaneDataQubits, {}};
    std::vector<size_t> data;
    for (size_t q = 0; q < kSteaneDataQubits; q++) {
        c.append(gate(Gate::I, {q}));
        data.push_back(q);
    }
    c.append(error_location(data), true);
    return c;
}

std::vector<Circuit> build_syndrome_circuits() {
    std::vector<Circuit> out;
    for (size_t k = 0; k < 3; k++) {
        out.push_back(z_check_circuit(k));
    }
    for (size_t k = 0; k < 3; k++) {
        out.push_back(x_check_circuit(k));
    }
    return out;
}

Circuit strip_noise(const Circuit &c) {
    Circuit out{c.num_qubits, {}};
    for (const auto &step : c.steps) {
        std::vector<Instruction> kept;
        for (const auto &inst : step) {
            if (!std::holds_alternative<NoiseOp>(inst)) {
                kept.push_back(inst);
            }
        }
        if (!kept.empty()) {
            out.steps.push_back(std::move(kept));
        }
    }
    return out;
}

std::pair<uint8_t, uint8_t> error_syndrome(const PauliString &error) {
    if (error.num_qubits() != kSteaneDataQubits) {
        throw std::invalid_argument("error must act on the 7 data qubits");
    }
    const auto &layout = steane_layout();
    uint8_t z_checks = 0;
    uint8_t x_checks = 0;
    for (size_t k = 0; k < 3; k++) {
        if (comm_sign(layout.generators[k], error) < 0) {
            z_checks |= static_cast<uint8_t>(1 << k);
        }
        if (comm_sign(layout.generators[3 + k], error) < 0) {
            x_checks |= static_cast<uint8_t>(1 << k);
        }
    }
    return {z_checks, x_checks};
}

PauliString decode_syndrome(uint8_t z_checks, uint8_t x_checks) {
    if (z_checks > 7 || x_checks > 7) {
        throw std::invalid_argument("syndromes have three bits");
    }
    const auto &layout = steane_layout();
    PauliString p(kSteaneDataQubits);
    if (int q = layout.lookup[z_checks]; q >= 0) {
        p.set_letter(static_cast<size_t>(q), 'X');
    }
    if (int q = layout.lookup[x_checks]; q >= 0) {
        size_t r = static_cast<size_t>(q);
        p.set_letter(r, p.letter(r) == 'X' ? 'Y' : 'Z');
    }
    return p;
}

std::vector<Gate> steane_input_gates(size_t input) {
    switch (input) {
        case 0:
            return {};
        case 1:
            return {Gate::X};
        case 2:
            return {Gate::H};
        case 3:
            return {Gate::X, Gate::H};
        case 4:
            return {Gate::H, Gate::S};
        case 5:
            return {Gate::H, Gate::S, Gate::Z};
    }
    throw std::out_of_range("input index must be below 6");
}

const char *steane_input_name(size_t input) {
    static const char *names[] = {"Z+", "Z-", "X+", "X-", "Y+", "Y-"};
    if (input >= kSteaneInputs) {
        throw std::out_of_range("input index must be below 6");
    }
    return names[input];
}

Tableau steane_encoded_state(size_t input) {
    Tableau t(kSteaneQubits);
    for (Gate g : steane_input_gates(input)) {
        t.apply_gate(g, std::array<size_t, 1>{kSteaneDataQubits - 1});
    }
    for (const auto &step : build_encoding_circuit().steps) {
        for (const auto &inst : step) {
            const auto &g = std::get<GateOp>(inst);
            t.apply_gate(g.gate, g.qubits);
        }
    }
    return t;
}

double steane_correction_fidelity(size_t input, const PauliString &error) {
    Tableau ideal = steane_encoded_state(input);
    Tableau t = ideal;
    t.apply_pauli(widen(error, kSteaneQubits));
    Circuit round{kSteaneQubits, {}};
    auto syndromes = build_syndrome_circuits();
    for (size_t s = 0; s < kSteaneSyndromes; s++) {
        append_circuit(round, strip_noise(syndromes[s]), s * kSteaneAncillas);
    }
    FeedbackHandler handler = [](const DynamicResult &record) -> std::vector<Instruction> {
        if (record.num_measurements != kBitsPerRound) {
            return {};
        }
        return correction_ops(record, 0, 1);
    };
    SplitMix64 rng(kDefaultSeed);
    execute_dynamic(round, t, rng, handler);
    return t.projection_probability(ideal_projector(ideal));
}

SteaneExperiment::SteaneExperiment(const ChannelSpec &noise, size_t rounds)
    : rounds_(rounds), executor_(experiment_circuit(rounds), noise_registry(noise)) {
    num_error_locations_ = count_error_locations(experiment_circuit(rounds));
    for (size_t i = 0; i < kSteaneInputs; i++) {
        encoded_.push_back(steane_encoded_state(i));
        ideal_.push_back(ideal_projector(encoded_.back()));
    }
}

SteaneShot SteaneExperiment::run(size_t input, SplitMix64 &rng) const {
    if (input >= kSteaneInputs) {
        throw std::out_of_range("input index must be below 6");
    }
    size_t rounds = rounds_;
    FeedbackHandler handler = [rounds](const DynamicResult &record) -> std::vector<Instruction> {
        if (record.num_measurements == rounds * kBitsPerRound) {
            return correction_ops(record, 0, rounds);
        }
        if (record.num_measurements == (rounds + 1) * kBitsPerRound) {
            return correction_ops(record, rounds, 1);
        }
        return {};
    };
    Tableau t = encoded_[input];
    DynamicResult record = executor_.run(t, rng, handler);
    return SteaneShot{record.weight, t.projection_probability(ideal_[input])};
}

EstimatorResult SteaneExperiment::estimate_input(size_t input, uint64_t shots, uint64_t seed, size_t workers) const {
    if (shots < 2) {
        throw std::invalid_argument("need at least 2 shots");
    }
    auto stats = parallel_estimate(1, shots, seed, workers, [&](uint64_t, SplitMix64 &rng, std::span<double> values) {
        SteaneShot shot = run(input, rng);
        values[0] = shot.weight * (1 - shot.fidelity);
    });
    return EstimatorResult::from_stats(stats[0], one_norm_product());
}

SteaneEstimate logical_infidelity(
    const ChannelSpec &noise, uint64_t shots, uint64_t seed, size_t rounds, size_t workers) {
    require_steane_noise(noise);
    if (shots < 2 * kSteaneInputs) {
        throw std::invalid_argument("need at least 12 shots (2 per input)");
    }
    SteaneExperiment experiment(noise, rounds);
    SteaneEstimate out;
    double mean = 0;
    double var_of_mean = 0;
    for (size_t i = 0; i < kSteaneInputs; i++) {
        uint64_t input_shots = shots / kSteaneInputs + (i < shots % kSteaneInputs ? 1 : 0);
        uint64_t input_seed = mix64(seed ^ mix64(0x9e3779b97f4a7c15ULL * (i + 1)));
        out.per_input[i] = experiment.estimate_input(i, input_shots, input_seed, workers);
        mean += out.per_input[i].mean;
        var_of_mean += out.per_input[i].std_error * out.per_input[i].std_error;
    }
    double k = static_cast<double>(kSteaneInputs);
    out.average.mean = mean / k;
    out.average.std_error = std::sqrt(var_of_mean) / k;
    out.average.shots = shots;
    out.average.sample_variance =
        out.average.std_error * out.average.std_error * static_cast<double>(out.average.shots);
    out.average.one_norm_product = experiment.one_norm_product();
    return out;
}

double physical_infidelity(const ChannelSpec &noise) {
    require_steane_noise(noise);
    double x = noise.params[0];
    if (noise.name == "depolarizing") {
        if (!(x >= 0 && x <= 0.75)) {
            throw std::invalid_argument("depolarizing needs 0 <= p <= 3/4");
        }
        return 2 * x / 3;
    }
    if (!(x >= 0 && x <= 1)) {
        throw std::invalid_argument("amplitude damping needs 0 <= gamma <= 1");
    }
    double root = 1 + std::sqrt(1 - x);
    double process_fidelity = root * root / 4;
    return 1 - (2 * process_fidelity + 1) / 3;
}

std::optional<Crossing> estimate_crossing(const std::vector<ThresholdPoint> &points) {
    std::vector<std::pair<double, double>> curve;
    for (const auto &p : points) {
        if (p.physical_infidelity > 0 && p.logical_infidelity > 0) {
            double x = std::log(p.physical_infidelity);
            curve.push_back({x, std::log(p.logical_infidelity) - x});
        }
    }
    if (curve.size() < 2) {
        return std::nullopt;
    }
    std::sort(curve.begin(), curve.end());
    for (size_t i = 0; i + 1 < curve.size(); i++) {
        auto [x0, d0] = curve[i];
        auto [x1, d1] = curve[i + 1];
        if (d0 == 0) {
            return Crossing{std::exp(x0), false};
        }
        if ((d0 < 0) != (d1 < 0) || d1 == 0) {
            double x = x0 + d0 * (x1 - x0) / (d0 - d1);
            return Crossing{std::exp(x), false};
        }
    }
    double n = static_cast<double>(curve.size());
    double sx = 0, sd = 0, sxx = 0, sxd = 0;
    for (auto [x, d] : curve) {
        sx += x;
        sd += d;
        sxx += x * x;
        sxd += x * d;
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0) {
        return std::nullopt;
    }
    double slope = (n * sxd - sx * sd) / denom;
    double intercept = (sd - slope * sx) / n;
    if (slope == 0) {
        return std::nullopt;
    }
    return Crossing{std::exp(-intercept / slope), true};
}

ThresholdSweep threshold_sweep(
    const std::string &noise_name, const std::vector<double> &strengths, uint64_t shots, uint64_t seed, size_t rounds,
    size_t workers) {
    if (strengths.size() < 2) {
        throw std::invalid_argument("a sweep needs at least two strengths");
    }
    ThresholdSweep sweep;
    for (size_t i = 0; i < strengths.size(); i++) {
        ChannelSpec noise{noise_name, {strengths[i]}};
        SteaneEstimate e = logical_infidelity(noise, shots, mix64(seed + i), rounds, workers);
        sweep.points.push_back(ThresholdPoint{
            strengths[i], physical_infidelity(noise), e.average.mean, e.average.std_error, e.average.shots});
    }
    sweep.crossing = estimate_crossing(sweep.points);
    return sweep;
}

}  // namespace ncsim
