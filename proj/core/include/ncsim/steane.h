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

#ifndef NCSIM_STEANE_H
#define NCSIM_STEANE_H

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ncsim/circuit.h"

namespace ncsim {

inline constexpr size_t kSteaneDataQubits = 7;
inline constexpr size_t kSteaneAncillas = 4;
inline constexpr size_t kSteaneQubits = kSteaneDataQubits + kSteaneAncillas;
inline constexpr size_t kSteaneSyndromes = 6;
inline constexpr size_t kSteaneInputs = 6;
/// Registry name of the channel placed at every error location.
inline constexpr const char *kSteaneNoiseName = "e";

/// Data qubits 0..6, ancillas 7..10. Syndromes 1-3 measure the Z-type
/// generators (detecting X errors), syndromes 4-6 the X-type generators.
struct SteaneLayout {
    /// Supports of the three check sets, shared by both generator types.
    std::array<std::array<size_t, 4>, 3> supports;
    /// Z-type then X-type generators, as 7-qubit strings.
    std::vector<PauliString> generators;
    PauliString logical_x;
    PauliString logical_z;
    /// Data qubit flagged by each 3-bit syndrome (bit k = check k), or -1.
    std::array<int, 8> lookup;
};

const SteaneLayout &steane_layout();

/// 7 qubits; the input state sits on qubit 6. Noiseless.
Circuit build_encoding_circuit();
/// Logical identity on the 7 data qubits followed by an error location on each.
Circuit build_noop_circuit();
/// The six extraction circuits on 11 qubits, each ending in four mr
/// operations; error locations are noise instructions named kSteaneNoiseName.
std::vector<Circuit> build_syndrome_circuits();
/// Copy with every noise instruction removed.
Circuit strip_noise(const Circuit &c);

/// 3-bit syndrome of a 7-qubit Pauli error: bits of the Z-type checks
/// (anticommuting with X parts) and of the X-type checks.
std::pair<uint8_t, uint8_t> error_syndrome(const PauliString &error);
/// Correction for the Z-type syndrome bits (X fixes) and X-type bits (Z fixes).
PauliString decode_syndrome(uint8_t z_checks, uint8_t x_checks);

/// Gates preparing input k on a fresh |0>: Z+, Z-, X+, X-, Y+, Y-.
std::vector<Gate> steane_input_gates(size_t input);
const char *steane_input_name(size_t input);
/// 11-qubit tableau holding the noiselessly encoded input with ancillas in |0>.
Tableau steane_encoded_state(size_t input);

/// Applies `error` (7-qubit) to the encoded input, runs one noiseless
/// correction round and returns the overlap with the ideal encoded state.
double steane_correction_fidelity(size_t input, const PauliString &error);

struct SteaneShot {
    double weight = 1;
    double fidelity = 1;
};

/// Encoded input, noisy logical identity, `rounds` noisy extraction rounds
/// with per-type majority vote, one noiseless correction round, then the
/// overlap with the ideal encoded state.
class SteaneExperiment {
   public:
    SteaneExperiment(const ChannelSpec &noise, size_t rounds = 3);

    size_t rounds() const { return rounds_; }
    size_t num_error_locations() const { return num_error_locations_; }
    /// Product of the one-norms of every error location.
    double one_norm_product() const { return executor_.one_norm_product(); }
    SteaneShot run(size_t input, SplitMix64 &rng) const;
    /// Per-shot value w * (1 - f) for one input.
    EstimatorResult estimate_input(size_t input, uint64_t shots, uint64_t seed, size_t workers = 1) const;

   private:
    size_t rounds_;
    size_t num_error_locations_ = 0;
    DynamicExecutor executor_;
    std::vector<Tableau> encoded_;
    std::vector<StabilizerProjector> ideal_;
};

struct SteaneEstimate {
    /// Average over the six inputs with combined standard error.
    EstimatorResult average;
    std::array<EstimatorResult, kSteaneInputs> per_input;
};

/// `shots` circuit realizations in total, split evenly over the six inputs
/// (at least 12). Throws std::invalid_argument for
/// models other than depolarizing and amplitude_damping.
SteaneEstimate logical_infidelity(
    const ChannelSpec &noise, uint64_t shots, uint64_t seed, size_t rounds = 3, size_t workers = 1);

/// 2p/3 for depolarizing(p); 1 - (2F + 1)/3 with F = (1 + sqrt(1 - g))^2 / 4
/// for amplitude_damping(g).
double physical_infidelity(const ChannelSpec &noise);

struct ThresholdPoint {
    double strength = 0;
    double physical_infidelity = 0;
    double logical_infidelity = 0;
    double std_error = 0;
    uint64_t shots = 0;
};

struct Crossing {
    /// Physical infidelity where the logical curve meets the physical one.
    double physical_infidelity = 0;
    /// True when no bracketing pair exists and a log-log line fit was extended.
    bool extrapolated = false;
};

/// Crossing of log(logical) and log(physical) by log-log interpolation over
/// points with positive values; nullopt when fewer than two are usable.
std::optional<Crossing> estimate_crossing(const std::vector<ThresholdPoint> &points);

struct ThresholdSweep {
    std::vector<ThresholdPoint> points;
    std::optional<Crossing> crossing;
};

/// `noise_name` is depolarizing or amplitude_damping; needs >= 2 strengths.
ThresholdSweep threshold_sweep(
    const std::string &noise_name, const std::vector<double> &strengths, uint64_t shots, uint64_t seed,
    size_t rounds = 3, size_t workers = 1);

}  // namespace ncsim

#endif
