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

#ifndef NCSIM_ESTIMATION_H
#define NCSIM_ESTIMATION_H

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ncsim/rng.h"

namespace ncsim {

/// Count, mean and sum of squared deviations; mergeable.
struct RunningStats {
    uint64_t count = 0;
    double mean = 0;
    double m2 = 0;

    void add(double value) {
        count++;
        double delta = value - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (value - mean);
    }
    void merge(const RunningStats &other);
    /// Unbiased (N - 1) sample variance; 0 for fewer than two samples.
    double sample_variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
};

struct EstimatorResult {
    double mean = 0;
    double sample_variance = 0;
    double std_error = 0;
    uint64_t shots = 0;
    double one_norm_product = 1;

    static EstimatorResult from_stats(const RunningStats &stats, double one_norm_product);
};

/// Shots are processed in fixed blocks of this size.
inline constexpr uint64_t kShotBlock = 1024;

/// Evaluates `shot(index, rng, values)` for every shot index in [0, shots),
/// with rng = stream_rng(seed, index), and reduces the per-output statistics
/// block by block in a fixed pairwise tree. The result does not depend on
/// `workers` (0 selects the hardware concurrency).
using ShotFunction = std::function<void(uint64_t shot, SplitMix64 &rng, std::span<double> values)>;
std::vector<RunningStats> parallel_estimate(
    size_t num_outputs, uint64_t shots, uint64_t seed, size_t workers, const ShotFunction &shot);

size_t resolve_workers(size_t workers);

}  // namespace ncsim

#endif
