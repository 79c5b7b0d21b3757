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

#include "ncsim/estimation.h"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace ncsim {

void RunningStats::merge(const RunningStats &other) {
    if (other.count == 0) {
        return;
    }
    if (count == 0) {
        *this = other;
        return;
    }
    double na = static_cast<double>(count);
    double nb = static_cast<double>(other.count);
    double n = na + nb;
    double delta = other.mean - mean;
    mean += delta * nb / n;
    m2 += other.m2 + delta * delta * na * nb / n;
    count += other.count;
}

EstimatorResult EstimatorResult::from_stats(const RunningStats &stats, double one_norm_product) {
    EstimatorResult r;
    r.mean = stats.mean;
    r.sample_variance = stats.sample_variance();
    r.shots = stats.count;
    r.std_error = stats.count ? std::sqrt(r.sample_variance / static_cast<double>(stats.count)) : 0.0;
    r.one_norm_product = one_norm_product;
    return r;
}

size_t resolve_workers(size_t workers) {
    if (workers != 0) {
        return workers;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

std::vector<RunningStats> parallel_estimate(
    size_t num_outputs, uint64_t shots, uint64_t seed, size_t workers, const ShotFunction &shot) {
    uint64_t blocks = (shots + kShotBlock - 1) / kShotBlock;
    std::vector<std::vector<RunningStats>> per_block(blocks, std::vector<RunningStats>(num_outputs));

    std::atomic<uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&]() {
        std::vector<double> values(num_outputs);
        while (true) {
            uint64_t b = next.fetch_add(1);
            if (b >= blocks) {
                return;
            }
            try {
                uint64_t end = std::min(shots, (b + 1) * kShotBlock);
                for (uint64_t s = b * kShotBlock; s < end; s++) {
                    SplitMix64 rng = stream_rng(seed, s);
                    shot(s, rng, values);
                    for (size_t k = 0; k < num_outputs; k++) {
                        per_block[b][k].add(values[k]);
                    }
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(blocks);
                return;
            }
        }
    };

    size_t threads = std::min<uint64_t>(resolve_workers(workers), std::max<uint64_t>(blocks, 1));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (size_t t = 0; t < threads; t++) {
            pool.emplace_back(work);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    // Pairwise tree over blocks in index order.
    for (uint64_t stride = 1; stride < blocks; stride *= 2) {
        for (uint64_t b = 0; b + stride < blocks; b += 2 * stride) {
            for (size_t k = 0; k < num_outputs; k++) {
                per_block[b][k].merge(per_block[b + stride][k]);
            }
        }
    }
    return blocks ? per_block[0] : std::vector<RunningStats>(num_outputs);
}

}  // namespace ncsim
