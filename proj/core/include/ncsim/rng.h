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

#ifndef NCSIM_RNG_H
#define NCSIM_RNG_H

#include <cstdint>
#include <limits>

namespace ncsim {

/// Default master seed used when none is given on the command line.
inline constexpr uint64_t kDefaultSeed = 20170704;

/// Finalizer of SplitMix64; a bijective 64-bit mix.
constexpr uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
   public:
    using result_type = uint64_t;

    explicit SplitMix64(uint64_t state) : state_(state) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
    bool bit() { return ((*this)() >> 63) != 0; }

   private:
    uint64_t state_;
};

/// Independent stream number `stream` derived from a master seed.
inline SplitMix64 stream_rng(uint64_t seed, uint64_t stream) {
    return SplitMix64(mix64(seed ^ mix64(stream * 0xd1342543de82ef95ULL + 0x632be59bd9b4e019ULL)));
}

}  // namespace ncsim

#endif
