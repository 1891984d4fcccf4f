// Copyright 2026 The stabcleanse Authors
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

#pragma once

#include <cstdint>
#include <random>

namespace stabcleanse {

// std::mt19937_64's output sequence is fixed by the standard; the helpers below
// avoid the library distributions (whose algorithms are implementation-defined)
// so sampled values are identical across toolchains.
using Rng = std::mt19937_64;

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Independent generator for sample `index` of an experiment seeded with `seed`.
inline Rng stream_rng(uint64_t seed, uint64_t index) {
    return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL)));
}

/// Derives a child seed; used where a sub-experiment takes a plain seed.
inline uint64_t derive_seed(uint64_t seed, uint64_t index) {
    return splitmix64(splitmix64(seed) + 0xD1B54A32D192ED03ULL * (index + 1));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool random_bit(Rng &rng) {
    return rng() >> 63;
}

/// Uniform integer in [0, bound) by rejection. bound must be positive.
inline uint64_t uniform_below(Rng &rng, uint64_t bound) {
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % bound;
}

}  // namespace stabcleanse
