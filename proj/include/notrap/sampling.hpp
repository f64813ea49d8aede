// Copyright 2026 The NOTraP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Finite-shot model: each overlap-probability circuit yields a binomial
 * count of all-zeros outcomes.
 */
#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "notrap/error.hpp"

namespace notrap {

/// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Per-circuit seed, independent of evaluation order.
inline std::uint64_t derive_seed(std::uint64_t experiment_seed,
                                 std::uint64_t circuit_index) {
    return mix64(mix64(experiment_seed) ^ mix64(circuit_index + 1));
}

struct ShotSample {
    double probability_true = 0.0;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::uint64_t successes = 0;
    double estimate = 0.0;
};

inline ShotSample sample(double p, std::uint64_t shots, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidArgument("sample: probability " + std::to_string(p) +
                              " outside [0, 1]");
    }
    if (shots < 1) {
        throw InvalidArgument("sample: shots must be >= 1");
    }
    std::mt19937_64 rng(seed);
    std::binomial_distribution<std::uint64_t> dist(shots, p);
    const std::uint64_t k = dist(rng);
    return {p, shots, seed, k,
            static_cast<double>(k) / static_cast<double>(shots)};
}

/// Shot settings for an estimator run; circuit i uses derive_seed(seed, i).
struct ShotPlan {
    std::uint64_t shots_per_circuit = 1000;
    std::uint64_t seed = 0;
};

} // namespace notrap
