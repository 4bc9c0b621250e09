// Copyright 2026 the qtrack developers.
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

namespace qtrack {

// Self-contained PRNG so that identical seeds give identical output on every
// platform and standard library. std::normal_distribution and friends make no
// such guarantee, and reproducibility of serialized artifacts is part of the
// library's contract.

//! SplitMix64 finalizer; also used as the seed-mixing function.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

//! FNV-1a over a byte string.
constexpr std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

//! Derives a sub-seed from (master seed, stream name, index).
//!
//! Rule (stable across releases, documented in the README):
//!   h = fnv1a64(name); return mix64(mix64(seed + GOLDEN) ^ h ^ (GOLDEN * (index + 1)))
//! with GOLDEN = 0x9E3779B97F4A7C15.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view name,
                                    std::uint64_t index = 0) {
    constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
    return mix64(mix64(seed + kGolden) ^ fnv1a64(name) ^ (kGolden * (index + 1)));
}

//! SplitMix64 generator (Steele, Lea, Flood 2014). 2^64 period, passes BigCrush.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix64(state_);
    }

    //! Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    //! Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    //! Uniform integer in [0, n). Lemire multiply-shift; n must be > 0.
    std::uint64_t uniform_index(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    //! Standard normal via Box-Muller (one value per draw; no cached spare).
    double normal() {
        double u1 = 1.0 - uniform01();  // (0, 1]
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    //! Fisher-Yates shuffled identity permutation of size n.
    std::vector<std::uint32_t> permutation(std::uint32_t n) {
        std::vector<std::uint32_t> p(n);
        for (std::uint32_t i = 0; i < n; ++i) p[i] = i;
        for (std::uint32_t i = n; i > 1; --i) {
            const auto j = static_cast<std::uint32_t>(uniform_index(i));
            std::swap(p[i - 1], p[j]);
        }
        return p;
    }

  private:
    std::uint64_t state_;
};

}  // namespace qtrack
