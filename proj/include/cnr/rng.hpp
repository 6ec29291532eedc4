// Copyright 2026 The cnrqo Authors
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

namespace cnr {

/**
 * Reproducible random stream: "mt19937_64/box-muller/v1".
 *
 * std::mt19937_64 has a sequence fixed by the C++ standard. The standard
 * library's distributions are implementation-defined, so uniforms and
 * normals are derived here:
 *   - uniform01: top 53 bits of one engine output times 2^-53, in [0, 1).
 *   - normal:    Box-Muller on (u1, u2) = two uniform01 draws, returning
 *                sqrt(-2 ln(1 - u1)) * cos(2 pi u2) and caching the matching
 *                sine variate for the next call.
 * Changing any of this changes every generated instance; bump kName.
 */
class Rng {
  public:
    static constexpr const char *kName = "mt19937_64/box-muller/v1";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    double uniform01();
    double normal();
    /// Uniform integer in [0, bound) without modulo bias.
    std::uint64_t below(std::uint64_t bound);

  private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// SplitMix64 mix of (seed, stream, index); used to derive child seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t index);

} // namespace cnr
