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
/**
 * @file
 * Level-probability calculus of the CNR tournament under ideal comparisons.
 *
 * A single CNR on independent inputs with level distributions P (target) and
 * P' (support) leaves the target at level a with probability
 *
 *     P(a) + P'(a) - P(a) S'(a) - P'(a) S(a) + P(a) P'(a),
 *
 * S, S' being inclusive prefix sums. With identical inputs the prefix sums
 * obey S_{m+1}(a) = 1 - (1 - S_m(a))^2, hence after p levels starting from
 * the uniform superposition S_p(a) = 1 - (1 - S_0(a))^(2^p).
 */

#pragma once

#include <span>
#include <vector>

#include "cnr/cost_model.hpp"

namespace cnr {

/// Largest level depth accepted by the closed form.
inline constexpr int kMaxDepth = 62;

/**
 * Probability vector over energy levels after m CNR levels.
 *
 * Stores the per-level probabilities and, separately, the upper tails
 * T(a) = 1 - S(a) = sum_{b > a} P(b). The tails are kept so that values of S
 * close to 1 do not lose their complement to rounding.
 */
class LevelDistribution {
  public:
    /// Tails are recomputed from `probs` by suffix summation.
    LevelDistribution(std::vector<double> probs, int depth);
    LevelDistribution(std::vector<double> probs, std::vector<double> tails,
                      int depth);

    [[nodiscard]] std::size_t num_levels() const { return probs_.size(); }
    [[nodiscard]] int depth() const { return depth_; }
    [[nodiscard]] std::span<const double> probs() const { return probs_; }
    [[nodiscard]] std::span<const double> tails() const { return tails_; }

    /// P(a), 1-based.
    [[nodiscard]] double prob(std::size_t a) const;
    /// S(a) = P(1) + ... + P(a), 1-based; S(0) = 0.
    [[nodiscard]] double prefix(std::size_t a) const;
    /// 1 - S(a); tail(0) = 1.
    [[nodiscard]] double tail(std::size_t a) const;

  private:
    std::vector<double> probs_;
    std::vector<double> tails_;  // tails_[k] = 1 - S(k + 1)
    int depth_;
};

/// P(a, 0) = g_a / 2^n.
LevelDistribution initial_distribution(const EnergySpectrum &spec);

/// Level distribution of the target after one ideal CNR.
LevelDistribution cnr_combine(const LevelDistribution &target,
                              const LevelDistribution &support);

/// One tournament level: cnr_combine(dist, dist), depth + 1.
LevelDistribution step(const LevelDistribution &dist);

/// Closed form after p levels from the uniform superposition.
LevelDistribution distribution_at(const EnergySpectrum &spec, int p);
/// Closed form after p further levels from an arbitrary distribution.
LevelDistribution distribution_at(const LevelDistribution &initial, int p);

} // namespace cnr
