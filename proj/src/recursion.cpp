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

#include "cnr/recursion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cnr/errors.hpp"

namespace cnr {

namespace {

constexpr double kSumTol = 1e-10;

std::vector<double> suffix_tails(const std::vector<double> &probs) {
    std::vector<double> tails(probs.size(), 0.0);
    double acc = 0.0;
    for (std::size_t k = probs.size(); k-- > 0;) {
        tails[k] = acc;
        acc += probs[k];
    }
    return tails;
}

// S_p and T_p = 1 - S_p from S_0 and T_0 for every level, then P_p by
// differencing whichever side is not close to 1.
LevelDistribution closed_form(const std::vector<double> &prefix0,
                              const std::vector<double> &tail0, int depth0,
                              int p) {
    if (p < 0 || p > kMaxDepth) {
        throw ArgumentError("level depth p must be in [0, " +
                            std::to_string(kMaxDepth) + "]");
    }
    const double pow2 = std::ldexp(1.0, p);
    const std::size_t g = prefix0.size();
    std::vector<double> s(g);
    std::vector<double> tl(g);
    for (std::size_t k = 0; k < g; ++k) {
        if (tail0[k] <= 0.0) {
            s[k] = 1.0;
            tl[k] = 0.0;
        } else if (prefix0[k] <= 0.0) {
            s[k] = 0.0;
            tl[k] = 1.0;
        } else {
            const double log_tail = prefix0[k] < 0.5
                                        ? pow2 * std::log1p(-prefix0[k])
                                        : pow2 * std::log(tail0[k]);
            tl[k] = std::exp(log_tail);
            s[k] = -std::expm1(log_tail);
        }
    }
    std::vector<double> probs(g);
    for (std::size_t k = 0; k < g; ++k) {
        const double s_prev = k == 0 ? 0.0 : s[k - 1];
        const double t_prev = k == 0 ? 1.0 : tl[k - 1];
        probs[k] = std::max(0.0, s[k] <= 0.5 ? s[k] - s_prev : t_prev - tl[k]);
    }
    return {std::move(probs), std::move(tl), depth0 + p};
}

} // namespace

LevelDistribution::LevelDistribution(std::vector<double> probs, int depth)
    : LevelDistribution(probs, suffix_tails(probs), depth) {}

LevelDistribution::LevelDistribution(std::vector<double> probs,
                                     std::vector<double> tails, int depth)
    : probs_(std::move(probs)), tails_(std::move(tails)), depth_(depth) {
    if (probs_.empty()) {
        throw ArgumentError("level distribution needs at least one level");
    }
    if (tails_.size() != probs_.size()) {
        throw ArgumentError("tail vector length mismatch");
    }
    if (depth_ < 0) {
        throw ArgumentError("level depth must be nonnegative");
    }
    double sum = 0.0;
    for (double x : probs_) {
        if (!(x >= 0.0)) {
            throw ArgumentError("level probabilities must be nonnegative");
        }
        sum += x;
    }
    if (std::abs(sum - 1.0) > kSumTol) {
        throw ArgumentError("level probabilities sum to " +
                            std::to_string(sum));
    }
}

double LevelDistribution::prob(std::size_t a) const {
    if (a < 1 || a > probs_.size()) {
        throw ArgumentError("level number out of range");
    }
    return probs_[a - 1];
}

double LevelDistribution::tail(std::size_t a) const {
    if (a > probs_.size()) {
        throw ArgumentError("level number out of range");
    }
    return a == 0 ? 1.0 : tails_[a - 1];
}

double LevelDistribution::prefix(std::size_t a) const {
    if (a > probs_.size()) {
        throw ArgumentError("level number out of range");
    }
    return std::accumulate(probs_.begin(),
                           probs_.begin() + static_cast<std::ptrdiff_t>(a),
                           0.0);
}

LevelDistribution initial_distribution(const EnergySpectrum &spec) {
    const double total = static_cast<double>(spec.total_states());
    const std::size_t g = spec.num_levels();
    std::vector<double> probs(g);
    std::vector<double> tails(g);
    for (std::size_t a = 1; a <= g; ++a) {
        probs[a - 1] = static_cast<double>(spec.degeneracy(a)) / total;
        tails[a - 1] = static_cast<double>(spec.states_above(a)) / total;
    }
    return {std::move(probs), std::move(tails), 0};
}

LevelDistribution cnr_combine(const LevelDistribution &target,
                              const LevelDistribution &support) {
    if (target.num_levels() != support.num_levels()) {
        throw ArgumentError("cnr_combine: distributions have different "
                            "level counts");
    }
    const std::size_t g = target.num_levels();
    const auto p = target.probs();
    const auto q = support.probs();
    const auto tp = target.tails();
    const auto tq = support.tails();
    std::vector<double> out(g);
    std::vector<double> tails(g);
    for (std::size_t k = 0; k < g; ++k) {
        // P + P' - P S' - P' S + P P' with (1 - S) kept as the tail.
        out[k] = p[k] * tq[k] + q[k] * tp[k] + p[k] * q[k];
        // The survivor lies above level a iff both inputs do.
        tails[k] = tp[k] * tq[k];
    }
    // Squaring doubles the relative rounding error of a level holding
    // nearly all mass at every step; the exact map preserves the total, so
    // projecting back onto it stops that growth.
    const double total = std::accumulate(out.begin(), out.end(), 0.0);
    for (double &x : out) {
        x /= total;
    }
    return {std::move(out), std::move(tails),
            std::max(target.depth(), support.depth()) + 1};
}

LevelDistribution step(const LevelDistribution &dist) {
    return cnr_combine(dist, dist);
}

LevelDistribution distribution_at(const EnergySpectrum &spec, int p) {
    const double total = static_cast<double>(spec.total_states());
    const std::size_t g = spec.num_levels();
    std::vector<double> prefix0(g);
    std::vector<double> tail0(g);
    for (std::size_t a = 1; a <= g; ++a) {
        prefix0[a - 1] = static_cast<double>(spec.states_up_to(a)) / total;
        tail0[a - 1] = static_cast<double>(spec.states_above(a)) / total;
    }
    return closed_form(prefix0, tail0, 0, p);
}

LevelDistribution distribution_at(const LevelDistribution &initial, int p) {
    const std::size_t g = initial.num_levels();
    std::vector<double> prefix0(g);
    std::vector<double> tail0(initial.tails().begin(), initial.tails().end());
    double acc = 0.0;
    for (std::size_t k = 0; k < g; ++k) {
        acc += initial.probs()[k];
        prefix0[k] = acc;
    }
    return closed_form(prefix0, tail0, initial.depth(), p);
}

} // namespace cnr
