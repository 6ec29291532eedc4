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

#include "cnr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cnr/errors.hpp"
#include "cnr/recursion.hpp"

namespace cnr {

namespace {

void check_depth(int p) {
    if (p < 0 || p > kMaxDepth) {
        throw ArgumentError("p must be in [0, " + std::to_string(kMaxDepth) +
                            "]");
    }
}

void check_count(int n, std::uint64_t a_beta) {
    if (n < 1 || n > 62) {
        throw ArgumentError("n must be in [1, 62]");
    }
    if (a_beta < 1 || a_beta > (std::uint64_t{1} << n)) {
        throw ArgumentError("A_beta must be in [1, 2^n]");
    }
}

void check_beta(const EnergySpectrum &spec, int beta) {
    if (beta < 0 || static_cast<std::size_t>(beta) >= spec.num_levels()) {
        throw ArgumentError("beta must be in [0, G - 1] = [0, " +
                            std::to_string(spec.num_levels() - 1) + "]");
    }
}

void check_eps(double eps_r) {
    if (!(eps_r > 0.0 && eps_r <= 1.0)) {
        throw ArgumentError("eps_R must satisfy 0 < eps_R <= 1");
    }
}

// log of (1 - A/2^n)^(2^p); -inf when A = 2^n.
double log_complement(int n, std::uint64_t a_beta, int p) {
    check_count(n, a_beta);
    check_depth(p);
    const double ratio = std::ldexp(static_cast<double>(a_beta), -n);
    return std::ldexp(std::log1p(-ratio), p);
}

} // namespace

double relative_error(const EnergySpectrum &spec, std::size_t a) {
    const double range = spec.range();
    if (!(range > 0.0)) {
        throw UndefinedError("relative error needs C_max > C_min");
    }
    return (spec.energy(a) - spec.c_min()) / range;
}

std::uint64_t neighborhood_size(const EnergySpectrum &spec, int beta) {
    check_beta(spec, beta);
    return spec.states_up_to(static_cast<std::size_t>(beta) + 1);
}

double cumulative_prob(int n, std::uint64_t a_beta, int p) {
    return -std::expm1(log_complement(n, a_beta, p));
}

double cumulative_complement(int n, std::uint64_t a_beta, int p) {
    return std::exp(log_complement(n, a_beta, p));
}

double cumulative_prob(const EnergySpectrum &spec, int beta, int p) {
    return cumulative_prob(spec.num_bits(), neighborhood_size(spec, beta), p);
}

double cumulative_lower_bound(int n, std::uint64_t a_beta, int p) {
    check_count(n, a_beta);
    check_depth(p);
    const double ratio = std::ldexp(static_cast<double>(a_beta), -n);
    return -std::expm1(-std::ldexp(ratio, p));
}

int min_p_for(double eta, int n, std::uint64_t a_beta) {
    if (!(eta > 0.0 && eta < 1.0)) {
        throw ArgumentError("eta must satisfy 0 < eta < 1");
    }
    check_count(n, a_beta);
    const double bound = static_cast<double>(n) -
                         std::log2(static_cast<double>(a_beta)) +
                         std::log2(-std::log1p(-eta));
    return std::max(0, static_cast<int>(std::ceil(bound)));
}

double avg_relative_error(const EnergySpectrum &spec, int beta, int p) {
    check_beta(spec, beta);
    const double cum = cumulative_prob(spec, beta, p);
    if (!(cum > 0.0)) {
        throw UndefinedError("cumulative probability over U(1, beta) is 0");
    }
    if (beta == 0) {
        return 0.0;
    }
    const LevelDistribution dist = distribution_at(spec, p);
    double acc = 0.0;
    for (std::size_t a = 1; a <= static_cast<std::size_t>(beta) + 1; ++a) {
        acc += dist.prob(a) * relative_error(spec, a);
    }
    return acc / cum;
}

double worst_case_conditional(const EnergySpectrum &spec, int beta, int p) {
    check_beta(spec, beta);
    const double cum = cumulative_prob(spec, beta, p);
    if (!(cum > 0.0)) {
        throw UndefinedError("cumulative probability over U(1, beta) is 0");
    }
    if (beta == 0) {
        return 1.0;
    }
    const LevelDistribution dist = distribution_at(spec, p);
    return dist.prob(static_cast<std::size_t>(beta) + 1) / cum;
}

NeighborhoodReport neighborhood_report(const EnergySpectrum &spec, int beta,
                                       int p) {
    const std::uint64_t a_beta = neighborhood_size(spec, beta);
    const int n = spec.num_bits();
    return {beta,
            a_beta,
            p,
            cumulative_prob(n, a_beta, p),
            cumulative_complement(n, a_beta, p),
            cumulative_lower_bound(n, a_beta, p),
            avg_relative_error(spec, beta, p),
            worst_case_conditional(spec, beta, p)};
}

int beta_from_true_energies(const EnergySpectrum &spec, double eps_r) {
    check_eps(eps_r);
    const double range = spec.range();
    if (!(range > 0.0)) {
        throw UndefinedError("relative error needs C_max > C_min");
    }
    std::size_t count = 0;
    for (std::size_t a = 1; a <= spec.num_levels(); ++a) {
        if (relative_error(spec, a) <= eps_r + 1e-12) {
            count = a;
        } else {
            break;
        }
    }
    return static_cast<int>(count) - 1;
}

BoundLines critical_line(const EnergySpectrum &spec) {
    const std::size_t g = spec.num_levels();
    if (g < 2) {
        throw UndefinedError("critical line needs at least two levels");
    }
    const double e1 = spec.energy(1);
    std::size_t best_a = 2;
    double best = spec.energy(2) - e1;
    for (std::size_t a = 3; a <= g; ++a) {
        const double slope =
            (spec.energy(a) - e1) / static_cast<double>(a - 1);
        // Ties go to the smallest a.
        if (slope > best + 1e-12 * std::max(1.0, std::abs(best))) {
            best = slope;
            best_a = a;
        }
    }
    const AffineLine line{e1, best};
    const double tol = 1e-9 * std::max(1.0, spec.range());
    for (std::size_t a = 1; a <= g; ++a) {
        if (line(static_cast<double>(a)) < spec.energy(a) - tol) {
            throw InternalError("critical line falls below level " +
                                std::to_string(a));
        }
    }
    return {best_a, best, line,
            {e1, std::numeric_limits<double>::infinity()}, 0};
}

int beta_upper_bound(const EnergySpectrum &spec, double eps_r) {
    check_eps(eps_r);
    const BoundLines c = critical_line(spec);
    // The relative slack absorbs rounding when the exact ratio is an integer.
    const double x = eps_r * spec.range() / c.critical_slope;
    const auto beta = static_cast<long long>(std::floor(x * (1.0 + 1e-12)));
    return static_cast<int>(
        std::min<long long>(beta, static_cast<long long>(spec.num_levels()) - 1));
}

AffineLine bound_line(const EnergySpectrum &spec, double eps_r, int beta) {
    check_eps(eps_r);
    const int limit = beta_upper_bound(spec, eps_r);
    if (beta < 1 || beta > limit) {
        throw ArgumentError("beta = " + std::to_string(beta) +
                            " outside [1, " + std::to_string(limit) +
                            "]; the line would cross below E^C");
    }
    return {spec.energy(1), eps_r * spec.range() / beta};
}

BoundLines bound_lines(const EnergySpectrum &spec, double eps_r) {
    BoundLines lines = critical_line(spec);
    lines.beta_max = beta_upper_bound(spec, eps_r);
    if (lines.beta_max >= 1) {
        lines.e_bound = bound_line(spec, eps_r, lines.beta_max);
    }
    return lines;
}

} // namespace cnr
