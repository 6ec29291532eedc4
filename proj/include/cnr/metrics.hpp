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
 * Approximation-quality measures over the neighborhood U(1, beta) of the
 * ground level (levels 1 .. beta + 1) and the straight-line construction that
 * certifies a beta for a worst relative error eps_R.
 */

#pragma once

#include <cstdint>

#include "cnr/cost_model.hpp"

namespace cnr {

/// a -> intercept + slope * (a - 1).
struct AffineLine {
    double intercept;
    double slope;

    [[nodiscard]] double operator()(double a) const {
        return intercept + slope * (a - 1.0);
    }
};

struct NeighborhoodReport {
    int beta;
    std::uint64_t a_beta;
    int p;
    double cum_prob;
    /// 1 - cum_prob, computed without cancellation.
    double cum_complement;
    double lower_bound;
    double avg_rel_error;
    double worst_case_cond;
};

struct BoundLines {
    std::size_t a_tilde;
    double critical_slope;
    AffineLine e_critical;
    /// Line for beta_max; equal to e_critical's vertical limit when
    /// beta_max == 0 (slope is then +infinity).
    AffineLine e_bound;
    int beta_max;
};

/// (E_a - E_1) / (E_G - E_1). UndefinedError for a constant spectrum.
double relative_error(const EnergySpectrum &spec, std::size_t a);

/// A_beta = number of basis strings in levels 1 .. beta + 1.
std::uint64_t neighborhood_size(const EnergySpectrum &spec, int beta);

/// 1 - (1 - A/2^n)^(2^p).
double cumulative_prob(int n, std::uint64_t a_beta, int p);
/// (1 - A/2^n)^(2^p).
double cumulative_complement(int n, std::uint64_t a_beta, int p);
double cumulative_prob(const EnergySpectrum &spec, int beta, int p);

/// 1 - exp(-2^p A / 2^n).
double cumulative_lower_bound(int n, std::uint64_t a_beta, int p);

/// Smallest p >= 0 with log2((2^n / A) ln(1 / (1 - eta))) <= p.
int min_p_for(double eta, int n, std::uint64_t a_beta);

/// Probability-weighted mean relative error over U(1, beta) at depth p.
double avg_relative_error(const EnergySpectrum &spec, int beta, int p);

/// P(beta + 1, p) / cumulative probability over U(1, beta).
double worst_case_conditional(const EnergySpectrum &spec, int beta, int p);

NeighborhoodReport neighborhood_report(const EnergySpectrum &spec, int beta,
                                       int p);

/// Largest beta whose level beta + 1 still has relative error <= eps_r.
int beta_from_true_energies(const EnergySpectrum &spec, double eps_r);

/// Critical line through (1, E_1) and the level of steepest slope.
BoundLines critical_line(const EnergySpectrum &spec);

/// floor(eps_r (C_max - C_min) (a~ - 1) / (E_a~ - E_1)), at most G - 1.
int beta_upper_bound(const EnergySpectrum &spec, double eps_r);

/// E^B(a) = E_1 + eps_r (C_max - C_min) / beta * (a - 1).
AffineLine bound_line(const EnergySpectrum &spec, double eps_r, int beta);

/// critical_line() with e_bound and beta_max filled in for eps_r.
BoundLines bound_lines(const EnergySpectrum &spec, double eps_r);

} // namespace cnr
