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

#include <gtest/gtest.h>

#include <cmath>

#include "cnr/errors.hpp"
#include "cnr/generators.hpp"
#include "cnr/metrics.hpp"
#include "gen.hpp"
#include "oracles.hpp"

namespace cnr {
namespace {

// Spectrum on n bits with the given energies; all states beyond the listed
// degeneracies go to the last level.
EnergySpectrum Spec(int n, const std::vector<double> &energies,
                    std::vector<std::uint64_t> degs) {
    std::uint64_t used = 0;
    for (std::size_t k = 0; k + 1 < degs.size(); ++k) {
        used += degs[k];
    }
    degs.back() = (std::uint64_t{1} << n) - used;
    std::vector<EnergyLevel> levels;
    for (std::size_t k = 0; k < energies.size(); ++k) {
        levels.push_back({energies[k], degs[k], {}});
    }
    return {n, std::move(levels), 1e-9};
}

TEST(RelativeError, Examples) {
    const EnergySpectrum s = Spec(2, {-3, 1, 5}, {1, 1, 0});
    EXPECT_EQ(relative_error(s, 1), 0.0);
    EXPECT_EQ(relative_error(s, 2), 0.5);
    EXPECT_EQ(relative_error(s, 3), 1.0);
    EXPECT_THROW(relative_error(Spec(2, {1.0}, {0}), 1), UndefinedError);
}

TEST(CumulativeProb, TableColumns) {
    const double gaussian[3] = {0.6066, 0.8452, 0.9760};
    const double xor_cols[3] = {0.9115, 0.9922, 0.9999};
    for (int k = 0; k < 3; ++k) {
        EXPECT_NEAR(cumulative_prob(10, 58, 4 + k), gaussian[k], 5e-5);
        EXPECT_NEAR(cumulative_prob(10, 144, 4 + k), xor_cols[k], 5e-5);
    }
    for (int p = 7; p <= 9; ++p) {
        EXPECT_GE(cumulative_prob(10, 58, p), 0.999);
    }
    EXPECT_NEAR(cumulative_complement(10, 58, 7), 5.7e-4, 0.05e-4);
    EXPECT_EQ(cumulative_prob(10, 58, 0), 58.0 / 1024);
}

TEST(CumulativeProb, AgreesWithRepeatedSquaring) {
    for (int p = 0; p <= 12; ++p) {
        for (std::uint64_t a : {1U, 3U, 58U, 144U, 1000U}) {
            EXPECT_NEAR(cumulative_prob(10, a, p),
                        oracle::cumulative_by_squaring(10, a, p), 1e-13);
        }
    }
}

TEST(CumulativeProb, SpectrumOverload) {
    const EnergySpectrum s = Spec(10, {-10, -8, -6, 0}, {2, 56, 86, 0});
    EXPECT_EQ(neighborhood_size(s, 0), 2U);
    EXPECT_EQ(neighborhood_size(s, 1), 58U);
    EXPECT_EQ(neighborhood_size(s, 2), 144U);
    EXPECT_EQ(cumulative_prob(s, 1, 5), cumulative_prob(10, 58, 5));
    EXPECT_THROW(neighborhood_size(s, 4), ArgumentError);
    EXPECT_THROW(neighborhood_size(s, -1), ArgumentError);
}

TEST(CumulativeLowerBound, Examples) {
    for (int n = 1; n <= 30; ++n) {
        EXPECT_NEAR(cumulative_lower_bound(n, 1, n + 3), 1.0 - std::exp(-8.0),
                    1e-15);
    }
    EXPECT_NEAR(cumulative_lower_bound(10, 58, 4), 1.0 - std::exp(-0.90625),
                1e-15);
    EXPECT_NEAR(cumulative_lower_bound(10, 58, 4), 0.5959634763, 1e-10);
    EXPECT_LE(cumulative_lower_bound(10, 58, 4), cumulative_prob(10, 58, 4));
    double prev = 0.0;
    for (int p = 0; p <= 20; ++p) {
        const double b = cumulative_lower_bound(12, 5, p);
        EXPECT_GE(b, prev);
        prev = b;
    }
    EXPECT_EQ(prev, 1.0);
}

TEST(MinP, Examples) {
    EXPECT_EQ(min_p_for(0.9, 10, 58), 6);
    EXPECT_LT(cumulative_prob(10, 58, 5), 0.9);
    EXPECT_GE(cumulative_prob(10, 58, 6), 0.9);
    EXPECT_EQ(min_p_for(1e-12, 10, 58), 0);
    EXPECT_EQ(min_p_for(0.5, 10, 1024), 0);
    EXPECT_THROW(min_p_for(0.0, 10, 58), ArgumentError);
    EXPECT_THROW(min_p_for(1.0, 10, 58), ArgumentError);
}

TEST(AverageRelativeError, Examples) {
    const EnergySpectrum s = Spec(10, {-10, -8, -6, 0}, {2, 56, 86, 0});
    EXPECT_EQ(avg_relative_error(s, 0, 4), 0.0);
    EXPECT_EQ(worst_case_conditional(s, 0, 4), 1.0);
    // Two equally weighted levels at energies 0 and 1: after one level the
    // distribution is (3/4, 1/4) and U(1, 1) covers everything.
    const EnergySpectrum two = Spec(2, {0, 1}, {2, 0});
    EXPECT_NEAR(avg_relative_error(two, 1, 1), 0.25, 1e-15);
    EXPECT_NEAR(worst_case_conditional(two, 1, 1), 0.25, 1e-15);
}

TEST(AverageRelativeError, MatchesDirectWeighting) {
    const EnergySpectrum s = Spec(10, {-10, -8, -6, 0}, {2, 56, 86, 0});
    const std::vector<double> dist = oracle::pairwise_tournament(
        {{-10, 2}, {-8, 56}, {-6, 86}, {0, 880}}, 10, 5, oracle::ideal_replace);
    const double cum = dist[0] + dist[1] + dist[2];
    EXPECT_NEAR(cumulative_prob(s, 2, 5), cum, 1e-12);
    EXPECT_NEAR(avg_relative_error(s, 2, 5),
                (dist[1] * 0.2 + dist[2] * 0.4) / cum, 1e-12);
    EXPECT_NEAR(worst_case_conditional(s, 2, 5), dist[2] / cum, 1e-12);
    const NeighborhoodReport r = neighborhood_report(s, 2, 5);
    EXPECT_EQ(r.a_beta, 144U);
    EXPECT_GE(r.cum_prob, r.lower_bound);
    EXPECT_NEAR(r.cum_prob + r.cum_complement, 1.0, 1e-15);
}

TEST(CriticalLine, Examples) {
    const EnergySpectrum s = Spec(2, {0, 1, 4}, {1, 1, 0});
    const BoundLines c = critical_line(s);
    EXPECT_EQ(c.a_tilde, 3U);
    EXPECT_EQ(c.critical_slope, 2.0);
    EXPECT_EQ(c.e_critical(1.0), 0.0);
    EXPECT_EQ(c.e_critical(3.0), 4.0);
    EXPECT_EQ(oracle::brute_argmax_slope({0, 1, 4}), 3U);

    const EnergySpectrum affine = Spec(3, {1, 2, 3, 4}, {1, 1, 1, 0});
    const BoundLines a = critical_line(affine);
    EXPECT_EQ(a.a_tilde, 2U);
    for (std::size_t k = 1; k <= 4; ++k) {
        EXPECT_NEAR(a.e_critical(static_cast<double>(k)), affine.energy(k),
                    1e-12);
    }
    EXPECT_THROW(critical_line(Spec(2, {1.0}, {0})), UndefinedError);
}

TEST(BetaUpperBound, Examples) {
    const EnergySpectrum s = Spec(2, {0, 1, 4}, {1, 1, 0});
    EXPECT_EQ(beta_upper_bound(s, 0.5), 1);
    EXPECT_EQ(beta_upper_bound(s, 0.1), 0);
    EXPECT_THROW(beta_upper_bound(s, 0.0), ArgumentError);
    EXPECT_THROW(beta_upper_bound(s, 1.5), ArgumentError);
}

TEST(BoundLine, Examples) {
    const EnergySpectrum s = Spec(2, {0, 1, 4}, {1, 1, 0});
    const AffineLine line = bound_line(s, 0.5, 1);
    EXPECT_EQ(line(1.0), 0.0);
    EXPECT_EQ(line(2.0), 0.5 * 4.0);
    EXPECT_THROW(bound_line(s, 0.5, 2), ArgumentError);
    EXPECT_THROW(bound_line(s, 0.5, 0), ArgumentError);
    const BoundLines zero = bound_lines(s, 0.1);
    EXPECT_EQ(zero.beta_max, 0);
    EXPECT_TRUE(std::isinf(zero.e_bound.slope));
}

TEST(BetaFromTrueEnergies, CountsLevelsWithinTolerance) {
    const EnergySpectrum s = Spec(10, {-10, -8, -6, 0, 40}, {2, 56, 86, 100, 0});
    EXPECT_EQ(beta_from_true_energies(s, 0.2), 3);
    EXPECT_EQ(beta_from_true_energies(s, 0.01), 0);
    EXPECT_EQ(beta_from_true_energies(s, 1.0), 4);
}

std::vector<double> Energies(const EnergySpectrum &s) {
    std::vector<double> e;
    for (const EnergyLevel &lv : s.levels()) {
        e.push_back(lv.energy);
    }
    return e;
}

std::vector<EnergySpectrum> RandomFamilySpectra(std::uint64_t suite, int count) {
    std::vector<EnergySpectrum> out;
    for (int k = 0; k < count; ++k) {
        gen::Source src(suite, static_cast<std::uint64_t>(k));
        const int n = src.integer(3, 12);
        const ProblemInstance inst =
            k % 2 == 0 ? gen_gaussian(n, src.bits())
                       : gen_max2xor(n, src.real(0.3, 1.0), src.bits());
        if (inst.terms().empty()) {
            continue;
        }
        out.push_back(enumerate_spectrum(inst));
    }
    return out;
}

// Property: E^B >= E^C >= E_a on [1, beta + 1], endpoint identity, and the
// line-derived beta never exceeds the true-energy beta.
TEST(MetricsProperty, BoundLinesAreConservative) {
    int index = 0;
    for (const EnergySpectrum &s : RandomFamilySpectra(50, 100)) {
        ++index;
        if (s.num_levels() < 2) {
            continue;
        }
        for (double eps : {0.05, 0.1, 0.2, 0.5, 1.0}) {
            const BoundLines lines = bound_lines(s, eps);
            const int beta_true = beta_from_true_energies(s, eps);
            EXPECT_LE(lines.beta_max, beta_true) << "case " << index;
            EXPECT_EQ(lines.a_tilde, oracle::brute_argmax_slope(Energies(s)))
                << "case " << index;
            for (int beta = 1; beta <= lines.beta_max; ++beta) {
                const AffineLine eb = bound_line(s, eps, beta);
                const double tol = 1e-9 * s.range();
                for (int a = 1; a <= beta + 1; ++a) {
                    const double x = a;
                    EXPECT_GE(eb(x), lines.e_critical(x) - tol);
                    EXPECT_GE(lines.e_critical(x),
                              s.energy(static_cast<std::size_t>(a)) - tol);
                }
                const double rel = (eb(beta + 1.0) - s.c_min()) / s.range();
                EXPECT_NEAR(rel, eps, 1e-12);
                EXPECT_LE(relative_error(s, static_cast<std::size_t>(beta) + 1),
                          eps + 1e-12);
            }
        }
    }
}

TEST(MetricsProperty, CumulativeDominatesLowerBound) {
    for (int n = 1; n <= 20; n += 3) {
        for (std::uint64_t a = 1; a <= (std::uint64_t{1} << n); a = a * 3 + 1) {
            for (int p = 0; p <= n + 4; ++p) {
                EXPECT_GE(cumulative_prob(n, a, p),
                          cumulative_lower_bound(n, a, p) - 1e-15);
            }
        }
    }
}

TEST(MetricsProperty, MinPReachesEta) {
    for (std::uint64_t k = 0; k < 300; ++k) {
        gen::Source src(51, k);
        const int n = src.integer(1, 20);
        const std::uint64_t total = std::uint64_t{1} << n;
        const std::uint64_t a = 1 + src.bits() % total;
        const double eta = src.real(0.01, 0.9999);
        const int p = min_p_for(eta, n, a);
        EXPECT_GE(cumulative_prob(n, a, p), eta) << "case " << k;
        if (p > 0) {
            // The bound is exact for the lower bound: one level fewer is short.
            EXPECT_LT(cumulative_lower_bound(n, a, p - 1), eta) << "case " << k;
        }
    }
}

// Empirical property on fixed seeds: both quality measures improve with p.
TEST(MetricsProperty, QualityMeasuresNonincreasingInP) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        for (const ProblemInstance &inst :
             {gen_gaussian(10, seed), gen_max2xor(10, 0.6, seed)}) {
            const EnergySpectrum s = enumerate_spectrum(inst);
            const int beta = beta_from_true_energies(s, 0.2);
            double prev_avg = 2.0;
            double prev_wcc = 2.0;
            for (int p = 0; p <= 12; ++p) {
                const double avg = avg_relative_error(s, beta, p);
                const double wcc = worst_case_conditional(s, beta, p);
                EXPECT_LE(avg, prev_avg + 1e-15) << inst.label() << " p=" << p;
                EXPECT_LE(wcc, prev_wcc + 1e-15) << inst.label() << " p=" << p;
                EXPECT_GE(wcc, 0.0);
                EXPECT_LE(wcc, 1.0);
                prev_avg = avg;
                prev_wcc = wcc;
            }
        }
    }
}

} // namespace
} // namespace cnr
