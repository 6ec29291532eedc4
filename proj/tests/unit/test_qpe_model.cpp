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
#include <numbers>

#include "cnr/errors.hpp"
#include "cnr/qpe_model.hpp"
#include "gen.hpp"
#include "oracles.hpp"

namespace cnr {
namespace {

constexpr double kPi = std::numbers::pi;

double Sum(const std::vector<double> &v) {
    double s = 0.0;
    for (double x : v) {
        s += x;
    }
    return s;
}

TEST(CnrConfig, Check) {
    EXPECT_NO_THROW((CnrConfig{2, 1.0, 0.1}.check()));
    EXPECT_THROW((CnrConfig{1, 1.0, 0.1}.check()), ArgumentError);
    EXPECT_THROW((CnrConfig{7, 0.0, 0.1}.check()), ArgumentError);
    EXPECT_THROW((CnrConfig{7, 1.0, 0.0}.check()), ArgumentError);
}

TEST(CnrConfig, ValidateForSpectrum) {
    // Range 4: admissible scale factors lie strictly above 4 / pi.
    const EnergySpectrum s(2, {{-1.0, 2, {}}, {3.0, 2, {}}}, 1e-9);
    EXPECT_DOUBLE_EQ(min_scale(s), 4.0 / kPi);
    EXPECT_NO_THROW((CnrConfig{4, 4.01 / kPi, 0.1}.validate_for(s)));
    EXPECT_THROW((CnrConfig{4, 4.0 / kPi, 0.1}.validate_for(s)), ConfigError);
    // Below the (C_max - C_min) / (2 pi) level as well.
    EXPECT_THROW((CnrConfig{4, 3.0 / (2 * kPi), 0.1}.validate_for(s)),
                 ConfigError);
}

TEST(DeltaOf, Examples) {
    const CnrConfig c{7, 45.0 / (2 * kPi), 2.0 / 45};
    EXPECT_EQ(delta_of(c, 3.0, 3.0).value(), 0.0);
    EXPECT_NEAR(delta_of(c, 0.0, 9.0).value(), 0.2, 1e-15);
    EXPECT_NEAR(delta_of(c, 9.0, 0.0).value(), -0.2, 1e-15);
}

TEST(DeltaOf, BoundaryAndRange) {
    const double range = 10.0;
    const CnrConfig at_bound{5, range / kPi, 0.1};
    EXPECT_DOUBLE_EQ(delta_of(at_bound, range, 0.0).value(), -0.5);
    // The reversed pair lands on +1/2, which is outside [-1/2, 1/2).
    EXPECT_THROW(delta_of(at_bound, 0.0, range), ConfigError);
    const CnrConfig small{5, 1.0, 0.1};
    EXPECT_THROW(delta_of(small, 0.0, 100.0), ConfigError);
}

TEST(WrappedDelta, ReducesModuloOne) {
    const CnrConfig c{7, 45.0 / (2 * kPi), 0.1};
    EXPECT_NEAR(wrapped_delta_of(c, 0.0, 9.0).value(), 0.2, 1e-12);
    EXPECT_NEAR(wrapped_delta_of(c, 0.0, 36.0).value(), -0.2, 1e-12);
    EXPECT_NEAR(wrapped_delta_of(c, 36.0, 0.0).value(), 0.2, 1e-12);
    EXPECT_NEAR(wrapped_delta_of(c, 0.0, 22.5).value(), -0.5, 1e-12);
}

TEST(PhaseFraction, Range) {
    EXPECT_NO_THROW(PhaseFraction(-0.5));
    EXPECT_EQ(PhaseFraction(-0.5 - 1e-14).value(), -0.5);
    EXPECT_THROW(PhaseFraction(0.5), ConfigError);
    EXPECT_THROW(PhaseFraction(-0.6), ConfigError);
}

TEST(AncillaAmplitude, ExactPhases) {
    EXPECT_EQ(std::abs(ancilla_amplitude(1, PhaseFraction(0.25), 2)), 1.0);
    for (std::uint64_t d : {0U, 2U, 3U}) {
        EXPECT_EQ(std::abs(ancilla_amplitude(d, PhaseFraction(0.25), 2)), 0.0);
    }
    EXPECT_EQ(std::abs(ancilla_amplitude(0, PhaseFraction(0.0), 3)), 1.0);
    EXPECT_EQ(ancilla_probability(3, PhaseFraction(-0.25), 2), 1.0);
    EXPECT_TRUE(replaces(3, 2));
}

TEST(AncillaAmplitude, MatchesDirectSum) {
    for (int t : {2, 4, 7, 9}) {
        for (int k = 0; k < 50; ++k) {
            const double delta = -0.5 + k / 50.0 + 0.0037;
            const std::vector<double> ref = oracle::dft_ancilla_probs(delta, t);
            const std::vector<double> got =
                ancilla_distribution(PhaseFraction(delta), t);
            for (std::size_t d = 0; d < ref.size(); ++d) {
                ASSERT_NEAR(got[d], ref[d], 1e-10)
                    << "t=" << t << " delta=" << delta << " d=" << d;
            }
        }
    }
}

TEST(AncillaProbability, PeakBinAtNineQubits) {
    const PhaseFraction delta(0.2333);
    const std::vector<double> probs = ancilla_distribution(delta, 9);
    EXPECT_NEAR(Sum(probs), 1.0, 1e-12);
    const auto argmax = static_cast<std::uint64_t>(
        std::max_element(probs.begin(), probs.end()) - probs.begin());
    EXPECT_EQ(argmax, 119U);
    EXPECT_EQ(peak_bin(delta, 9), 119U);
}

TEST(AncillaProbability, NegativePeakWraps) {
    const PhaseFraction delta(-0.2);
    // round(2^7 (Delta + 1)) = round(102.4) = 102.
    EXPECT_EQ(peak_bin(delta, 7), 102U);
    const std::vector<double> probs = ancilla_distribution(delta, 7);
    EXPECT_EQ(std::max_element(probs.begin(), probs.end()) - probs.begin(),
              102);
}

TEST(SignError, ZeroAndExact) {
    EXPECT_EQ(sign_error_prob(PhaseFraction(0.0), 5), 0.0);
    EXPECT_EQ(sign_error_prob(PhaseFraction(0.25), 4), 0.0);
    EXPECT_EQ(sign_error_prob(PhaseFraction(-0.25), 4), 0.0);
}

TEST(SignError, PointOneAcrossT) {
    // Direct-summation values; not monotone between t = 7 and t = 8.
    const double frozen[3] = {0.0028274548, 0.0037630679, 0.0007247226};
    for (int t = 7; t <= 9; ++t) {
        const double got = sign_error_prob(PhaseFraction(0.1), t);
        const std::vector<double> ref = oracle::dft_ancilla_probs(0.1, t);
        double upper = 0.0;
        for (std::size_t d = ref.size() / 2; d < ref.size(); ++d) {
            upper += ref[d];
        }
        EXPECT_NEAR(got, upper, 1e-12) << "t=" << t;
        EXPECT_NEAR(got, frozen[t - 7], 1e-9) << "t=" << t;
        EXPECT_LE(got, 0.05);
    }
    EXPECT_LT(sign_error_prob(PhaseFraction(0.1), 9),
              sign_error_prob(PhaseFraction(0.1), 7));
}

TEST(SignError, DecreasesAtTheMinimumGap) {
    const PhaseFraction delta(2.0 / 45);
    const double e5 = sign_error_prob(delta, 5);
    const double e7 = sign_error_prob(delta, 7);
    const double e9 = sign_error_prob(delta, 9);
    EXPECT_NEAR(e5, 0.049792, 1e-6);
    EXPECT_NEAR(e7, 0.011403, 1e-6);
    EXPECT_NEAR(e9, 0.0021309, 1e-7);
    EXPECT_GT(e5, e7);
    EXPECT_GT(e7, e9);
}

TEST(SignError, NegativeDeltaCountsLowerHalf) {
    const PhaseFraction delta(-0.1);
    const std::vector<double> probs = ancilla_distribution(delta, 6);
    double lower = 0.0;
    for (std::size_t d = 0; d < 32; ++d) {
        lower += probs[d];
    }
    EXPECT_NEAR(sign_error_prob(delta, 6), lower, 1e-12);
    EXPECT_NEAR(replace_prob(delta, 6), 1.0 - lower, 1e-12);
}

TEST(ChooseT, Examples) {
    EXPECT_EQ(choose_t(2.0 / 45), 7);
    EXPECT_EQ(choose_t(0.25, 0), 2);
    EXPECT_EQ(choose_t(0.01), 9);
    EXPECT_THROW(choose_t(0.5), ArgumentError);
    EXPECT_THROW(choose_t(0.0), ArgumentError);
}

// Property: normalization and |amplitude|^2 = probability on a Delta grid.
TEST(QpeProperty, NormalizationAndConsistency) {
    for (int t = 2; t <= 12; ++t) {
        for (int k = 0; k < 64; ++k) {
            gen::Source src(20 + t, k);
            const PhaseFraction delta(src.real(-0.5, 0.5));
            const std::vector<double> probs = ancilla_distribution(delta, t);
            ASSERT_NEAR(Sum(probs), 1.0, 1e-10);
            for (std::uint64_t d = 0; d < probs.size(); d += 1 + probs.size() / 16) {
                EXPECT_NEAR(std::norm(ancilla_amplitude(d, delta, t)),
                            ancilla_probability(d, delta, t), 1e-12);
            }
        }
    }
}

TEST(QpeProperty, PeakDominance) {
    for (int t : {2, 3, 5, 8, 11}) {
        for (int k = 0; k < 400; ++k) {
            const PhaseFraction delta(-0.5 + k / 400.0);
            const std::vector<double> probs = ancilla_distribution(delta, t);
            const std::uint64_t peak = peak_bin(delta, t);
            EXPECT_GE(probs[peak], 4.0 / (kPi * kPi) - 1e-12);
            // Half-integer 2^t Delta gives two equal peaks.
            EXPECT_NEAR(*std::max_element(probs.begin(), probs.end()),
                        probs[peak], 1e-12);
        }
    }
}

// The sign bit has two decision boundaries, Delta = 0 and Delta = -1/2 (the
// wrap point), so the bound holds at distance > b from both.
TEST(QpeProperty, SignErrorBoundedAwayFromBoundaries) {
    for (double b : {0.2, 0.1, 2.0 / 45, 0.01}) {
        const int t = choose_t(b);
        for (int k = 0; k < 500; ++k) {
            const double delta = -0.5 + k / 500.0;
            if (std::abs(delta) <= b || std::abs(delta) >= 0.5 - b) {
                continue;
            }
            EXPECT_LE(sign_error_prob(PhaseFraction(delta), t), 0.05)
                << "b=" << b << " delta=" << delta;
        }
    }
}

TEST(QpeProperty, SignErrorRisesNearTheWrapPoint) {
    // Just below 1/2 the peak straddles the wrap and the sign reads wrong.
    EXPECT_GT(sign_error_prob(PhaseFraction(0.496), choose_t(0.1)), 0.5);
    EXPECT_GT(sign_error_prob(PhaseFraction(-0.498), choose_t(2.0 / 45)), 0.05);
}

TEST(QpeProperty, FirstBitIsUpperHalf) {
    for (int t = 2; t <= 10; ++t) {
        const std::uint64_t half = std::uint64_t{1} << (t - 1);
        for (std::uint64_t d = 0; d < 2 * half; ++d) {
            EXPECT_EQ(replaces(d, t), d >= half);
        }
    }
}

} // namespace
} // namespace cnr
