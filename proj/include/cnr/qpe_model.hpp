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
 * Closed-form model of the phase-estimation comparison.
 *
 * The comparison kicks the phase 2*pi*Delta*D(x) onto ancilla basis state |x>
 * and applies an inverse QFT to the t ancilla qubits. The outcome x is read
 * most-significant-bit first: x = x_1 x_2 ... x_t, D(x) = sum_j x_j 2^(t-j).
 * Negative Delta wraps into the upper half of the bins, so x_1 alone carries
 * the sign: bins 0 .. 2^(t-1)-1 read "keep target", bins 2^(t-1) .. 2^t-1
 * read "replace".
 */

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "cnr/cost_model.hpp"

namespace cnr {

/// Largest ancilla width handled by the closed-form helpers.
inline constexpr int kMaxAncillaBits = 30;

/// Ancilla width t, scale factor M and comparison accuracy b.
struct CnrConfig {
    int t;
    double scale;
    double accuracy;

    /// Checks t >= 2, M > 0, b > 0. Throws ArgumentError.
    void check() const;
    /// check() plus M > (C_max - C_min) / pi, so every cost difference maps
    /// into [-1/2, 1/2). Throws ConfigError.
    void validate_for(const EnergySpectrum &spec) const;
};

/// (C_max - C_min) / pi; admissible scale factors lie strictly above it.
double min_scale(const EnergySpectrum &spec);

/// Delta = (C(z_s) - C(z_t)) / (2 pi M), restricted to [-1/2, 1/2).
class PhaseFraction {
  public:
    /// Throws ConfigError outside [-1/2, 1/2); values within 1e-12 below
    /// -1/2 are snapped to -1/2.
    explicit PhaseFraction(double delta);
    [[nodiscard]] double value() const { return delta_; }

  private:
    double delta_;
};

PhaseFraction delta_of(const CnrConfig &config, double c_target,
                       double c_support);

/// Phase fraction the hardware actually sees when M is too small: the raw
/// difference reduced modulo 1 into [-1/2, 1/2).
PhaseFraction wrapped_delta_of(const CnrConfig &config, double c_target,
                               double c_support);

/// phi(x; Delta) for the outcome with decimal value `d`.
std::complex<double> ancilla_amplitude(std::uint64_t d, PhaseFraction delta,
                                       int t);
/// |phi(x; Delta)|^2.
double ancilla_probability(std::uint64_t d, PhaseFraction delta, int t);
/// All 2^t outcome probabilities, indexed by D(x).
std::vector<double> ancilla_distribution(PhaseFraction delta, int t);

/// Bin with the largest probability: round(2^t Delta) mod 2^t.
std::uint64_t peak_bin(PhaseFraction delta, int t);

/// True when outcome d has x_1 = 1, i.e. d >= 2^(t-1).
bool replaces(std::uint64_t d, int t);

/// Probability that x_1 misreports the sign of Delta.
double sign_error_prob(PhaseFraction delta, int t);
/// Probability that the outcome has x_1 = 1 (replacement fires).
double replace_prob(PhaseFraction delta, int t);

/// ceil(log2(1/b)) + guard, for 0 < b < 1/2.
int choose_t(double accuracy, int guard = 2);

} // namespace cnr
