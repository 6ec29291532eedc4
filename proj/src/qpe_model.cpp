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

#include "cnr/qpe_model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cnr/errors.hpp"

namespace cnr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSingularTol = 1e-12;

void check_t(int t) {
    if (t < 1 || t > kMaxAncillaBits) {
        throw ArgumentError("ancilla width t must be in [1, " +
                            std::to_string(kMaxAncillaBits) + "]");
    }
}

// sin(pi * r) with the argument reduced to [0, 1) first.
double sin_pi(double r) {
    const double k = std::floor(r);
    const double s = std::sin(kPi * (r - k));
    return std::fmod(k, 2.0) == 0.0 ? s : -s;
}

struct Offset {
    double r;           // 2^t Delta - D(x), reduced mod 2^t
    bool singular;      // r is an integer
    bool peak;          // r is zero
};

Offset offset(std::uint64_t d, double delta, int t) {
    const double bins = std::ldexp(1.0, t);
    if (static_cast<double>(d) >= bins) {
        throw ArgumentError("outcome value exceeds 2^t - 1");
    }
    // The amplitude is 2^t-periodic in r; reducing to [-2^(t-1), 2^(t-1)]
    // (exact in floating point) keeps sin(pi r / 2^t) away from +-pi.
    double r = std::ldexp(delta, t) - static_cast<double>(d);
    r -= bins * std::nearbyint(r / bins);
    const double nearest = std::nearbyint(r);
    if (std::abs(r - nearest) <= kSingularTol) {
        return {r, true, nearest == 0.0};
    }
    return {r, false, false};
}

} // namespace

void CnrConfig::check() const {
    if (t < 2 || t > kMaxAncillaBits) {
        throw ArgumentError("CnrConfig: t must be in [2, " +
                            std::to_string(kMaxAncillaBits) + "]");
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw ArgumentError("CnrConfig: scale factor M must be positive");
    }
    if (!(accuracy > 0.0) || !std::isfinite(accuracy)) {
        throw ArgumentError("CnrConfig: accuracy b must be positive");
    }
}

double min_scale(const EnergySpectrum &spec) { return spec.range() / kPi; }

void CnrConfig::validate_for(const EnergySpectrum &spec) const {
    check();
    // Differences span [-range, range]; the largest must map below 1/2.
    const double widest = spec.range() / (2.0 * kPi * scale);
    if (!(widest < 0.5)) {
        std::ostringstream ss;
        ss.precision(17);
        ss << "scale factor M = " << scale
           << " must exceed (C_max - C_min) / pi = " << min_scale(spec)
           << " (largest |Delta| would be " << widest << ")";
        throw ConfigError(ss.str());
    }
}

PhaseFraction::PhaseFraction(double delta) : delta_(delta) {
    if (delta_ < -0.5 && delta_ >= -0.5 - kSingularTol) {
        delta_ = -0.5;
    }
    if (!(delta_ >= -0.5 && delta_ < 0.5)) {
        std::ostringstream ss;
        ss.precision(17);
        ss << "phase fraction " << delta
           << " outside [-1/2, 1/2); scale factor M too small";
        throw ConfigError(ss.str());
    }
}

PhaseFraction delta_of(const CnrConfig &config, double c_target,
                       double c_support) {
    return PhaseFraction((c_support - c_target) / (2.0 * kPi * config.scale));
}

PhaseFraction wrapped_delta_of(const CnrConfig &config, double c_target,
                               double c_support) {
    const double raw = (c_support - c_target) / (2.0 * kPi * config.scale);
    const double wrapped = raw - std::floor(raw + 0.5);
    return PhaseFraction(wrapped >= 0.5 ? wrapped - 1.0 : wrapped);
}

std::complex<double> ancilla_amplitude(std::uint64_t d, PhaseFraction delta,
                                       int t) {
    check_t(t);
    const Offset o = offset(d, delta.value(), t);
    if (o.singular) {
        return o.peak ? 1.0 : 0.0;
    }
    const double bins = std::ldexp(1.0, t);
    const double ratio = sin_pi(o.r) / (bins * std::sin(kPi * o.r / bins));
    return std::polar(ratio, kPi * o.r * (1.0 - 1.0 / bins));
}

double ancilla_probability(std::uint64_t d, PhaseFraction delta, int t) {
    check_t(t);
    const Offset o = offset(d, delta.value(), t);
    if (o.singular) {
        return o.peak ? 1.0 : 0.0;
    }
    // (1 - cos 2 pi r) / (1 - cos(2 pi r / 2^t)) written as a ratio of
    // squared sines, which has no cancellation near the peak.
    const double bins = std::ldexp(1.0, t);
    const double num = sin_pi(o.r);
    const double den = bins * std::sin(kPi * o.r / bins);
    return (num * num) / (den * den);
}

std::vector<double> ancilla_distribution(PhaseFraction delta, int t) {
    check_t(t);
    const std::uint64_t bins = std::uint64_t{1} << t;
    std::vector<double> probs(bins);
    for (std::uint64_t d = 0; d < bins; ++d) {
        probs[d] = ancilla_probability(d, delta, t);
    }
    return probs;
}

std::uint64_t peak_bin(PhaseFraction delta, int t) {
    check_t(t);
    const auto bins = static_cast<long long>(std::uint64_t{1} << t);
    const long long r = std::llround(std::ldexp(delta.value(), t));
    return static_cast<std::uint64_t>(((r % bins) + bins) % bins);
}

bool replaces(std::uint64_t d, int t) {
    return ((d >> (t - 1)) & 1U) != 0;
}

double replace_prob(PhaseFraction delta, int t) {
    check_t(t);
    const std::uint64_t bins = std::uint64_t{1} << t;
    double mass = 0.0;
    for (std::uint64_t d = bins / 2; d < bins; ++d) {
        mass += ancilla_probability(d, delta, t);
    }
    return mass;
}

double sign_error_prob(PhaseFraction delta, int t) {
    check_t(t);
    const std::uint64_t bins = std::uint64_t{1} << t;
    const bool negative = delta.value() < 0.0;
    const std::uint64_t lo = negative ? 0 : bins / 2;
    const std::uint64_t hi = negative ? bins / 2 : bins;
    double mass = 0.0;
    for (std::uint64_t d = lo; d < hi; ++d) {
        mass += ancilla_probability(d, delta, t);
    }
    return mass;
}

int choose_t(double accuracy, int guard) {
    if (!(accuracy > 0.0 && accuracy < 0.5)) {
        throw ArgumentError("accuracy b must satisfy 0 < b < 1/2");
    }
    if (guard < 0) {
        throw ArgumentError("guard bits must be nonnegative");
    }
    return static_cast<int>(std::ceil(std::log2(1.0 / accuracy))) + guard;
}

} // namespace cnr
