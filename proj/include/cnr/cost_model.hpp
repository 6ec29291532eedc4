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
 * 2-local Ising cost functions and their exact energy spectra.
 *
 * Bit convention: a string z = z_1 z_2 ... z_n is stored in an integer with
 * z_1 as the most significant bit. Bit value 0 maps to spin +1 and bit value
 * 1 to spin -1, so that the cost operator is diagonal in the Pauli-Z basis.
 *
 * Energy levels are numbered from 1 (ground) to G (top) in every public
 * function that takes or returns a level number. Containers indexed by level
 * store level a at position a - 1.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cnr {

/// Largest n for which exhaustive enumeration is attempted.
inline constexpr int kMaxEnumerationBits = 26;
/// Largest n for which per-level member lists are kept.
inline constexpr int kMaxMemberBits = 20;
/// Default relative grouping tolerance for spectrum levels.
inline constexpr double kDefaultLevelTolerance = 1e-9;

/// Fixed-width bit string, z_1 stored as the most significant bit.
class BitString {
  public:
    BitString(std::uint64_t value, int width);

    /// Parses a string of '0'/'1' characters, leftmost character is z_1.
    static BitString parse(std::string_view text);

    [[nodiscard]] std::uint64_t value() const { return value_; }
    [[nodiscard]] int width() const { return width_; }
    /// 1-based bit access, k = 1 is the leftmost (most significant) bit.
    [[nodiscard]] int bit(int k) const;
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const BitString &, const BitString &) = default;

  private:
    std::uint64_t value_;
    int width_;
};

/// One coupling w * Z_i Z_j, indices 1-based with i < j.
struct Term {
    int i;
    int j;
    double w;

    friend bool operator==(const Term &, const Term &) = default;
};

/**
 * An n-variable cost function C(z) = sum_terms w * s_i * s_j.
 *
 * Terms are validated on construction: 1 <= i < j <= n, no repeated pair,
 * n >= 2. Constant offsets are not representable; they only shift every
 * energy by the same amount.
 */
class ProblemInstance {
  public:
    ProblemInstance(int n, std::vector<Term> terms, std::string label = {},
                    std::optional<std::uint64_t> seed = std::nullopt);

    [[nodiscard]] int num_bits() const { return n_; }
    [[nodiscard]] std::span<const Term> terms() const { return terms_; }
    [[nodiscard]] const std::string &label() const { return label_; }
    [[nodiscard]] std::optional<std::uint64_t> seed() const { return seed_; }

    /// Cost of the basis string with integer encoding z (no width check).
    [[nodiscard]] double energy(std::uint64_t z) const;

    friend bool operator==(const ProblemInstance &a,
                           const ProblemInstance &b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_ && a.label_ == b.label_ &&
               a.seed_ == b.seed_;
    }

  private:
    int n_;
    std::vector<Term> terms_;
    std::string label_;
    std::optional<std::uint64_t> seed_;
    // (shift of z_i, shift of z_j) per term, aligned with terms_.
    std::vector<std::pair<int, int>> shifts_;
};

/// C(z). Throws ArgumentError when z.width() != n.
double evaluate(const ProblemInstance &inst, const BitString &z);

struct EnergyLevel {
    double energy;
    std::uint64_t degeneracy;
    /// Basis strings in this level; empty when members were not retained.
    std::vector<std::uint64_t> members;
};

/**
 * Ascending distinct energies of a cost function with their degeneracies.
 *
 * Either built by enumerate_spectrum() from an instance (which is kept for
 * later lookups) or constructed directly from stored level data.
 */
class EnergySpectrum {
  public:
    /// `tolerance` is the absolute grouping tolerance used to match energies.
    EnergySpectrum(int n, std::vector<EnergyLevel> levels, double tolerance,
                   std::optional<ProblemInstance> source = std::nullopt);

    [[nodiscard]] int num_bits() const { return n_; }
    [[nodiscard]] std::uint64_t total_states() const {
        return std::uint64_t{1} << n_;
    }
    /// G.
    [[nodiscard]] std::size_t num_levels() const { return levels_.size(); }
    [[nodiscard]] std::span<const EnergyLevel> levels() const {
        return levels_;
    }
    [[nodiscard]] const EnergyLevel &level(std::size_t a) const;
    [[nodiscard]] double energy(std::size_t a) const {
        return level(a).energy;
    }
    [[nodiscard]] std::uint64_t degeneracy(std::size_t a) const {
        return level(a).degeneracy;
    }
    [[nodiscard]] double c_min() const { return levels_.front().energy; }
    [[nodiscard]] double c_max() const { return levels_.back().energy; }
    [[nodiscard]] double range() const { return c_max() - c_min(); }
    [[nodiscard]] double tolerance() const { return tolerance_; }

    /// Number of basis strings in levels 1..a (A_beta for a = beta + 1).
    [[nodiscard]] std::uint64_t states_up_to(std::size_t a) const;
    /// Number of basis strings in levels a+1..G.
    [[nodiscard]] std::uint64_t states_above(std::size_t a) const;

    /// Level whose energy matches e within tolerance; InternalError if none.
    [[nodiscard]] std::size_t level_of_energy(double e) const;
    [[nodiscard]] bool has_members() const { return !index_to_level_.empty(); }
    [[nodiscard]] const std::optional<ProblemInstance> &source() const {
        return source_;
    }
    /// Level of the basis string with integer encoding z.
    [[nodiscard]] std::size_t level_of_index(std::uint64_t z) const;

  private:
    int n_;
    std::vector<EnergyLevel> levels_;
    double tolerance_;
    std::optional<ProblemInstance> source_;
    std::vector<std::uint64_t> cumulative_;  // cumulative_[a] = A for 1..a
    std::vector<std::uint32_t> index_to_level_;  // 1-based, when members kept
};

/**
 * Evaluates all 2^n strings and groups energies into levels.
 *
 * Two values land in the same level when they differ from the level's lowest
 * value by at most tol * max(1, C_max - C_min). Members are retained for
 * n <= kMaxMemberBits. Throws ResourceError for n > kMaxEnumerationBits.
 */
EnergySpectrum enumerate_spectrum(const ProblemInstance &inst,
                                  double tol = kDefaultLevelTolerance);

/// 1-based level of z. Throws ArgumentError on width mismatch.
std::size_t level_of(const EnergySpectrum &spec, const BitString &z);

} // namespace cnr
