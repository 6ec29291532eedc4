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
 * Monte Carlo emulation of the CNR tournament at sizes the state vector
 * cannot reach.
 *
 * After a CNR every basis component carries distinct (target, support,
 * ancilla) contents, so branches never interfere and the target register's
 * statistics follow a classical process: draw 2^p independent uniform
 * strings, then play the bracket. In IdealSign mode the lower cost wins and a
 * tie keeps the target; in QpeSampled mode each match draws a full t-bit
 * phase-estimation outcome x ~ Pr(x; Delta) and replaces iff x_1 = 1.
 */

#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "cnr/cost_model.hpp"
#include "cnr/metrics.hpp"
#include "cnr/qpe_model.hpp"
#include "cnr/rng.hpp"

namespace cnr {

/// Largest n accepted by the emulator.
inline constexpr int kMaxEmulatorBits = 30;
/// Largest tournament depth accepted by the emulator.
inline constexpr int kMaxEmulatorDepth = 24;

enum class ComparisonMode { IdealSign, QpeSampled };

/// Adjacent pairs survivors as in the circuit layout (R_i vs R_{i+stride});
/// Folded pairs R_i with R_{i + half} at every level.
enum class BracketOrder { Adjacent, Folded };

std::string to_string(ComparisonMode mode);
ComparisonMode parse_mode(const std::string &text);

struct EmulatorRun {
    int p = 0;
    std::uint64_t samples = 1;
    std::uint64_t seed = 0;
    ComparisonMode mode = ComparisonMode::IdealSign;
    /// Only read in QpeSampled mode.
    CnrConfig config{7, 1.0, 0.05};
    BracketOrder order = BracketOrder::Adjacent;
    /// QpeSampled only: reduce out-of-range phase fractions modulo 1 instead
    /// of rejecting the scale factor. Models aliasing under a too-small M.
    bool wrap_phase = false;
    /// Worker threads; 0 picks hardware concurrency. Output does not depend
    /// on this value.
    unsigned threads = 0;
};

/// Survivor counts per energy level with binomial standard errors.
class EmpiricalDistribution {
  public:
    EmpiricalDistribution(std::vector<double> energies,
                          std::vector<std::uint64_t> counts,
                          std::uint64_t samples);

    [[nodiscard]] std::size_t num_levels() const { return counts_.size(); }
    [[nodiscard]] std::uint64_t samples() const { return samples_; }
    [[nodiscard]] const std::vector<double> &energies() const {
        return energies_;
    }
    [[nodiscard]] const std::vector<std::uint64_t> &counts() const {
        return counts_;
    }
    /// Empirical P(a), 1-based.
    [[nodiscard]] double prob(std::size_t a) const;
    /// sqrt(P (1 - P) / N).
    [[nodiscard]] double std_error(std::size_t a) const;
    /// Empirical mass on levels 1..a.
    [[nodiscard]] std::uint64_t count_up_to(std::size_t a) const;

  private:
    std::vector<double> energies_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t samples_;
};

/**
 * Draws phase-estimation outcomes by inverse CDF.
 *
 * Bins are visited outward from the peak (d0, d0+1, d0-1, d0+2, ...), which
 * keeps uncached draws cheap. CDFs in that order are cached per Delta
 * (rounded to 1e-12) up to a memory cap; cached and uncached draws return the
 * same outcome for the same uniform variate.
 */
class PhaseSampler {
  public:
    explicit PhaseSampler(int t);

    [[nodiscard]] int t() const { return t_; }
    std::uint64_t sample(PhaseFraction delta, Rng &rng);
    /// Outcome for a given uniform variate u in [0, 1).
    std::uint64_t outcome_for(PhaseFraction delta, double u);

  private:
    [[nodiscard]] std::uint64_t bin_at(std::uint64_t peak,
                                       std::uint64_t position) const;

    int t_;
    std::uint64_t bins_;
    std::size_t max_entries_;
    std::unordered_map<long long, std::vector<double>> cache_;
};

/**
 * Runs `run.samples` independent tournaments. When `spec` is given the result
 * is aligned with its levels (zero-count levels included); otherwise levels
 * are the distinct observed survivor energies.
 */
EmpiricalDistribution emulate(const ProblemInstance &inst,
                              const EmulatorRun &run,
                              const EnergySpectrum *spec = nullptr);

struct EmpiricalNeighborhood {
    int beta;
    int p;
    std::uint64_t in_neighborhood;
    double cum_prob;
    double cum_prob_se;
    double avg_rel_error;
    double avg_rel_error_se;
    double worst_case_cond;
    double worst_case_cond_se;
};

/// Neighborhood statistics of an emulation aligned with `spec`.
EmpiricalNeighborhood summarize(const EmpiricalDistribution &dist,
                                const EnergySpectrum &spec, int beta, int p);

struct TableRow {
    int p;
    EmpiricalNeighborhood empirical;
    NeighborhoodReport exact;
};

/// One emulation per p in `depths`, each with `base` settings but its own p.
std::vector<TableRow> table_report(const ProblemInstance &inst,
                                   const EnergySpectrum &spec,
                                   const EmulatorRun &base,
                                   const std::vector<int> &depths, int beta);

} // namespace cnr
