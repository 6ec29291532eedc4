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
 * Text formats shared by the command-line tool: argument parsing helpers and
 * CSV/JSON builders. Stored numbers use shortest round-trip decimal form;
 * the only rounded column is the 4-decimal display copy of the cumulative
 * probability.
 *
 * CSV schemas (LF line endings, header row first):
 *   cnrqo-spectrum/1   zeta,z,bits,energy,level
 *   cnrqo-levels/1     p,level,energy,degeneracy,prob,prefix,tail
 *   cnrqo-lines/1      a,energy,critical,bound
 *   cnrqo-table/1      neighborhood,p,beta_plus_1,a_beta,cum_prob,
 *                      cum_prob_4dp,cum_complement,lower_bound,
 *                      avg_rel_error,worst_case_cond
 *                      [,emp_* columns when emulated]
 *   cnrqo-emulate/1    p,mode,t,scale,samples,beta_plus_1,a_beta,cum_prob,
 *                      cum_prob_se,exact_cum_prob,avg_rel_error,
 *                      avg_rel_error_se,exact_avg_rel_error,
 *                      worst_case_cond,worst_case_cond_se,
 *                      exact_worst_case_cond
 *   cnrqo-survivors/1  p,energy,count,prob,se
 *   cnrqo-qpe/1        bin,x,prob
 *   cnrqo-simulate/1   z,bits,energy,level,prob
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cnr/cost_model.hpp"
#include "cnr/emulator.hpp"
#include "cnr/metrics.hpp"
#include "cnr/qpe_model.hpp"

namespace cnr {

inline constexpr const char *kToolVersion = "0.1.0";
inline constexpr const char *kManifestSchema = "cnrqo-manifest/1";

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);
/// Fixed-point with `digits` decimals.
std::string format_fixed(double x, int digits);

/// Decimal ("7.16"), or "K/2pi", "K/(2pi)", "K/(2*pi)", "K/pi".
double parse_scale(const std::string &text);
/// "4..9", "4,5,6" or "7".
std::vector<int> parse_depths(const std::string &text);
/// Nonnegative integer count, scientific notation allowed ("1e6").
std::uint64_t parse_count(const std::string &text);

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(const std::string &bytes);

/// All 2^n strings sorted by energy (ties by index); zeta is the rank.
std::string spectrum_scatter_csv(const ProblemInstance &inst,
                                 const EnergySpectrum &spec);
/// Closed-form level distribution at each depth.
std::string level_distribution_csv(const EnergySpectrum &spec,
                                   const std::vector<int> &depths);
/// True energies against the critical and bound lines, a = 1 .. G.
std::string bound_lines_csv(const EnergySpectrum &spec,
                            const BoundLines &lines);
nlohmann::ordered_json bound_lines_json(const BoundLines &lines,
                                        double eps_r);
nlohmann::ordered_json neighborhood_json(const NeighborhoodReport &r);

/// One row of a neighborhood table; `neighborhood` names how beta was
/// chosen ("bound_line", "true_energies" or "given").
struct LabeledRow {
    std::string neighborhood;
    NeighborhoodReport exact;
    std::optional<EmpiricalNeighborhood> empirical;
};

/// Emulator columns are emitted when every row carries them.
std::string table_csv(const std::vector<LabeledRow> &rows);
std::string emulator_csv(const std::vector<TableRow> &rows,
                         const EmulatorRun &base,
                         const EnergySpectrum &spec);
std::string survivors_csv(int p, const EmpiricalDistribution &dist);
std::string qpe_distribution_csv(PhaseFraction delta, int t);
std::string simulate_csv(const ProblemInstance &inst,
                         const EnergySpectrum &spec,
                         const std::vector<double> &dist);

} // namespace cnr
