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
 * Gate-level simulation of comparison, replacement, CNR and the p-level
 * tournament on a StateVector.
 *
 * The p-level circuit holds 2^p data registers R0 .. R(2^p - 1) of n qubits,
 * followed by one fresh t-qubit ancilla block per CNR (2^p - 1 in total).
 * Level l pairs survivors (R_i, R_{i + 2^(l-1)}) for i a multiple of 2^l,
 * with R_i as target; R0 carries the final answer.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cnr/cost_model.hpp"
#include "cnr/qpe_model.hpp"
#include "cnr/recursion.hpp"
#include "cnr/statevector.hpp"

namespace cnr {

/// Fresh state with the listed registers in uniform superposition.
StateVector uniform_init(const RegisterLayout &layout,
                         const std::vector<std::string> &registers);

/// Inverse QFT on `reg`, built from Hadamards, controlled phases and swaps.
void apply_inverse_qft(StateVector &state, const Register &reg);

/**
 * Phase kick of 2 pi Delta(z_t, z_s) * D(x) onto the ancilla (the product of
 * controlled exp(i 2^j (C_s - C_t) / M)), followed by the inverse QFT on the
 * ancilla register. The ancilla must already be in uniform superposition.
 * Throws ConfigError when some Delta leaves [-1/2, 1/2).
 */
void apply_comparison(StateVector &state, const ProblemInstance &inst,
                      const CnrConfig &config, const Register &t_reg,
                      const Register &s_reg, const Register &anc_reg);

/// Bitwise controlled overwrite: per bit, Toffoli(c, t_i -> s_i) then
/// Toffoli(c, s_i -> t_i). On control = 1: (z_t, z_s) -> (z_s, z_s ^ z_t).
void apply_replacement(StateVector &state, const Register &t_reg,
                       const Register &s_reg, int control_qubit);

/// Comparison followed by replacement controlled by the first ancilla qubit.
void apply_cnr(StateVector &state, const ProblemInstance &inst,
               const CnrConfig &config, const Register &t_reg,
               const Register &s_reg, const Register &anc_reg);

/// 2^p n + (2^p - 1) t.
std::int64_t circuit_width(int n, int t, int p);

/// Builds the register layout used by run_algorithm().
RegisterLayout algorithm_layout(int n, int t, int p);

/**
 * Full p-level circuit; returns the exact probability of every basis state of
 * the final target register R0. Throws ResourceError when the width exceeds
 * kMaxStateQubits.
 */
std::vector<double> run_algorithm(const ProblemInstance &inst,
                                  const CnrConfig &config, int p);

/// Sums basis-state probabilities by energy level.
LevelDistribution t_marginal_levels(const std::vector<double> &dist,
                                    const EnergySpectrum &spec);

/// Total variation distance between two level distributions.
double total_variation(const LevelDistribution &a, const LevelDistribution &b);

/**
 * Scale factor making every Delta an exact t-bit fraction, for instances
 * with integer energies: with g the gcd of the level gaps and r the range in
 * units of g, M = g 2^s / (2 pi) for the smallest s with 2^s > 2r.
 * Throws ArgumentError when energies are not integers or s > t.
 */
double exact_phase_scale(const EnergySpectrum &spec, int t);

} // namespace cnr
