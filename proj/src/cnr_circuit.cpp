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

#include "cnr/cnr_circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "cnr/errors.hpp"

namespace cnr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> register_energies(const ProblemInstance &inst) {
    const std::uint64_t total = std::uint64_t{1} << inst.num_bits();
    std::vector<double> e(total);
    for (std::uint64_t z = 0; z < total; ++z) {
        e[z] = inst.energy(z);
    }
    return e;
}

void check_data_register(const Register &reg, const ProblemInstance &inst) {
    if (reg.width != inst.num_bits()) {
        throw ArgumentError("register '" + reg.name + "' has width " +
                            std::to_string(reg.width) + ", instance has n = " +
                            std::to_string(inst.num_bits()));
    }
}

bool overlaps(const Register &a, const Register &b) {
    return a.offset < b.offset + b.width && b.offset < a.offset + a.width;
}

} // namespace

StateVector uniform_init(const RegisterLayout &layout,
                         const std::vector<std::string> &registers) {
    StateVector state(layout);
    for (const std::string &name : registers) {
        const Register &reg = layout.get(name);
        for (int k = 0; k < reg.width; ++k) {
            state.hadamard(reg.qubit(k));
        }
    }
    return state;
}

void apply_inverse_qft(StateVector &state, const Register &reg) {
    const int t = reg.width;
    for (int j = 0; j < t / 2; ++j) {
        state.swap(reg.qubit(j), reg.qubit(t - 1 - j));
    }
    for (int j = t - 1; j >= 0; --j) {
        for (int k = t - 1; k > j; --k) {
            state.controlled_phase(reg.qubit(k), reg.qubit(j),
                                   -kTwoPi / std::ldexp(1.0, k - j + 1));
        }
        state.hadamard(reg.qubit(j));
    }
}

void apply_comparison(StateVector &state, const ProblemInstance &inst,
                      const CnrConfig &config, const Register &t_reg,
                      const Register &s_reg, const Register &anc_reg) {
    config.check();
    check_data_register(t_reg, inst);
    check_data_register(s_reg, inst);
    if (anc_reg.width != config.t) {
        throw ArgumentError("ancilla register width differs from t");
    }
    if (overlaps(t_reg, s_reg) || overlaps(t_reg, anc_reg) ||
        overlaps(s_reg, anc_reg)) {
        throw ArgumentError("comparison registers must be disjoint");
    }
    const std::vector<double> energies = register_energies(inst);
    const auto [lo, hi] = std::minmax_element(energies.begin(), energies.end());
    // The extreme differences bound every Delta; both must be in range.
    (void)delta_of(config, *lo, *hi);
    (void)delta_of(config, *hi, *lo);

    const RegisterLayout &layout = state.layout();
    state.apply_diagonal([&](std::uint64_t i) {
        const double zt = energies[layout.extract(i, t_reg)];
        const double zs = energies[layout.extract(i, s_reg)];
        const auto d = static_cast<double>(layout.extract(i, anc_reg));
        const double delta = delta_of(config, zt, zs).value();
        return std::polar(1.0, kTwoPi * delta * d);
    });
    apply_inverse_qft(state, anc_reg);
}

void apply_replacement(StateVector &state, const Register &t_reg,
                       const Register &s_reg, int control_qubit) {
    if (t_reg.width != s_reg.width) {
        throw ArgumentError("target and support registers differ in width");
    }
    if (overlaps(t_reg, s_reg)) {
        throw ArgumentError("target and support registers overlap");
    }
    const auto inside = [control_qubit](const Register &r) {
        return control_qubit >= r.offset && control_qubit < r.offset + r.width;
    };
    if (inside(t_reg) || inside(s_reg)) {
        throw ArgumentError("control qubit lies inside a data register");
    }
    for (int k = 0; k < t_reg.width; ++k) {
        state.toffoli(control_qubit, t_reg.qubit(k), s_reg.qubit(k));
        state.toffoli(control_qubit, s_reg.qubit(k), t_reg.qubit(k));
    }
}

void apply_cnr(StateVector &state, const ProblemInstance &inst,
               const CnrConfig &config, const Register &t_reg,
               const Register &s_reg, const Register &anc_reg) {
    apply_comparison(state, inst, config, t_reg, s_reg, anc_reg);
    apply_replacement(state, t_reg, s_reg, anc_reg.qubit(0));
}

std::int64_t circuit_width(int n, int t, int p) {
    if (n < 1 || t < 1 || p < 0 || p > 30) {
        throw ArgumentError("circuit width needs n, t >= 1 and 0 <= p <= 30");
    }
    const std::int64_t regs = std::int64_t{1} << p;
    return regs * n + (regs - 1) * t;
}

RegisterLayout algorithm_layout(int n, int t, int p) {
    const std::int64_t width = circuit_width(n, t, p);
    if (width > kMaxStateQubits) {
        throw ResourceError("p = " + std::to_string(p) + " circuit needs " +
                            std::to_string(width) + " qubits, guard is " +
                            std::to_string(kMaxStateQubits));
    }
    RegisterLayout layout;
    const int regs = 1 << p;
    for (int r = 0; r < regs; ++r) {
        layout.add("R" + std::to_string(r), n);
    }
    for (int c = 0; c + 1 < regs; ++c) {
        layout.add("A" + std::to_string(c), t);
    }
    return layout;
}

std::vector<double> run_algorithm(const ProblemInstance &inst,
                                  const CnrConfig &config, int p) {
    config.check();
    const int n = inst.num_bits();
    const RegisterLayout layout = algorithm_layout(n, config.t, p);
    config.validate_for(enumerate_spectrum(inst));

    std::vector<std::string> all;
    for (const Register &r : layout.registers()) {
        all.push_back(r.name);
    }
    StateVector state = uniform_init(layout, all);

    const int regs = 1 << p;
    int ancilla = 0;
    for (int level = 1; level <= p; ++level) {
        const int stride = 1 << (level - 1);
        for (int i = 0; i < regs; i += 2 * stride) {
            apply_cnr(state, inst, config,
                      layout.get("R" + std::to_string(i)),
                      layout.get("R" + std::to_string(i + stride)),
                      layout.get("A" + std::to_string(ancilla++)));
        }
    }
    return state.marginal(layout.get("R0"));
}

LevelDistribution t_marginal_levels(const std::vector<double> &dist,
                                    const EnergySpectrum &spec) {
    if (dist.size() != spec.total_states()) {
        throw ArgumentError("distribution length differs from 2^n");
    }
    std::vector<double> levels(spec.num_levels(), 0.0);
    for (std::uint64_t z = 0; z < dist.size(); ++z) {
        levels[spec.level_of_index(z) - 1] += dist[z];
    }
    return {std::move(levels), 0};
}

double total_variation(const LevelDistribution &a,
                       const LevelDistribution &b) {
    if (a.num_levels() != b.num_levels()) {
        throw ArgumentError("total variation needs equal level counts");
    }
    double s = 0.0;
    for (std::size_t k = 0; k < a.num_levels(); ++k) {
        s += std::abs(a.probs()[k] - b.probs()[k]);
    }
    return 0.5 * s;
}

double exact_phase_scale(const EnergySpectrum &spec, int t) {
    std::int64_t g = 0;
    const double e1 = spec.energy(1);
    for (const EnergyLevel &lv : spec.levels()) {
        const double gap = lv.energy - e1;
        if (gap != std::nearbyint(gap)) {
            throw ArgumentError("exact phases need integer energy gaps");
        }
        g = std::gcd(g, static_cast<std::int64_t>(gap));
    }
    if (g == 0) {
        return 1.0 / kTwoPi;
    }
    const auto r = static_cast<std::int64_t>(spec.range()) / g;
    int s = 0;
    while ((std::int64_t{1} << s) <= 2 * r) {
        ++s;
    }
    if (s > t) {
        throw ArgumentError("t = " + std::to_string(t) +
                            " is too small for exact phases (needs " +
                            std::to_string(s) + ")");
    }
    return static_cast<double>(g) * std::ldexp(1.0, s) / kTwoPi;
}

} // namespace cnr
