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

// Acceptance suite. Prints one [PASS]/[FAIL] line per criterion; with a
// criterion number as argument only that one runs. Exit status is nonzero
// when any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cnr/cli.hpp"
#include "cnr/cnr_circuit.hpp"
#include "cnr/emulator.hpp"
#include "cnr/errors.hpp"
#include "cnr/generators.hpp"
#include "cnr/metrics.hpp"
#include "cnr/qpe_model.hpp"
#include "cnr/recursion.hpp"
#include "cnr/statevector.hpp"
#include "gen.hpp"
#include "oracles.hpp"

namespace {

using namespace cnr;

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;
    std::vector<std::string> info;
};

// Records a failed check; keeps the first few messages.
class Checker {
  public:
    void require(bool ok, const std::string &what) {
        ++checks_;
        if (!ok) {
            ++failures_;
            if (failures_ <= 3) {
                messages_ += (messages_.empty() ? "" : "; ") + what;
            }
        }
    }
    [[nodiscard]] bool ok() const { return failures_ == 0; }
    [[nodiscard]] std::string summary() const {
        std::ostringstream s;
        s << checks_ - failures_ << "/" << checks_ << " checks";
        if (!ok()) {
            s << " (" << messages_ << ")";
        }
        return s.str();
    }

  private:
    int checks_ = 0;
    int failures_ = 0;
    std::string messages_;
};

std::string fmt(double x, int digits = 6) {
    std::ostringstream s;
    s.precision(digits);
    s << x;
    return s.str();
}

Outcome criterion1() {
    Checker c;
    const double gaussian[3] = {0.6066, 0.8452, 0.9760};
    const double xor_cols[3] = {0.9115, 0.9922, 0.9999};
    for (int k = 0; k < 3; ++k) {
        const double g = cumulative_prob(10, 58, 4 + k);
        const double x = cumulative_prob(10, 144, 4 + k);
        c.require(std::abs(g - gaussian[k]) <= 5e-5,
                  "A=58 p=" + std::to_string(4 + k) + " gives " + fmt(g));
        c.require(std::abs(x - xor_cols[k]) <= 5e-5,
                  "A=144 p=" + std::to_string(4 + k) + " gives " + fmt(x));
    }
    for (int p = 7; p <= 9; ++p) {
        c.require(cumulative_prob(10, 58, p) >= 0.999,
                  "A=58 p=" + std::to_string(p) + " below 0.999");
        c.require(cumulative_prob(10, 144, p) >= 0.999,
                  "A=144 p=" + std::to_string(p) + " below 0.999");
    }
    const double comp = cumulative_complement(10, 58, 7);
    c.require(std::abs(comp - 5.7e-4) <= 0.05e-4,
              "complement at p=7 is " + fmt(comp));

    // The same column through the report command on a stored spectrum.
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli({"report", "--spectrum",
                              std::string(CNR_GOLDEN_DIR) + "/spectrum_a58.json",
                              "--p", "4..9", "--beta", "1"},
                             out, err);
    c.require(code == 0, "report exit " + std::to_string(code));
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    const bool has_complement = line.find("cum_complement") != std::string::npos;
    c.require(has_complement, "report lacks complement column");
    std::vector<std::string> cells;
    while (std::getline(lines, line)) {
        std::istringstream row(line);
        std::string cell;
        for (int k = 0; k < 6 && std::getline(row, cell, ','); ++k) {
        }
        cells.push_back(cell);
    }
    const std::vector<std::string> want = {"0.6066", "0.8452", "0.9760",
                                           "0.9994", "1.0000", "1.0000"};
    c.require(cells == want, "report 4 d.p. column differs");
    return {c.ok(), c.summary() + "; 1-P(p=7, A=58) = " + fmt(comp, 3), {}};
}

Outcome criterion2() {
    Checker c;
    const double want = 1.0 - std::exp(-8.0);
    for (int n = 1; n <= 40; ++n) {
        const double b = cumulative_lower_bound(n, 1, n + 3);
        c.require(std::abs(b - want) <= 1e-12, "n=" + std::to_string(n));
        c.require(std::abs(b - 0.9997) < 5e-5, "rounding n=" + std::to_string(n));
    }
    return {c.ok(), c.summary() + "; bound = " + fmt(want, 10), {}};
}

Outcome criterion3() {
    Checker c;
    double worst = 0.0;
    int instances = 0;
    for (std::uint64_t k = 0; k < 24; ++k) {
        gen::Source src(300, k);
        const ProblemInstance inst = gen::integer_instance(src, 2, 6);
        const EnergySpectrum spec = enumerate_spectrum(inst);
        ++instances;
        for (int t : {3, 4}) {
            const CnrConfig config{t, exact_phase_scale(spec, t), 0.1};
            for (int p : {1, 2}) {
                const LevelDistribution sim =
                    t_marginal_levels(run_algorithm(inst, config, p), spec);
                const double tv = total_variation(sim, distribution_at(spec, p));
                worst = std::max(worst, tv);
                c.require(tv <= 1e-9, "case " + std::to_string(k) + " t=" +
                                          std::to_string(t) + " p=" +
                                          std::to_string(p) + " TV " + fmt(tv));
            }
        }
    }
    return {c.ok(),
            c.summary() + "; " + std::to_string(instances) +
                " instances, max TV " + fmt(worst, 3),
            {}};
}

Outcome criterion4() {
    Checker c;
    double worst_norm = 0.0;
    double worst_oracle = 0.0;
    double min_peak = 1.0;
    for (int t : {4, 7, 9}) {
        const auto bins = static_cast<long long>(1) << t;
        for (int k = 0; k < 200; ++k) {
            const double delta = -0.5 + k / 200.0;
            const std::vector<double> probs =
                ancilla_distribution(PhaseFraction(delta), t);
            double sum = 0.0;
            std::size_t arg = 0;
            for (std::size_t d = 0; d < probs.size(); ++d) {
                sum += probs[d];
                if (probs[d] > probs[arg]) {
                    arg = d;
                }
            }
            worst_norm = std::max(worst_norm, std::abs(sum - 1.0));
            c.require(std::abs(sum - 1.0) <= 1e-10, "normalization");
            const long long r = std::llround(std::ldexp(delta, t));
            const auto want = static_cast<std::size_t>(((r % bins) + bins) % bins);
            c.require(arg == want, "peak t=" + std::to_string(t) +
                                       " delta=" + fmt(delta));
            min_peak = std::min(min_peak, probs[arg]);
            c.require(probs[arg] >= 0.405, "peak mass " + fmt(probs[arg]));
            if (k % 10 == 0) {
                const std::vector<double> ref = oracle::dft_ancilla_probs(delta, t);
                for (std::size_t d = 0; d < ref.size(); ++d) {
                    worst_oracle = std::max(worst_oracle, std::abs(ref[d] - probs[d]));
                }
            }
        }
    }
    c.require(worst_oracle <= 1e-10, "direct-sum oracle gap " + fmt(worst_oracle));

    double worst_sim = 0.0;
    for (std::uint64_t k = 0; k < 4; ++k) {
        gen::Source src(400, k);
        const ProblemInstance inst = gen::integer_instance(src, 2, 5);
        const EnergySpectrum spec = enumerate_spectrum(inst);
        for (int t : {4, 7, 9}) {
            const CnrConfig config{t, (spec.range() + src.real(0.1, 3.0)) / kPi,
                                   0.1};
            RegisterLayout layout;
            const Register treg = layout.add("T", 2);
            const Register sreg = layout.add("S", 2);
            const Register areg = layout.add("A", t);
            for (std::uint64_t zt = 0; zt < 4; ++zt) {
                for (std::uint64_t zs = 0; zs < 4; ++zs) {
                    StateVector s(layout);
                    const std::uint64_t idx =
                        layout.deposit(layout.deposit(0, treg, zt), sreg, zs);
                    s.amplitudes()[0] = 0.0;
                    s.amplitudes()[idx] = 1.0;
                    for (int q = 0; q < t; ++q) {
                        s.hadamard(areg.qubit(q));
                    }
                    apply_comparison(s, inst, config, treg, sreg, areg);
                    const PhaseFraction delta =
                        delta_of(config, inst.energy(zt), inst.energy(zs));
                    const std::vector<double> m = s.marginal(areg);
                    for (std::uint64_t d = 0; d < m.size(); ++d) {
                        worst_sim = std::max(
                            worst_sim,
                            std::abs(m[d] - ancilla_probability(d, delta, t)));
                    }
                }
            }
        }
    }
    c.require(worst_sim <= 1e-10, "simulator marginal gap " + fmt(worst_sim));
    return {c.ok(),
            c.summary() + "; max |sum-1| " + fmt(worst_norm, 3) +
                ", min peak " + fmt(min_peak, 4) + ", simulator gap " +
                fmt(worst_sim, 3),
            {}};
}

Outcome criterion5() {
    Checker c;
    std::vector<std::string> info;
    const std::vector<ProblemInstance> instances = {gen_gaussian(10, 1),
                                                    gen_max2xor(10, 0.6, 2)};
    double worst_z = 0.0;
    for (const ProblemInstance &inst : instances) {
        const EnergySpectrum spec = enumerate_spectrum(inst);
        const int beta = beta_from_true_energies(spec, 0.2);
        EmulatorRun base;
        base.samples = 1000000;
        base.seed = 2026;
        double prev_avg = 2.0;
        double prev_wcc = 2.0;
        bool trend = true;
        for (const TableRow &r : table_report(inst, spec, base, {4, 5, 6}, beta)) {
            const auto z = [](double emp, double exact, double se) {
                return se > 0.0 ? std::abs(emp - exact) / se
                                : (emp == exact ? 0.0 : 1e9);
            };
            const double zp = z(r.empirical.cum_prob, r.exact.cum_prob,
                                r.empirical.cum_prob_se);
            const double za = z(r.empirical.avg_rel_error, r.exact.avg_rel_error,
                                r.empirical.avg_rel_error_se);
            const double zw = z(r.empirical.worst_case_cond,
                                r.exact.worst_case_cond,
                                r.empirical.worst_case_cond_se);
            worst_z = std::max({worst_z, zp, za, zw});
            const std::string tag = inst.label().substr(0, 9) + " p=" +
                                    std::to_string(r.p);
            c.require(zp <= 3.0, tag + " cum z=" + fmt(zp, 3));
            c.require(za <= 3.0, tag + " avg z=" + fmt(za, 3));
            c.require(zw <= 3.0, tag + " wcc z=" + fmt(zw, 3));
            trend = trend && r.exact.avg_rel_error <= prev_avg &&
                    r.exact.worst_case_cond <= prev_wcc;
            prev_avg = r.exact.avg_rel_error;
            prev_wcc = r.exact.worst_case_cond;
            info.push_back(inst.label() + " beta=" + std::to_string(beta) +
                           " A=" + std::to_string(r.exact.a_beta) + " p=" +
                           std::to_string(r.p) + " P=" +
                           fmt(r.empirical.cum_prob) + " vs " +
                           fmt(r.exact.cum_prob) + ", avg=" +
                           fmt(r.empirical.avg_rel_error) + " vs " +
                           fmt(r.exact.avg_rel_error) + ", wcc=" +
                           fmt(r.empirical.worst_case_cond) + " vs " +
                           fmt(r.exact.worst_case_cond));
        }
        c.require(trend, inst.label() + " quality measures not nonincreasing");
    }
    return {c.ok(), c.summary() + "; max |z| " + fmt(worst_z, 3), info};
}

Outcome criterion6() {
    Checker c;
    int instances = 0;
    int admitted = 0;
    for (int family = 0; family < 2; ++family) {
        for (std::uint64_t k = 0; k < 50; ++k) {
            gen::Source src(600 + family, k);
            const int n = src.integer(3, 12);
            const ProblemInstance inst =
                family == 0 ? gen_gaussian(n, src.bits())
                            : gen_max2xor(n, src.real(0.4, 1.0), src.bits());
            if (inst.terms().empty()) {
                continue;
            }
            const EnergySpectrum spec = enumerate_spectrum(inst);
            if (spec.num_levels() < 2) {
                continue;
            }
            ++instances;
            std::vector<double> energies;
            for (const EnergyLevel &lv : spec.levels()) {
                energies.push_back(lv.energy);
            }
            for (double eps : {0.2, src.real(0.01, 1.0)}) {
                const BoundLines lines = bound_lines(spec, eps);
                const std::string tag = "family " + std::to_string(family) +
                                        " case " + std::to_string(k);
                c.require(lines.a_tilde == oracle::brute_argmax_slope(energies),
                          tag + " a_tilde");
                const double tol = 1e-9 * spec.range();
                for (int beta = 1; beta <= lines.beta_max; ++beta) {
                    ++admitted;
                    const AffineLine eb = bound_line(spec, eps, beta);
                    for (std::size_t a = 1; a <= spec.num_levels(); ++a) {
                        const double x = static_cast<double>(a);
                        if (a <= static_cast<std::size_t>(beta) + 1) {
                            c.require(eb(x) >= lines.e_critical(x) - tol,
                                      tag + " E^B below E^C");
                            c.require(lines.e_critical(x) >= spec.energy(a) - tol,
                                      tag + " E^C below E_a");
                        }
                        // An admitted line never dips below E^C anywhere.
                        c.require(eb(x) >= lines.e_critical(x) - tol,
                                  tag + " admitted line crosses E^C");
                    }
                    const double rel = (eb(beta + 1.0) - spec.c_min()) / spec.range();
                    c.require(std::abs(rel - eps) <= 1e-12,
                              tag + " endpoint " + fmt(rel - eps, 3));
                }
                // One more would cross below E^C.
                const int next = lines.beta_max + 1;
                if (next <= static_cast<int>(spec.num_levels()) - 1) {
                    c.require(eps * spec.range() / next <
                                  lines.critical_slope * (1 + 1e-12),
                              tag + " beta bound not maximal");
                }
            }
        }
    }
    return {c.ok(),
            c.summary() + "; " + std::to_string(instances) + " instances, " +
                std::to_string(admitted) + " admitted lines",
            {}};
}

Outcome criterion7() {
    Checker c;
    double min_slack = 1e9;
    for (std::uint64_t k = 0; k < 100; ++k) {
        gen::Source src(700, k);
        const int n = src.integer(1, 20);
        const std::uint64_t total = std::uint64_t{1} << n;
        const std::uint64_t a = 1 + src.bits() % total;
        const double eta = src.real(0.01, 0.999);
        const int p = min_p_for(eta, n, a);
        const std::string tag = "case " + std::to_string(k);
        c.require(cumulative_prob(n, a, p) >= eta, tag + " P(min_p) < eta");
        if (p > 0) {
            const double expr = std::log2(static_cast<double>(total) /
                                          static_cast<double>(a) *
                                          -std::log1p(-eta));
            c.require(expr > p - 1, tag + " bound admits min_p - 1");
            min_slack = std::min(min_slack, expr - (p - 1));
            // Conservative only: if P(p - 1) already reaches eta the bound
            // merely asks for one extra level.
            if (cumulative_prob(n, a, p - 1) >= eta) {
                c.require(cumulative_lower_bound(n, a, p - 1) < eta,
                          tag + " lower bound inconsistent");
            }
        }
    }
    return {c.ok(), c.summary() + "; min slack " + fmt(min_slack, 3), {}};
}

struct GapSweep {
    std::vector<double> gap;  // per p in 4..6, max over p reported separately
    double max_gap = 0.0;
};

// |P_qpe - P_ideal| over U(1, beta) for p = 4..6 from emulation with common
// random numbers.
GapSweep qpe_gap(const ProblemInstance &inst, const EnergySpectrum &spec,
                 int beta, int t, double scale, bool wrap,
                 std::uint64_t samples) {
    GapSweep out;
    for (int p = 4; p <= 6; ++p) {
        EmulatorRun run;
        run.p = p;
        run.samples = samples;
        run.seed = 88;
        const double ideal =
            summarize(emulate(inst, run, &spec), spec, beta, p).cum_prob;
        run.mode = ComparisonMode::QpeSampled;
        run.config = {t, scale, 2.0 / 45};
        run.wrap_phase = wrap;
        const double qpe =
            summarize(emulate(inst, run, &spec), spec, beta, p).cum_prob;
        out.gap.push_back(std::abs(qpe - ideal));
        out.max_gap = std::max(out.max_gap, out.gap.back());
    }
    return out;
}

std::string gaps_text(const GapSweep &g) {
    std::string s;
    for (std::size_t k = 0; k < g.gap.size(); ++k) {
        s += (k ? "/" : "") + fmt(g.gap[k], 3);
    }
    return s;
}

Outcome criterion8() {
    Checker c;
    std::vector<std::string> info;
    const ProblemInstance inst = gen_max2xor(10, 0.6, 2);
    const EnergySpectrum spec = enumerate_spectrum(inst);
    const int beta = beta_from_true_energies(spec, 0.2);
    const double literal = 45.0 / (2 * kPi);
    const std::uint64_t samples = 400000;

    std::string detail;
    try {
        const GapSweep g = qpe_gap(inst, spec, beta, 7, literal, false, samples);
        c.require(g.max_gap <= 0.02, "gap " + fmt(g.max_gap));
    } catch (const ConfigError &) {
        c.require(false, "M = 45/(2 pi) rejected: C_max - C_min = " +
                             fmt(spec.range()) + " needs M > " +
                             fmt(min_scale(spec), 4));
    }
    // Same scale with phases reduced modulo 1 (aliasing).
    double prev = 1e9;
    bool shrinks = true;
    for (int t : {5, 7, 9}) {
        const GapSweep g = qpe_gap(inst, spec, beta, t, literal, true, samples);
        info.push_back("wrapped M=45/(2pi) t=" + std::to_string(t) +
                       " gap p=4..6: " + gaps_text(g));
        if (t == 7) {
            c.require(g.max_gap <= 0.02,
                      "wrapped t=7 gap " + fmt(g.max_gap, 3));
        }
        shrinks = shrinks && g.max_gap < prev;
        prev = g.max_gap;
    }
    c.require(shrinks, "wrapped gap does not shrink over t=5,7,9");

    // Informational: an admissible scale factor.
    const double fixed = (spec.range() + 2.0) / kPi;
    prev = 1e9;
    bool fixed_shrinks = true;
    double fixed_t7 = 0.0;
    for (int t : {5, 7, 9}) {
        const GapSweep g = qpe_gap(inst, spec, beta, t, fixed, false, samples);
        info.push_back("admissible M=(range+2)/pi t=" + std::to_string(t) +
                       " gap p=4..6: " + gaps_text(g));
        if (t == 7) {
            fixed_t7 = g.max_gap;
        }
        fixed_shrinks = fixed_shrinks && g.max_gap < prev;
        prev = g.max_gap;
    }
    info.push_back(std::string("admissible M: t=7 gap <= 0.02 ") +
                   (fixed_t7 <= 0.02 ? "holds" : "fails") +
                   ", shrinks over t: " + (fixed_shrinks ? "yes" : "no"));
    return {c.ok(), c.summary(), info};
}

struct Criterion {
    const char *name;
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char **argv) {
    const std::vector<Criterion> criteria = {
        {"table-column reproduction", criterion1},
        {"lower-bound spot check", criterion2},
        {"circuit vs recursion", criterion3},
        {"phase-estimation law", criterion4},
        {"emulator consistency", criterion5},
        {"bound-line construction", criterion6},
        {"min_p consistency", criterion7},
        {"QPE-error robustness", criterion8},
    };
    std::vector<int> selected;
    for (int k = 1; k < argc; ++k) {
        const int id = std::atoi(argv[k]);
        if (id < 1 || id > static_cast<int>(criteria.size())) {
            std::cerr << "usage: " << argv[0] << " [criterion 1..8 ...]\n";
            return 2;
        }
        selected.push_back(id);
    }
    if (selected.empty()) {
        for (int k = 1; k <= static_cast<int>(criteria.size()); ++k) {
            selected.push_back(k);
        }
    }
    bool all = true;
    for (int id : selected) {
        const Criterion &crit = criteria[static_cast<std::size_t>(id - 1)];
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = crit.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what(), {}};
        }
        const double secs = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - start)
                                .count();
        for (const std::string &line : o.info) {
            std::cout << "[INFO] criterion " << id << ": " << line << '\n';
        }
        std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << id
                  << " " << crit.name << ": " << o.detail << " ("
                  << fmt(secs, 3) << " s)\n";
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
