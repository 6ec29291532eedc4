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

#include "cnr/emulator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <thread>

#include "cnr/errors.hpp"

namespace cnr {

namespace {

// Work is split into a fixed number of chunks with derived seeds so the
// result does not depend on how many threads process them.
constexpr std::uint64_t kChunks = 64;
constexpr std::uint64_t kStringStream = 1;
constexpr std::uint64_t kPhaseStream = 2;
// Largest n for which all 2^n energies are tabulated up front.
constexpr int kMaxTableBits = 22;
// Cap on cached CDF doubles per sampler.
constexpr std::size_t kCacheBudget = std::size_t{1} << 22;

// Survivor counts keyed by basis string.
using SurvivorCounts = std::unordered_map<std::uint64_t, std::uint64_t>;

class CostOracle {
  public:
    explicit CostOracle(const ProblemInstance &inst) : inst_(inst) {
        if (inst.num_bits() <= kMaxTableBits) {
            const std::uint64_t total = std::uint64_t{1} << inst.num_bits();
            table_.resize(total);
            for (std::uint64_t z = 0; z < total; ++z) {
                table_[z] = inst.energy(z);
            }
        }
    }

    double operator()(std::uint64_t z) const {
        return table_.empty() ? inst_.energy(z) : table_[z];
    }

  private:
    const ProblemInstance &inst_;
    std::vector<double> table_;
};

void run_chunk(const CostOracle &cost, const EmulatorRun &run,
               std::uint64_t chunk, std::uint64_t count, int n,
               SurvivorCounts &out) {
    Rng strings(derive_seed(run.seed, kStringStream, chunk));
    Rng phases(derive_seed(run.seed, kPhaseStream, chunk));
    PhaseSampler sampler(run.mode == ComparisonMode::QpeSampled ? run.config.t
                                                                : 2);
    const std::size_t regs = std::size_t{1} << run.p;
    const std::uint64_t space = std::uint64_t{1} << n;
    std::vector<std::uint64_t> z(regs);
    std::vector<double> e(regs);

    for (std::uint64_t s = 0; s < count; ++s) {
        for (std::size_t r = 0; r < regs; ++r) {
            z[r] = strings.below(space);
            e[r] = cost(z[r]);
        }
        for (int level = 1; level <= run.p; ++level) {
            // Survivors sit at multiples of `span`; pair them up.
            const std::size_t span = std::size_t{1} << (level - 1);
            const std::size_t group = span * 2;
            const std::size_t half = regs >> level;
            for (std::size_t k = 0; k < (regs >> level); ++k) {
                std::size_t ti = 0;
                std::size_t si = 0;
                if (run.order == BracketOrder::Adjacent) {
                    ti = k * group;
                    si = ti + span;
                } else {
                    ti = k;
                    si = k + half;
                }
                bool replace = false;
                if (run.mode == ComparisonMode::IdealSign) {
                    replace = e[si] < e[ti];
                } else {
                    const PhaseFraction delta =
                        run.wrap_phase
                            ? wrapped_delta_of(run.config, e[ti], e[si])
                            : delta_of(run.config, e[ti], e[si]);
                    replace = replaces(sampler.sample(delta, phases),
                                       run.config.t);
                }
                if (replace) {
                    z[ti] = z[si];
                    e[ti] = e[si];
                }
            }
        }
        ++out[z[0]];
    }
}

} // namespace

std::string to_string(ComparisonMode mode) {
    return mode == ComparisonMode::IdealSign ? "ideal" : "qpe";
}

ComparisonMode parse_mode(const std::string &text) {
    if (text == "ideal") {
        return ComparisonMode::IdealSign;
    }
    if (text == "qpe") {
        return ComparisonMode::QpeSampled;
    }
    throw ArgumentError("unknown comparison mode '" + text +
                        "' (expected ideal or qpe)");
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> energies,
                                             std::vector<std::uint64_t> counts,
                                             std::uint64_t samples)
    : energies_(std::move(energies)), counts_(std::move(counts)),
      samples_(samples) {
    if (energies_.size() != counts_.size()) {
        throw ArgumentError("energies and counts differ in length");
    }
    if (samples_ == 0) {
        throw ArgumentError("empirical distribution needs samples > 0");
    }
    std::uint64_t total = 0;
    for (std::uint64_t c : counts_) {
        total += c;
    }
    if (total != samples_) {
        throw InternalError("level counts do not add up to the sample count");
    }
}

double EmpiricalDistribution::prob(std::size_t a) const {
    if (a < 1 || a > counts_.size()) {
        throw ArgumentError("level index out of range");
    }
    return static_cast<double>(counts_[a - 1]) / static_cast<double>(samples_);
}

double EmpiricalDistribution::std_error(std::size_t a) const {
    const double q = prob(a);
    return std::sqrt(q * (1.0 - q) / static_cast<double>(samples_));
}

std::uint64_t EmpiricalDistribution::count_up_to(std::size_t a) const {
    if (a > counts_.size()) {
        throw ArgumentError("level index out of range");
    }
    std::uint64_t s = 0;
    for (std::size_t k = 0; k < a; ++k) {
        s += counts_[k];
    }
    return s;
}

PhaseSampler::PhaseSampler(int t) : t_(t) {
    if (t < 1 || t > 20) {
        throw ArgumentError("phase sampler supports 1 <= t <= 20");
    }
    bins_ = std::uint64_t{1} << t;
    max_entries_ = std::max<std::size_t>(1, kCacheBudget >> t);
}

std::uint64_t PhaseSampler::bin_at(std::uint64_t peak,
                                   std::uint64_t position) const {
    const std::uint64_t offset = (position + 1) / 2;
    const std::uint64_t d =
        position % 2 == 1 ? peak + offset : peak + bins_ - offset;
    return d & (bins_ - 1);
}

std::uint64_t PhaseSampler::sample(PhaseFraction delta, Rng &rng) {
    return outcome_for(delta, rng.uniform01());
}

std::uint64_t PhaseSampler::outcome_for(PhaseFraction delta, double u) {
    const std::uint64_t peak = peak_bin(delta, t_);
    const auto key = std::llround(delta.value() * 1e12);
    auto it = cache_.find(key);
    if (it == cache_.end() && cache_.size() < max_entries_) {
        std::vector<double> cdf(bins_);
        double acc = 0.0;
        for (std::uint64_t k = 0; k < bins_; ++k) {
            acc += ancilla_probability(bin_at(peak, k), delta, t_);
            cdf[k] = acc;
        }
        it = cache_.emplace(key, std::move(cdf)).first;
    }
    if (it != cache_.end()) {
        const std::vector<double> &cdf = it->second;
        const auto pos = static_cast<std::uint64_t>(
            std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        return bin_at(peak, std::min(pos, bins_ - 1));
    }
    double acc = 0.0;
    for (std::uint64_t k = 0; k < bins_; ++k) {
        acc += ancilla_probability(bin_at(peak, k), delta, t_);
        if (u < acc) {
            return bin_at(peak, k);
        }
    }
    return bin_at(peak, bins_ - 1);
}

EmpiricalDistribution emulate(const ProblemInstance &inst,
                              const EmulatorRun &run,
                              const EnergySpectrum *spec) {
    const int n = inst.num_bits();
    if (n > kMaxEmulatorBits) {
        throw ResourceError("emulator limited to n <= " +
                            std::to_string(kMaxEmulatorBits));
    }
    if (run.p < 0 || run.p > kMaxEmulatorDepth) {
        throw ArgumentError("emulator depth must lie in [0, " +
                            std::to_string(kMaxEmulatorDepth) + "]");
    }
    if (run.samples == 0) {
        throw ArgumentError("emulator needs at least one sample");
    }
    if (spec != nullptr && spec->num_bits() != n) {
        throw ArgumentError("spectrum and instance differ in n");
    }
    if (run.mode == ComparisonMode::QpeSampled) {
        run.config.check();
        if (spec != nullptr && !run.wrap_phase) {
            run.config.validate_for(*spec);
        }
    }

    const CostOracle cost(inst);
    std::vector<SurvivorCounts> per_chunk(kChunks);
    unsigned workers = run.threads != 0 ? run.threads
                                        : std::thread::hardware_concurrency();
    workers = std::clamp<unsigned>(workers, 1, kChunks);
    const auto chunk_size = [&](std::uint64_t c) {
        return run.samples / kChunks + (c < run.samples % kChunks ? 1 : 0);
    };
    const auto work = [&](unsigned w) {
        for (std::uint64_t c = w; c < kChunks; c += workers) {
            run_chunk(cost, run, c, chunk_size(c), n, per_chunk[c]);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    work(w);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        pool.clear();
        for (const std::exception_ptr &e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    std::map<std::uint64_t, std::uint64_t> survivors;
    for (const SurvivorCounts &part : per_chunk) {
        for (const auto &[z, c] : part) {
            survivors[z] += c;
        }
    }

    if (spec != nullptr) {
        std::vector<double> energies;
        for (const EnergyLevel &lv : spec->levels()) {
            energies.push_back(lv.energy);
        }
        std::vector<std::uint64_t> counts(spec->num_levels(), 0);
        for (const auto &[z, c] : survivors) {
            counts[spec->level_of_energy(cost(z)) - 1] += c;
        }
        return {std::move(energies), std::move(counts), run.samples};
    }

    std::vector<std::pair<double, std::uint64_t>> by_energy;
    by_energy.reserve(survivors.size());
    for (const auto &[z, c] : survivors) {
        by_energy.emplace_back(cost(z), c);
    }
    std::sort(by_energy.begin(), by_energy.end());
    const double tol = kDefaultLevelTolerance *
                       std::max(1.0, by_energy.back().first -
                                         by_energy.front().first);
    std::vector<double> energies;
    std::vector<std::uint64_t> counts;
    for (const auto &[e, c] : by_energy) {
        if (energies.empty() || e - energies.back() > tol) {
            energies.push_back(e);
            counts.push_back(c);
        } else {
            counts.back() += c;
        }
    }
    return {std::move(energies), std::move(counts), run.samples};
}

EmpiricalNeighborhood summarize(const EmpiricalDistribution &dist,
                                const EnergySpectrum &spec, int beta, int p) {
    if (dist.num_levels() != spec.num_levels()) {
        throw ArgumentError("emulation is not aligned with the spectrum");
    }
    if (beta < 0 || static_cast<std::size_t>(beta) + 1 > spec.num_levels()) {
        throw ArgumentError("beta out of range");
    }
    const auto top = static_cast<std::size_t>(beta) + 1;
    const auto samples = static_cast<double>(dist.samples());
    const std::uint64_t inside = dist.count_up_to(top);

    EmpiricalNeighborhood out{};
    out.beta = beta;
    out.p = p;
    out.in_neighborhood = inside;
    out.cum_prob = static_cast<double>(inside) / samples;
    out.cum_prob_se = std::sqrt(out.cum_prob * (1.0 - out.cum_prob) / samples);

    if (beta == 0) {
        out.avg_rel_error = 0.0;
        out.worst_case_cond = inside > 0 ? 1.0 : 0.0;
        return out;
    }
    if (inside == 0) {
        out.avg_rel_error = std::nan("");
        out.avg_rel_error_se = std::nan("");
        out.worst_case_cond = std::nan("");
        out.worst_case_cond_se = std::nan("");
        return out;
    }
    const auto nu = static_cast<double>(inside);
    double mean = 0.0;
    double sq = 0.0;
    for (std::size_t a = 1; a <= top; ++a) {
        const double alpha = relative_error(spec, a);
        const auto c = static_cast<double>(dist.counts()[a - 1]);
        mean += c * alpha;
        sq += c * alpha * alpha;
    }
    mean /= nu;
    const double var = std::max(0.0, sq / nu - mean * mean);
    out.avg_rel_error = mean;
    out.avg_rel_error_se = inside > 1 ? std::sqrt(var / (nu - 1.0)) : 0.0;
    out.worst_case_cond = static_cast<double>(dist.counts()[top - 1]) / nu;
    out.worst_case_cond_se = std::sqrt(
        out.worst_case_cond * (1.0 - out.worst_case_cond) / nu);
    return out;
}

std::vector<TableRow> table_report(const ProblemInstance &inst,
                                   const EnergySpectrum &spec,
                                   const EmulatorRun &base,
                                   const std::vector<int> &depths, int beta) {
    std::vector<TableRow> rows;
    for (int p : depths) {
        EmulatorRun run = base;
        run.p = p;
        const EmpiricalDistribution dist = emulate(inst, run, &spec);
        rows.push_back({p, summarize(dist, spec, beta, p),
                        neighborhood_report(spec, beta, p)});
    }
    return rows;
}

} // namespace cnr
