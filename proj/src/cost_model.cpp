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

#include "cnr/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "cnr/errors.hpp"

namespace cnr {

BitString::BitString(std::uint64_t value, int width)
    : value_(value), width_(width) {
    if (width < 1 || width > 63) {
        throw ArgumentError("bit string width must be in [1, 63], got " +
                            std::to_string(width));
    }
    if ((value >> width) != 0) {
        throw ArgumentError("bit string value does not fit its width");
    }
}

BitString BitString::parse(std::string_view text) {
    if (text.empty() || text.size() > 63) {
        throw ArgumentError("bit string must have 1..63 characters");
    }
    std::uint64_t v = 0;
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw ArgumentError("bit string may only contain '0' and '1'");
        }
        v = (v << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return {v, static_cast<int>(text.size())};
}

int BitString::bit(int k) const {
    if (k < 1 || k > width_) {
        throw ArgumentError("bit index out of range");
    }
    return static_cast<int>((value_ >> (width_ - k)) & 1U);
}

std::string BitString::to_string() const {
    std::string out(static_cast<std::size_t>(width_), '0');
    for (int k = 1; k <= width_; ++k) {
        if (bit(k) != 0) {
            out[static_cast<std::size_t>(k - 1)] = '1';
        }
    }
    return out;
}

ProblemInstance::ProblemInstance(int n, std::vector<Term> terms,
                                 std::string label,
                                 std::optional<std::uint64_t> seed)
    : n_(n), terms_(std::move(terms)), label_(std::move(label)), seed_(seed) {
    if (n < 2 || n > 63) {
        throw ArgumentError("instance needs 2 <= n <= 63, got " +
                            std::to_string(n));
    }
    std::set<std::pair<int, int>> seen;
    shifts_.reserve(terms_.size());
    for (const Term &t : terms_) {
        if (t.i < 1 || t.j > n || t.i >= t.j) {
            throw ArgumentError("term (" + std::to_string(t.i) + ", " +
                                std::to_string(t.j) +
                                ") violates 1 <= i < j <= n");
        }
        if (!std::isfinite(t.w)) {
            throw ArgumentError("term coefficient must be finite");
        }
        if (!seen.emplace(t.i, t.j).second) {
            throw ArgumentError("duplicate term (" + std::to_string(t.i) +
                                ", " + std::to_string(t.j) + ")");
        }
        shifts_.emplace_back(n - t.i, n - t.j);
    }
}

double ProblemInstance::energy(std::uint64_t z) const {
    double sum = 0.0;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        const auto [si, sj] = shifts_[k];
        const auto differ = ((z >> si) ^ (z >> sj)) & 1U;
        sum += differ != 0 ? -terms_[k].w : terms_[k].w;
    }
    return sum;
}

double evaluate(const ProblemInstance &inst, const BitString &z) {
    if (z.width() != inst.num_bits()) {
        throw ArgumentError("bit string has length " +
                            std::to_string(z.width()) + ", instance has n = " +
                            std::to_string(inst.num_bits()));
    }
    return inst.energy(z.value());
}

EnergySpectrum::EnergySpectrum(int n, std::vector<EnergyLevel> levels,
                               double tolerance,
                               std::optional<ProblemInstance> source)
    : n_(n), levels_(std::move(levels)), tolerance_(tolerance),
      source_(std::move(source)) {
    if (n < 1 || n > 62) {
        throw ArgumentError("spectrum needs 1 <= n <= 62");
    }
    if (levels_.empty()) {
        throw ArgumentError("spectrum must have at least one level");
    }
    if (!(tolerance_ >= 0.0)) {
        throw ArgumentError("tolerance must be nonnegative");
    }
    cumulative_.assign(levels_.size() + 1, 0);
    bool members_complete = true;
    for (std::size_t a = 0; a < levels_.size(); ++a) {
        const EnergyLevel &lv = levels_[a];
        if (lv.degeneracy == 0) {
            throw ArgumentError("level degeneracy must be positive");
        }
        if (a > 0 && !(lv.energy > levels_[a - 1].energy)) {
            throw ArgumentError("level energies must be strictly increasing");
        }
        if (lv.members.size() != lv.degeneracy) {
            members_complete = false;
        }
        cumulative_[a + 1] = cumulative_[a] + lv.degeneracy;
    }
    if (cumulative_.back() != total_states()) {
        throw ArgumentError("degeneracies sum to " +
                            std::to_string(cumulative_.back()) +
                            ", expected 2^n = " +
                            std::to_string(total_states()));
    }
    if (members_complete && n_ <= kMaxMemberBits) {
        index_to_level_.assign(total_states(), 0);
        for (std::size_t a = 0; a < levels_.size(); ++a) {
            for (std::uint64_t z : levels_[a].members) {
                if (z >= total_states() || index_to_level_[z] != 0) {
                    throw ArgumentError("level members must partition 2^n");
                }
                index_to_level_[z] = static_cast<std::uint32_t>(a + 1);
            }
        }
    }
}

const EnergyLevel &EnergySpectrum::level(std::size_t a) const {
    if (a < 1 || a > levels_.size()) {
        throw ArgumentError("level number " + std::to_string(a) +
                            " outside 1.." + std::to_string(levels_.size()));
    }
    return levels_[a - 1];
}

std::uint64_t EnergySpectrum::states_up_to(std::size_t a) const {
    if (a > levels_.size()) {
        throw ArgumentError("level number out of range");
    }
    return cumulative_[a];
}

std::uint64_t EnergySpectrum::states_above(std::size_t a) const {
    return total_states() - states_up_to(a);
}

std::size_t EnergySpectrum::level_of_energy(double e) const {
    auto it = std::lower_bound(
        levels_.begin(), levels_.end(), e - tolerance_,
        [](const EnergyLevel &lv, double x) { return lv.energy < x; });
    if (it != levels_.end() && std::abs(it->energy - e) <= tolerance_) {
        return static_cast<std::size_t>(it - levels_.begin()) + 1;
    }
    throw InternalError("energy " + std::to_string(e) +
                        " matches no spectrum level");
}

std::size_t EnergySpectrum::level_of_index(std::uint64_t z) const {
    if (z >= total_states()) {
        throw ArgumentError("basis index out of range");
    }
    if (!index_to_level_.empty()) {
        return index_to_level_[z];
    }
    if (source_) {
        return level_of_energy(source_->energy(z));
    }
    throw ArgumentError(
        "spectrum keeps neither members nor its source instance");
}

EnergySpectrum enumerate_spectrum(const ProblemInstance &inst, double tol) {
    const int n = inst.num_bits();
    if (n > kMaxEnumerationBits) {
        throw ResourceError("enumeration limited to n <= " +
                            std::to_string(kMaxEnumerationBits) +
                            ", got n = " + std::to_string(n));
    }
    if (!(tol >= 0.0)) {
        throw ArgumentError("grouping tolerance must be nonnegative");
    }
    const std::uint64_t total = std::uint64_t{1} << n;
    const bool keep_members = n <= kMaxMemberBits;

    std::vector<double> energies(total);
    for (std::uint64_t z = 0; z < total; ++z) {
        energies[z] = inst.energy(z);
    }
    const auto [lo, hi] = std::minmax_element(energies.begin(), energies.end());
    const double abs_tol = tol * std::max(1.0, *hi - *lo);

    std::vector<EnergyLevel> levels;
    auto push = [&](double e, std::uint64_t z) {
        if (levels.empty() || e - levels.back().energy > abs_tol) {
            levels.push_back({e, 0, {}});
        }
        auto &lv = levels.back();
        ++lv.degeneracy;
        if (keep_members) {
            lv.members.push_back(z);
        }
    };
    if (keep_members) {
        std::vector<std::uint64_t> order(total);
        std::iota(order.begin(), order.end(), std::uint64_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::uint64_t a, std::uint64_t b) {
                             return energies[a] < energies[b];
                         });
        for (std::uint64_t z : order) {
            push(energies[z], z);
        }
    } else {
        std::sort(energies.begin(), energies.end());
        for (double e : energies) {
            push(e, 0);
        }
    }
    return {n, std::move(levels), abs_tol, inst};
}

std::size_t level_of(const EnergySpectrum &spec, const BitString &z) {
    if (z.width() != spec.num_bits()) {
        throw ArgumentError("bit string width does not match spectrum");
    }
    return spec.level_of_index(z.value());
}

} // namespace cnr
