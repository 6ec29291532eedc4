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

#include "cnr/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <sstream>

#include <openssl/evp.h>

#include "cnr/errors.hpp"
#include "cnr/recursion.hpp"

namespace cnr {

namespace {

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string &text) {
    const std::string s = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw ArgumentError("cannot parse number '" + text + "'");
    }
    return v;
}

int parse_int(const std::string &text) {
    const std::string s = trim(text);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw ArgumentError("cannot parse integer '" + text + "'");
    }
    return v;
}

std::string bits_of(std::uint64_t z, int n) {
    return BitString(z, n).to_string();
}

} // namespace

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) {
        throw InternalError("number formatting failed");
    }
    return {buf, ptr};
}

std::string format_fixed(double x, int digits) {
    if (!std::isfinite(x)) {
        return format_double(x);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

double parse_scale(const std::string &text) {
    std::string s;
    for (char c : text) {
        if (c != ' ' && c != '(' && c != ')' && c != '*') {
            s += c;
        }
    }
    const auto slash = s.find('/');
    double value = 0.0;
    if (slash == std::string::npos) {
        value = parse_real(s);
    } else {
        const double num = parse_real(s.substr(0, slash));
        const std::string den = s.substr(slash + 1);
        if (den == "2pi") {
            value = num / (2.0 * std::numbers::pi);
        } else if (den == "pi") {
            value = num / std::numbers::pi;
        } else {
            value = num / parse_real(den);
        }
    }
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ArgumentError("scale factor must be a positive number, got '" +
                            text + "'");
    }
    return value;
}

std::vector<int> parse_depths(const std::string &text) {
    std::vector<int> out;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const int lo = parse_int(text.substr(0, dots));
        const int hi = parse_int(text.substr(dots + 2));
        if (lo > hi) {
            throw ArgumentError("empty depth range '" + text + "'");
        }
        for (int p = lo; p <= hi; ++p) {
            out.push_back(p);
        }
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            out.push_back(parse_int(item));
        }
    }
    if (out.empty()) {
        throw ArgumentError("no depths in '" + text + "'");
    }
    for (int p : out) {
        if (p < 0) {
            throw ArgumentError("depth must be nonnegative");
        }
    }
    return out;
}

std::uint64_t parse_count(const std::string &text) {
    const double v = parse_real(text);
    if (!(v >= 0.0) || v > 9.0e15 || v != std::floor(v)) {
        throw ArgumentError("count must be a nonnegative integer, got '" +
                            text + "'");
    }
    return static_cast<std::uint64_t>(v);
}

std::string sha256_hex(const std::string &bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                   nullptr) != 1) {
        throw InternalError("SHA-256 computation failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int k = 0; k < len; ++k) {
        out += kHex[digest[k] >> 4];
        out += kHex[digest[k] & 0xF];
    }
    return out;
}

std::string spectrum_scatter_csv(const ProblemInstance &inst,
                                 const EnergySpectrum &spec) {
    const int n = inst.num_bits();
    const std::uint64_t total = std::uint64_t{1} << n;
    std::vector<double> e(total);
    for (std::uint64_t z = 0; z < total; ++z) {
        e[z] = inst.energy(z);
    }
    std::vector<std::uint64_t> order(total);
    std::iota(order.begin(), order.end(), std::uint64_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint64_t a, std::uint64_t b) {
                         return e[a] < e[b];
                     });
    std::string out = "zeta,z,bits,energy,level\n";
    for (std::uint64_t k = 0; k < total; ++k) {
        const std::uint64_t z = order[k];
        out += std::to_string(k) + ',' + std::to_string(z) + ',' +
               bits_of(z, n) + ',' + format_double(e[z]) + ',' +
               std::to_string(spec.level_of_energy(e[z])) + '\n';
    }
    return out;
}

std::string level_distribution_csv(const EnergySpectrum &spec,
                                   const std::vector<int> &depths) {
    std::string out = "p,level,energy,degeneracy,prob,prefix,tail\n";
    for (int p : depths) {
        const LevelDistribution d = distribution_at(spec, p);
        for (std::size_t a = 1; a <= spec.num_levels(); ++a) {
            out += std::to_string(p) + ',' + std::to_string(a) + ',' +
                   format_double(spec.energy(a)) + ',' +
                   std::to_string(spec.degeneracy(a)) + ',' +
                   format_double(d.prob(a)) + ',' +
                   format_double(d.prefix(a)) + ',' +
                   format_double(d.tail(a)) + '\n';
        }
    }
    return out;
}

std::string bound_lines_csv(const EnergySpectrum &spec,
                            const BoundLines &lines) {
    std::string out = "a,energy,critical,bound\n";
    for (std::size_t a = 1; a <= spec.num_levels(); ++a) {
        const auto x = static_cast<double>(a);
        out += std::to_string(a) + ',' + format_double(spec.energy(a)) + ',' +
               format_double(lines.e_critical(x)) + ',' +
               format_double(lines.e_bound(x)) + '\n';
    }
    return out;
}

nlohmann::ordered_json bound_lines_json(const BoundLines &lines,
                                        double eps_r) {
    nlohmann::ordered_json j;
    j["eps_r"] = eps_r;
    j["a_tilde"] = lines.a_tilde;
    j["critical_slope"] = lines.critical_slope;
    j["critical_intercept"] = lines.e_critical.intercept;
    j["beta_max"] = lines.beta_max;
    j["bound_slope"] = lines.e_bound.slope;
    j["bound_intercept"] = lines.e_bound.intercept;
    return j;
}

nlohmann::ordered_json neighborhood_json(const NeighborhoodReport &r) {
    nlohmann::ordered_json j;
    j["p"] = r.p;
    j["beta"] = r.beta;
    j["beta_plus_1"] = r.beta + 1;
    j["a_beta"] = r.a_beta;
    j["cum_prob"] = r.cum_prob;
    j["cum_prob_4dp"] = format_fixed(r.cum_prob, 4);
    j["cum_complement"] = r.cum_complement;
    j["lower_bound"] = r.lower_bound;
    j["avg_rel_error"] = r.avg_rel_error;
    j["worst_case_cond"] = r.worst_case_cond;
    return j;
}

std::string table_csv(const std::vector<LabeledRow> &rows) {
    const bool emp = !rows.empty() &&
                     std::all_of(rows.begin(), rows.end(),
                                 [](const LabeledRow &r) {
                                     return r.empirical.has_value();
                                 });
    std::string out = "neighborhood,p,beta_plus_1,a_beta,cum_prob,"
                      "cum_prob_4dp,cum_complement,lower_bound,"
                      "avg_rel_error,worst_case_cond";
    if (emp) {
        out += ",emp_cum_prob,emp_cum_prob_se,emp_avg_rel_error,"
               "emp_avg_rel_error_se,emp_worst_case_cond,"
               "emp_worst_case_cond_se";
    }
    out += '\n';
    for (const LabeledRow &row : rows) {
        const NeighborhoodReport &r = row.exact;
        out += row.neighborhood + ',' + std::to_string(r.p) + ',' +
               std::to_string(r.beta + 1) + ',' + std::to_string(r.a_beta) +
               ',' + format_double(r.cum_prob) + ',' +
               format_fixed(r.cum_prob, 4) + ',' +
               format_double(r.cum_complement) + ',' +
               format_double(r.lower_bound) + ',' +
               format_double(r.avg_rel_error) + ',' +
               format_double(r.worst_case_cond);
        if (emp) {
            const EmpiricalNeighborhood &e = *row.empirical;
            out += ',' + format_double(e.cum_prob) + ',' +
                   format_double(e.cum_prob_se) + ',' +
                   format_double(e.avg_rel_error) + ',' +
                   format_double(e.avg_rel_error_se) + ',' +
                   format_double(e.worst_case_cond) + ',' +
                   format_double(e.worst_case_cond_se);
        }
        out += '\n';
    }
    return out;
}

std::string emulator_csv(const std::vector<TableRow> &rows,
                         const EmulatorRun &base,
                         const EnergySpectrum &spec) {
    std::string out =
        "p,mode,t,scale,samples,beta_plus_1,a_beta,cum_prob,cum_prob_se,"
        "exact_cum_prob,avg_rel_error,avg_rel_error_se,exact_avg_rel_error,"
        "worst_case_cond,worst_case_cond_se,exact_worst_case_cond\n";
    const bool qpe = base.mode == ComparisonMode::QpeSampled;
    for (const TableRow &row : rows) {
        const EmpiricalNeighborhood &e = row.empirical;
        const NeighborhoodReport &x = row.exact;
        out += std::to_string(row.p) + ',' + to_string(base.mode) + ',' +
               (qpe ? std::to_string(base.config.t) : "") + ',' +
               (qpe ? format_double(base.config.scale) : "") + ',' +
               std::to_string(base.samples) + ',' +
               std::to_string(e.beta + 1) + ',' +
               std::to_string(neighborhood_size(spec, e.beta)) + ',' +
               format_double(e.cum_prob) + ',' +
               format_double(e.cum_prob_se) + ',' +
               format_double(x.cum_prob) + ',' +
               format_double(e.avg_rel_error) + ',' +
               format_double(e.avg_rel_error_se) + ',' +
               format_double(x.avg_rel_error) + ',' +
               format_double(e.worst_case_cond) + ',' +
               format_double(e.worst_case_cond_se) + ',' +
               format_double(x.worst_case_cond) + '\n';
    }
    return out;
}

std::string survivors_csv(int p, const EmpiricalDistribution &dist) {
    std::string out;
    for (std::size_t a = 1; a <= dist.num_levels(); ++a) {
        out += std::to_string(p) + ',' +
               format_double(dist.energies()[a - 1]) + ',' +
               std::to_string(dist.counts()[a - 1]) + ',' +
               format_double(dist.prob(a)) + ',' +
               format_double(dist.std_error(a)) + '\n';
    }
    return out;
}

std::string qpe_distribution_csv(PhaseFraction delta, int t) {
    const std::vector<double> probs = ancilla_distribution(delta, t);
    std::string out = "bin,x,prob\n";
    for (std::uint64_t d = 0; d < probs.size(); ++d) {
        out += std::to_string(d) + ',' + bits_of(d, t) + ',' +
               format_double(probs[d]) + '\n';
    }
    return out;
}

std::string simulate_csv(const ProblemInstance &inst,
                         const EnergySpectrum &spec,
                         const std::vector<double> &dist) {
    const int n = inst.num_bits();
    std::string out = "z,bits,energy,level,prob\n";
    for (std::uint64_t z = 0; z < dist.size(); ++z) {
        out += std::to_string(z) + ',' + bits_of(z, n) + ',' +
               format_double(inst.energy(z)) + ',' +
               std::to_string(spec.level_of_index(z)) + ',' +
               format_double(dist[z]) + '\n';
    }
    return out;
}

} // namespace cnr
