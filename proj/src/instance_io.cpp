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

#include "cnr/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "cnr/errors.hpp"

namespace cnr {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json instance_to_json(const ProblemInstance &inst) {
    ordered_json j;
    j["n"] = inst.num_bits();
    ordered_json terms = ordered_json::array();
    for (const Term &t : inst.terms()) {
        terms.push_back(ordered_json::array({t.i, t.j, t.w}));
    }
    j["terms"] = std::move(terms);
    j["label"] = inst.label();
    if (inst.seed()) {
        j["seed"] = *inst.seed();
    } else {
        j["seed"] = nullptr;
    }
    return j;
}

ProblemInstance instance_from_json(const json &j) {
    try {
        const int n = j.at("n").get<int>();
        std::vector<Term> terms;
        for (const auto &row : j.at("terms")) {
            if (!row.is_array() || row.size() != 3) {
                throw ArgumentError("each term must be [i, j, w]");
            }
            terms.push_back(
                {row[0].get<int>(), row[1].get<int>(), row[2].get<double>()});
        }
        std::string label = j.value("label", std::string{});
        std::optional<std::uint64_t> seed;
        if (j.contains("seed") && !j["seed"].is_null()) {
            seed = j["seed"].get<std::uint64_t>();
        }
        return {n, std::move(terms), std::move(label), seed};
    } catch (const json::exception &e) {
        throw ArgumentError(std::string("malformed instance JSON: ") +
                            e.what());
    }
}

std::string dump_instance(const ProblemInstance &inst) {
    return instance_to_json(inst).dump(2) + "\n";
}

ProblemInstance load_instance(const std::filesystem::path &path) {
    const std::string text = read_file(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception &e) {
        throw ArgumentError("cannot parse " + path.string() + ": " + e.what());
    }
    return instance_from_json(j);
}

ordered_json spectrum_to_json(const EnergySpectrum &spec) {
    ordered_json j;
    j["n"] = spec.num_bits();
    j["tolerance"] = spec.tolerance();
    ordered_json levels = ordered_json::array();
    for (const EnergyLevel &lv : spec.levels()) {
        levels.push_back({{"energy", lv.energy}, {"degeneracy", lv.degeneracy}});
    }
    j["levels"] = std::move(levels);
    return j;
}

EnergySpectrum spectrum_from_json(const json &j) {
    try {
        const int n = j.at("n").get<int>();
        const double tol = j.value("tolerance", 0.0);
        std::vector<EnergyLevel> levels;
        for (const auto &lv : j.at("levels")) {
            levels.push_back({lv.at("energy").get<double>(),
                              lv.at("degeneracy").get<std::uint64_t>(),
                              {}});
        }
        return {n, std::move(levels), tol};
    } catch (const json::exception &e) {
        throw ArgumentError(std::string("malformed spectrum JSON: ") +
                            e.what());
    }
}

EnergySpectrum load_spectrum(const std::filesystem::path &path) {
    const std::string text = read_file(path);
    try {
        return spectrum_from_json(json::parse(text));
    } catch (const json::exception &e) {
        throw ArgumentError("cannot parse " + path.string() + ": " + e.what());
    }
}

void write_file_atomic(const std::filesystem::path &path,
                       const std::string &contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ArgumentError("cannot write " + tmp.string());
        }
        out << contents;
        if (!out) {
            throw ArgumentError("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ArgumentError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace cnr
