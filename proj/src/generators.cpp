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

#include "cnr/generators.hpp"

#include <sstream>

#include "cnr/errors.hpp"
#include "cnr/rng.hpp"

namespace cnr {

namespace {

void check_n(int n) {
    if (n < 2 || n > 63) {
        throw ArgumentError("generator needs 2 <= n <= 63, got " +
                            std::to_string(n));
    }
}

std::string make_label(Family f, int n, std::optional<double> density,
                       std::uint64_t seed) {
    std::ostringstream ss;
    ss << to_string(f) << " n=" << n;
    if (density) {
        ss << " density=" << *density;
    }
    ss << " seed=" << seed << " rng=" << Rng::kName;
    return ss.str();
}

} // namespace

std::string to_string(Family f) {
    switch (f) {
    case Family::Gaussian2Edge:
        return "gaussian-2edge";
    case Family::Max2Xor:
        return "max-2-xor";
    }
    throw InternalError("unknown family");
}

Family parse_family(const std::string &text) {
    if (text == "gaussian" || text == "gaussian-2edge") {
        return Family::Gaussian2Edge;
    }
    if (text == "max2xor" || text == "max-2-xor") {
        return Family::Max2Xor;
    }
    throw ArgumentError("unknown family '" + text +
                        "' (expected gaussian or max2xor)");
}

ProblemInstance gen_gaussian(int n, std::uint64_t seed) {
    check_n(n);
    Rng rng(seed);
    std::vector<Term> terms;
    terms.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            terms.push_back({i, j, rng.normal()});
        }
    }
    return {n, std::move(terms),
            make_label(Family::Gaussian2Edge, n, std::nullopt, seed), seed};
}

ProblemInstance gen_max2xor(int n, double density, std::uint64_t seed) {
    check_n(n);
    if (!(density >= 0.0 && density <= 1.0)) {
        throw ArgumentError("edge density must lie in [0, 1]");
    }
    Rng rng(seed);
    std::vector<Term> terms;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            // One draw per pair so the stream position depends only on n.
            if (rng.uniform01() < density) {
                terms.push_back({i, j, 1.0});
            }
        }
    }
    return {n, std::move(terms),
            make_label(Family::Max2Xor, n, density, seed), seed};
}

ProblemInstance generate(const GeneratorSpec &spec) {
    switch (spec.family) {
    case Family::Gaussian2Edge:
        if (spec.density) {
            throw ArgumentError("density applies to max-2-xor only");
        }
        return gen_gaussian(spec.n, spec.seed);
    case Family::Max2Xor:
        if (!spec.density) {
            throw ArgumentError("max-2-xor needs an edge density");
        }
        return gen_max2xor(spec.n, *spec.density, spec.seed);
    }
    throw InternalError("unknown family");
}

} // namespace cnr
