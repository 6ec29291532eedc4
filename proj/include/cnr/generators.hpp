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

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cnr/cost_model.hpp"

namespace cnr {

enum class Family { Gaussian2Edge, Max2Xor };

std::string to_string(Family f);
/// Accepts "gaussian" / "gaussian-2edge" and "max2xor" / "max-2-xor".
Family parse_family(const std::string &text);

struct GeneratorSpec {
    Family family;
    int n;
    /// Edge density, required for Max2Xor and rejected for Gaussian2Edge.
    std::optional<double> density;
    std::uint64_t seed;
};

/// Complete graph with c_ij ~ N(0, 1), pairs drawn in lexicographic order.
ProblemInstance gen_gaussian(int n, std::uint64_t seed);

/// Each pair i < j (lexicographic) gets weight 1 with probability `density`.
ProblemInstance gen_max2xor(int n, double density, std::uint64_t seed);

ProblemInstance generate(const GeneratorSpec &spec);

} // namespace cnr
