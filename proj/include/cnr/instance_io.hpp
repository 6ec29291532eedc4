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

// JSON file formats for instances and stored spectra.
//
// Instance:  { "n": int, "terms": [[i, j, w], ...], "label": str,
//              "seed": int | null }
// Spectrum:  { "n": int, "tolerance": real,
//              "levels": [{"energy": real, "degeneracy": int}, ...] }

#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "cnr/cost_model.hpp"

namespace cnr {

nlohmann::ordered_json instance_to_json(const ProblemInstance &inst);
ProblemInstance instance_from_json(const nlohmann::json &j);

/// Serialized text, terminated by a newline. Doubles use shortest round-trip
/// decimal form, so equal instances produce identical bytes.
std::string dump_instance(const ProblemInstance &inst);

ProblemInstance load_instance(const std::filesystem::path &path);

nlohmann::ordered_json spectrum_to_json(const EnergySpectrum &spec);
/// Members are not stored; the result answers level_of() only by energy.
EnergySpectrum spectrum_from_json(const nlohmann::json &j);
EnergySpectrum load_spectrum(const std::filesystem::path &path);

/// Writes via a temporary file in the same directory and renames into place.
void write_file_atomic(const std::filesystem::path &path,
                       const std::string &contents);
std::string read_file(const std::filesystem::path &path);

} // namespace cnr
