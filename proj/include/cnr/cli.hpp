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

#include <ostream>
#include <string>
#include <vector>

namespace cnr {

/// Exit codes of run_cli().
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitValidation = 2,
    kExitResource = 3,
    kExitInternal = 4,
};

/// Entry point of the cnrqo tool. `args` excludes the program name.
/// Subcommands: generate, spectrum, recurse, bounds, simulate, emulate,
/// report, qpe-dist. With --out DIR, every artifact and a manifest.json are
/// written atomically into DIR; otherwise the primary artifact goes to `out`.
int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err);

} // namespace cnr
