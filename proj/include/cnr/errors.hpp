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

#include <stdexcept>
#include <string>

namespace cnr {

/// Bad caller input: wrong lengths, out-of-range parameters, malformed files.
class ArgumentError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A memory or width guard was exceeded.
class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A CnrConfig is inconsistent with the spectrum it is applied to
/// (typically a scale factor below the wrap-around bound).
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A quantity has no value for the given input (zero denominators).
class UndefinedError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Broken internal invariant.
class InternalError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

} // namespace cnr
