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

#include "cnr/statevector.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "cnr/errors.hpp"

namespace cnr {

const Register &RegisterLayout::add(std::string name, int width) {
    if (width < 1) {
        throw ArgumentError("register width must be positive");
    }
    if (contains(name)) {
        throw ArgumentError("duplicate register name '" + name + "'");
    }
    registers_.push_back({std::move(name), width, total_});
    total_ += width;
    return registers_.back();
}

const Register &RegisterLayout::get(const std::string &name) const {
    for (const Register &r : registers_) {
        if (r.name == name) {
            return r;
        }
    }
    throw ArgumentError("unknown register '" + name + "'");
}

bool RegisterLayout::contains(const std::string &name) const {
    for (const Register &r : registers_) {
        if (r.name == name) {
            return true;
        }
    }
    return false;
}

std::uint64_t RegisterLayout::extract(std::uint64_t index,
                                      const Register &reg) const {
    const int shift = total_ - reg.offset - reg.width;
    return (index >> shift) & ((std::uint64_t{1} << reg.width) - 1);
}

std::uint64_t RegisterLayout::deposit(std::uint64_t index,
                                      const Register &reg,
                                      std::uint64_t value) const {
    const int shift = total_ - reg.offset - reg.width;
    const std::uint64_t m = ((std::uint64_t{1} << reg.width) - 1) << shift;
    return (index & ~m) | ((value << shift) & m);
}

StateVector::StateVector(RegisterLayout layout) : layout_(std::move(layout)) {
    const int q = layout_.num_qubits();
    if (q < 1) {
        throw ArgumentError("state vector needs at least one qubit");
    }
    if (q > kMaxStateQubits) {
        throw ResourceError("state vector of " + std::to_string(q) +
                            " qubits exceeds the " +
                            std::to_string(kMaxStateQubits) + "-qubit guard");
    }
    amps_.assign(std::size_t{1} << q, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

std::uint64_t StateVector::mask(int q) const {
    if (q < 0 || q >= num_qubits()) {
        throw ArgumentError("qubit index " + std::to_string(q) +
                            " out of range");
    }
    return std::uint64_t{1} << (num_qubits() - 1 - q);
}

double StateVector::norm() const {
    double s = 0.0;
    for (const Complex &a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

void StateVector::hadamard(int q) {
    const std::uint64_t m = mask(q);
    const double h = std::numbers::sqrt2 / 2.0;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if ((i & m) == 0) {
            const Complex a = amps_[i];
            const Complex b = amps_[i | m];
            amps_[i] = h * (a + b);
            amps_[i | m] = h * (a - b);
        }
    }
}

void StateVector::pauli_x(int q) {
    const std::uint64_t m = mask(q);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if ((i & m) == 0) {
            std::swap(amps_[i], amps_[i | m]);
        }
    }
}

void StateVector::controlled_phase(int a, int b, double angle) {
    const std::uint64_t both = mask(a) | mask(b);
    if (a == b) {
        throw ArgumentError("controlled phase needs two distinct qubits");
    }
    const Complex factor = std::polar(1.0, angle);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if ((i & both) == both) {
            amps_[i] *= factor;
        }
    }
}

void StateVector::swap(int a, int b) {
    const std::uint64_t ma = mask(a);
    const std::uint64_t mb = mask(b);
    if (a == b) {
        return;
    }
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        // Visit each (10, 01) pair once, from the side with a set.
        if ((i & ma) != 0 && (i & mb) == 0) {
            std::swap(amps_[i], amps_[(i & ~ma) | mb]);
        }
    }
}

void StateVector::toffoli(int c1, int c2, int target) {
    const std::uint64_t controls = mask(c1) | mask(c2);
    const std::uint64_t mt = mask(target);
    if (c1 == c2 || c1 == target || c2 == target) {
        throw ArgumentError("toffoli needs three distinct qubits");
    }
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if ((i & controls) == controls && (i & mt) == 0) {
            std::swap(amps_[i], amps_[i | mt]);
        }
    }
}

std::vector<double> StateVector::marginal(const Register &reg) const {
    std::vector<double> out(std::size_t{1} << reg.width, 0.0);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        out[layout_.extract(i, reg)] += std::norm(amps_[i]);
    }
    return out;
}

std::vector<double> StateVector::joint(const Register &a,
                                       const Register &b) const {
    std::vector<double> out(std::size_t{1} << (a.width + b.width), 0.0);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        const std::uint64_t k =
            (layout_.extract(i, a) << b.width) | layout_.extract(i, b);
        out[k] += std::norm(amps_[i]);
    }
    return out;
}

} // namespace cnr
