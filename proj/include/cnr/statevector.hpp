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
/**
 * @file
 * Dense state vector over a layout of named qubit registers.
 *
 * Indexing: the qubit at layout offset 0 is the most significant bit of the
 * amplitude index, offset q - 1 the least significant. Within a register the
 * first qubit is the register value's most significant bit.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cnr {

/// Memory guard on the total number of simulated qubits.
inline constexpr int kMaxStateQubits = 26;

struct Register {
    std::string name;
    int width;
    int offset;

    /// Global index of the register's k-th qubit, k = 0 most significant.
    [[nodiscard]] int qubit(int k) const { return offset + k; }
};

class RegisterLayout {
  public:
    /// Appends a register after the existing ones.
    const Register &add(std::string name, int width);

    [[nodiscard]] const Register &get(const std::string &name) const;
    [[nodiscard]] bool contains(const std::string &name) const;
    [[nodiscard]] int num_qubits() const { return total_; }
    [[nodiscard]] std::span<const Register> registers() const {
        return registers_;
    }

    /// Value held by `reg` in basis state `index`.
    [[nodiscard]] std::uint64_t extract(std::uint64_t index,
                                        const Register &reg) const;
    /// `index` with `reg` overwritten by `value`.
    [[nodiscard]] std::uint64_t deposit(std::uint64_t index,
                                        const Register &reg,
                                        std::uint64_t value) const;

  private:
    std::vector<Register> registers_;
    int total_ = 0;
};

class StateVector {
  public:
    using Complex = std::complex<double>;

    /// |0...0> over the layout. ResourceError above kMaxStateQubits.
    explicit StateVector(RegisterLayout layout);

    [[nodiscard]] const RegisterLayout &layout() const { return layout_; }
    [[nodiscard]] int num_qubits() const { return layout_.num_qubits(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const {
        return amps_;
    }
    [[nodiscard]] std::span<Complex> amplitudes() { return amps_; }
    [[nodiscard]] double norm() const;

    void hadamard(int q);
    void pauli_x(int q);
    /// diag(1, 1, 1, e^{i angle}) on (a, b); symmetric in a and b.
    void controlled_phase(int a, int b, double angle);
    void swap(int a, int b);
    /// Flips `target` when both controls are 1.
    void toffoli(int c1, int c2, int target);

    /// Multiplies amplitude i by factor(i).
    template <class Fn> void apply_diagonal(Fn &&factor) {
        for (std::uint64_t i = 0; i < amps_.size(); ++i) {
            amps_[i] *= factor(i);
        }
    }

    /// Probability of each value of `reg`, other registers traced out.
    [[nodiscard]] std::vector<double> marginal(const Register &reg) const;
    /// Joint probability over (a, b) values, flattened as a * 2^|b| + b.
    [[nodiscard]] std::vector<double> joint(const Register &a,
                                            const Register &b) const;

  private:
    [[nodiscard]] std::uint64_t mask(int q) const;

    RegisterLayout layout_;
    std::vector<Complex> amps_;
};

} // namespace cnr
