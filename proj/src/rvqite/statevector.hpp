// Copyright 2026 The rvqite Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Dense statevector over n qubits.
 *
 * Amplitude ordering is little-endian: bit k of the amplitude index is the
 * state of site k, and bit value 0 is the sigma^z = +1 eigenstate.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rvqite {

using cplx = std::complex<double>;

inline constexpr int kMaxStateQubits = 30;

class StateVector {
  public:
    /// |0...0> on `qubits` qubits.
    explicit StateVector(int qubits);

    static StateVector basis(int qubits, std::uint64_t bits);
    static StateVector from_amplitudes(int qubits, std::vector<cplx> amps);

    [[nodiscard]] int qubit_count() const noexcept { return qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept {
        return amps_.size();
    }

    [[nodiscard]] std::span<const cplx> amplitudes() const noexcept {
        return amps_;
    }
    [[nodiscard]] std::span<cplx> amplitudes() noexcept { return amps_; }

    cplx &operator[](std::size_t i) noexcept { return amps_[i]; }
    const cplx &operator[](std::size_t i) const noexcept { return amps_[i]; }

    [[nodiscard]] double norm() const noexcept;
    void normalize();

    /// Throws if |norm - 1| exceeds `tol`.
    void require_normalized(double tol = 1e-8) const;

  private:
    int qubits_;
    std::vector<cplx> amps_;
};

/// <a|b>, conjugating `a`.
[[nodiscard]] cplx inner(const StateVector &a, const StateVector &b);

/// (|+> (x) a + |-> (x) b) / sqrt(2), the ancilla being the new most
/// significant qubit (index a.qubit_count()).
[[nodiscard]] StateVector with_ancilla(const StateVector &a,
                                       const StateVector &b);

/// <sigma^z> on one qubit.
[[nodiscard]] double z_expectation(const StateVector &psi, int site);

/// Raw amplitudes as little-endian float64 (re, im) pairs.
void write_amplitudes(const StateVector &psi, const std::string &path);
[[nodiscard]] StateVector read_amplitudes(const std::string &path);

} // namespace rvqite
