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
 * Parameterized gates and circuits on a dense statevector.
 *
 * Every gate is exp(+i * value * sum_t sign_t * P_t) for mutually commuting
 * Pauli strings P_t. The derivative with respect to the bound parameter is
 * therefore obtained by inserting (i * sign_t * P_t) right after the gate and
 * summing over t.
 */

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rvqite/pauli.hpp"
#include "rvqite/statevector.hpp"

namespace rvqite {

enum class GateKind : std::uint8_t { RX, RZ, RZZ, RXXYY };

struct GeneratorTerm {
    PauliString string;
    int sign = 1;
};

struct Gate {
    GateKind kind = GateKind::RZ;
    std::array<int, 2> sites{0, 0};
    int site_count = 1;
    int param_index = 0;
    std::vector<GeneratorTerm> generator;

    /// RX is exp(-i v X); RZ exp(i v Z); RZZ exp(i v ZZ);
    /// RXXYY exp(i v (XX + YY)).
    static Gate rx(int site, int param);
    static Gate rz(int site, int param);
    static Gate rzz(int a, int b, int param);
    static Gate rxxyy(int a, int b, int param);

    [[nodiscard]] bool is_diagonal() const noexcept {
        return kind == GateKind::RZ || kind == GateKind::RZZ;
    }
    [[nodiscard]] bool commutes_with(const Gate &o) const noexcept;
};

class Circuit {
  public:
    Circuit(int qubits, std::uint64_t initial_bits, std::vector<Gate> gates,
            int parameter_count);

    [[nodiscard]] int qubit_count() const noexcept { return qubits_; }
    [[nodiscard]] std::uint64_t initial_bits() const noexcept { return init_; }
    [[nodiscard]] std::span<const Gate> gates() const noexcept {
        return gates_;
    }
    [[nodiscard]] int parameter_count() const noexcept { return params_; }
    /// Gate indices bound to each parameter.
    [[nodiscard]] std::span<const int> gates_of(int param) const;
    /// Consecutive runs of pairwise commuting gates: [begin, end) pairs.
    [[nodiscard]] std::span<const std::pair<int, int>> blocks() const noexcept {
        return blocks_;
    }

  private:
    int qubits_;
    std::uint64_t init_;
    std::vector<Gate> gates_;
    int params_;
    std::vector<std::vector<int>> param_gates_;
    std::vector<std::pair<int, int>> blocks_;
};

/// In-place gate application.
void apply_gate_inplace(std::span<cplx> amps, int qubits, const Gate &g,
                        double value);

[[nodiscard]] StateVector apply_gate(const StateVector &psi, const Gate &g,
                                     double value);

/// exp(i * angle * P) applied in place.
void apply_pauli_rotation(std::span<cplx> amps, const PauliString &p,
                          double angle);

/// P applied in place.
void apply_pauli_string(std::span<cplx> amps, const PauliString &p);

[[nodiscard]] StateVector evaluate(const Circuit &c,
                                   std::span<const double> params);

/// Offset on a single generator term: term `term` of gate `gate` runs at
/// value + offset while the remaining terms use the unshifted value.
struct TermShift {
    int gate = 0;
    int term = 0;
    double offset = 0.0;
};

[[nodiscard]] StateVector evaluate_shifted(const Circuit &c,
                                           std::span<const double> params,
                                           const TermShift &shift);

/// d|psi>/d params[k] by explicit insertion after each bound gate.
[[nodiscard]] StateVector derivative_state(const Circuit &c,
                                           std::span<const double> params,
                                           int k);

/// All derivative states as the columns of a 2^N x m matrix, together with
/// the state itself. Gates inside a commuting block share one insertion
/// point, and diagonal blocks are applied as a single phase vector.
struct DerivativeBundle {
    StateVector psi;
    Eigen::MatrixXcd columns;
};

[[nodiscard]] DerivativeBundle derivative_states(const Circuit &c,
                                                 std::span<const double> params);

} // namespace rvqite
