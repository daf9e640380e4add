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
 * Real-weighted sums of Pauli strings.
 *
 * A Pauli string is stored as a pair of bit masks (x, z): site k carries X if
 * only x_k is set, Z if only z_k is set and Y if both are set. Acting on a
 * computational basis state,
 *
 *     P |b> = i^{popcount(x & z)} (-1)^{popcount(b & z)} |b ^ x>.
 */

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rvqite/statevector.hpp"

namespace rvqite {

enum class Axis : std::uint8_t { X = 1, Y = 2, Z = 3 };

inline constexpr int kMaxPauliSites = 64;
inline constexpr double kDropTolerance = 1e-12;
inline constexpr int kDenseQubitCap = 14;

struct PauliString {
    std::uint64_t x = 0;
    std::uint64_t z = 0;

    static PauliString single(int site, Axis axis);
    static PauliString from_factors(std::span<const std::pair<int, Axis>> f);

    [[nodiscard]] bool is_identity() const noexcept { return (x | z) == 0; }
    [[nodiscard]] bool is_diagonal() const noexcept { return x == 0; }
    [[nodiscard]] std::uint64_t support() const noexcept { return x | z; }
    /// Highest site index with a non-identity factor, -1 for the identity.
    [[nodiscard]] int max_site() const noexcept;
    [[nodiscard]] bool commutes_with(const PauliString &o) const noexcept;
    /// (site, axis) pairs in increasing site order.
    [[nodiscard]] std::vector<std::pair<int, Axis>> factors() const;

    friend auto operator<=>(const PauliString &, const PauliString &) = default;
};

/// Product of two strings: phase is i^phase.
struct PauliProduct {
    PauliString string;
    int phase = 0;
};

[[nodiscard]] PauliProduct multiply(const PauliString &a, const PauliString &b);

/// Sign/phase of P acting on basis state b: returns i^k (-1)^parity as a cplx.
[[nodiscard]] cplx basis_phase(const PauliString &p, std::uint64_t bits);

struct PauliTerm {
    double coefficient = 0.0;
    PauliString string;

    PauliTerm() = default;
    PauliTerm(double c, PauliString s) : coefficient(c), string(s) {}
    /// Throws unless sites are strictly increasing and in [0, 64).
    PauliTerm(double c, std::span<const std::pair<int, Axis>> factors);
};

class PauliSum {
  public:
    explicit PauliSum(int qubit_count);
    PauliSum(int qubit_count, std::vector<PauliTerm> terms);

    [[nodiscard]] int qubit_count() const noexcept { return qubits_; }
    [[nodiscard]] std::span<const PauliTerm> terms() const noexcept {
        return terms_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
    [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }

    /// Appends without merging; sites must be < qubit_count.
    PauliSum &add(const PauliTerm &t);
    PauliSum &add(double c, PauliString s) { return add(PauliTerm{c, s}); }

    [[nodiscard]] static PauliSum identity(int qubit_count, double c = 1.0);

  private:
    int qubits_;
    std::vector<PauliTerm> terms_;
};

[[nodiscard]] PauliSum simplify(const PauliSum &s,
                                double drop_tol = kDropTolerance);

[[nodiscard]] PauliSum operator+(const PauliSum &a, const PauliSum &b);
[[nodiscard]] PauliSum operator-(const PauliSum &a, const PauliSum &b);
[[nodiscard]] PauliSum operator*(double c, const PauliSum &a);

/// Operator product a*b, simplified. Throws when the product is not
/// real-weighted (i.e. a and b do not produce a Hermitian result).
[[nodiscard]] PauliSum product(const PauliSum &a, const PauliSum &b);

/// <psi|s|psi>. psi must be normalized and sized to s.
[[nodiscard]] double expectation(const PauliSum &s, const StateVector &psi);

/// s|psi>, generally unnormalized.
[[nodiscard]] StateVector apply(const PauliSum &s, const StateVector &psi);

/// out = s * in. `out` must not alias `in`.
void apply_into(const PauliSum &s, std::span<const cplx> in,
                std::span<cplx> out);

/// Dense 2^N x 2^N matrix of s.
[[nodiscard]] Eigen::MatrixXcd to_dense(const PauliSum &s,
                                        int max_qubits = kDenseQubitCap);

/// Coefficient 2-norm of the simplified commutator [a, b]. This equals the
/// Frobenius norm divided by 2^{N/2}; [X0, Z0] = -2i Y0 gives 2.
[[nodiscard]] double commutator_norm(const PauliSum &a, const PauliSum &b);

/// One term per line: `coeff  X3 Y4 Z7`, identity as `coeff  I`.
[[nodiscard]] std::string to_text(const PauliSum &s);
[[nodiscard]] PauliSum from_text(int qubit_count, const std::string &text);

namespace detail {

/// Complex-weighted accumulator used for commutator intermediates.
using ComplexTerms = std::map<PauliString, cplx>;

[[nodiscard]] ComplexTerms commutator(const PauliSum &a, const PauliSum &b);

} // namespace detail

} // namespace rvqite
