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
 * Lattice Schwinger model with a theta term and chemical potential, in the
 * spin representation with the gauge links already eliminated (L_{-1} = 0).
 *
 * Units: g = 1. Energies are in units of g, the lattice spacing `a_g` is a*g,
 * `m_over_g` and `mu_over_g` are m/g and mu/g, and `theta` is in radians.
 *
 *   H = J sum_{j=0}^{N-2} [ sum_{i<=j} (Z_i + (-1)^i)/2 + theta/2pi ]^2
 *     + (w/2) sum_{j=0}^{N-2} (X_j X_{j+1} + Y_j Y_{j+1})
 *     + (m/2) sum_{j=0}^{N-1} (-1)^j Z_j
 *     - mu * Q,                      Q = (1/2) sum_j Z_j,
 *
 * with J = a/2 and w = 1/(2a).
 */

#pragma once

#include "rvqite/pauli.hpp"
#include "rvqite/statevector.hpp"

namespace rvqite {

struct SchwingerParams {
    int n_sites = 10;
    double a_g = 1.0;
    double m_over_g = 1.0;
    double theta = 0.0;
    double mu_over_g = 0.0;

    [[nodiscard]] double J() const noexcept { return 0.5 * a_g; }
    [[nodiscard]] double w() const noexcept { return 0.5 / a_g; }

    /// Throws on odd or non-positive N, or a_g <= 0.
    void validate() const;

    friend bool operator==(const SchwingerParams &,
                           const SchwingerParams &) = default;
};

[[nodiscard]] PauliSum build_hamiltonian(const SchwingerParams &p);

/// Q = (1/2) sum_j Z_j.
[[nodiscard]] PauliSum charge_operator(int n_sites);

/// Q_i = (Z_i + (-1)^i) / 2.
[[nodiscard]] PauliSum site_charge(int n_sites, int site);

/// Charge of a computational basis state.
[[nodiscard]] int bitstring_charge(int n_sites, std::uint64_t bits);

struct Observables {
    double charge = 0.0;
    double chiral_condensate = 0.0;
    double electric_field = 0.0;
};

/// <Q>, chi = (a/2N) sum (-1)^i <Z_i>, and
/// E = (1/2N) sum_i sum_{k<=i} (<Z_k> + (-1)^k) + theta/2pi.
[[nodiscard]] Observables observables(const StateVector &psi,
                                      const SchwingerParams &p);

} // namespace rvqite
