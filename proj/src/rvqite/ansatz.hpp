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
 * Hamiltonian variational ansatz and its initial states.
 *
 * One layer applies, in order,
 *
 *     U_z(alpha), U_zz,odd(gamma), U_xy,odd(beta), U_zz,even(gamma),
 *     U_xy,even(beta)
 *
 * where bond n joins sites n and n+1 and is "even" when n is even. The
 * parameters of layer l occupy [l*(3N-2), (l+1)*(3N-2)): N alphas (per site),
 * then N-1 gammas and N-1 betas (per bond). In free-charge mode the N
 * R_x(tau_i) = exp(-i tau_i X_i) angles follow all layers.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "rvqite/circuit.hpp"

namespace rvqite {

enum class ChargeInit : std::uint8_t { Fixed, Free };

struct AnsatzSpec {
    int n_sites = 10;
    int depth = 5;
    ChargeInit init = ChargeInit::Fixed;
    int q = 0;

    [[nodiscard]] int parameter_count() const noexcept {
        return depth * (3 * n_sites - 2) +
               (init == ChargeInit::Free ? n_sites : 0);
    }
    void validate() const;
};

/// Q_i = 0 on every site: bit set (sigma^z = -1) on even sites.
[[nodiscard]] std::uint64_t vacuum_bitstring(int n_sites);

/// First 2|q| sites at sigma^z = sign(q), the rest in the vacuum pattern.
[[nodiscard]] std::uint64_t charged_bitstring(int n_sites, int q);

[[nodiscard]] Circuit build_circuit(const AnsatzSpec &spec);

/// Parameter offsets of layer `layer` (alpha, gamma, beta starts).
struct LayerOffsets {
    int alpha;
    int gamma;
    int beta;
};
[[nodiscard]] LayerOffsets layer_offsets(const AnsatzSpec &spec, int layer);

/// I.i.d. uniform on [-pi, pi] from a seeded mt19937_64.
[[nodiscard]] std::vector<double> random_parameters(int count,
                                                    std::uint64_t seed);

} // namespace rvqite
