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

#include "rvqite/ansatz.hpp"

#include <cstdlib>
#include <numbers>
#include <random>

#include "rvqite/error.hpp"

namespace rvqite {

void AnsatzSpec::validate() const {
    require(n_sites >= 2 && n_sites % 2 == 0, Errc::invalid_argument,
            "ansatz needs an even site count >= 2");
    require(n_sites <= kMaxStateQubits, Errc::capacity,
            "ansatz site count above the statevector limit");
    require(depth >= 1, Errc::invalid_argument, "ansatz depth must be >= 1");
    if (init == ChargeInit::Fixed) {
        require(2 * std::abs(q) <= n_sites, Errc::capacity,
                "charge sector q=" + std::to_string(q) +
                    " needs more than N sites");
    }
}

std::uint64_t vacuum_bitstring(int n_sites) {
    require(n_sites >= 2 && n_sites % 2 == 0 && n_sites <= 63,
            Errc::invalid_argument, "vacuum needs an even site count");
    std::uint64_t bits = 0;
    for (int i = 0; i < n_sites; i += 2) {
        bits |= std::uint64_t{1} << i;
    }
    return bits;
}

std::uint64_t charged_bitstring(int n_sites, int q) {
    std::uint64_t bits = vacuum_bitstring(n_sites);
    const int k = 2 * std::abs(q);
    require(k <= n_sites, Errc::capacity,
            "charge sector q=" + std::to_string(q) + " does not fit N=" +
                std::to_string(n_sites));
    const std::uint64_t head = (k == 0) ? 0 : ((std::uint64_t{1} << k) - 1);
    bits &= ~head;
    if (q < 0) {
        bits |= head;
    }
    return bits;
}

LayerOffsets layer_offsets(const AnsatzSpec &spec, int layer) {
    const int base = layer * (3 * spec.n_sites - 2);
    return {base, base + spec.n_sites, base + 2 * spec.n_sites - 1};
}

Circuit build_circuit(const AnsatzSpec &spec) {
    spec.validate();
    const int n = spec.n_sites;
    std::vector<Gate> gates;
    std::uint64_t init = 0;
    if (spec.init == ChargeInit::Free) {
        const int tau0 = spec.depth * (3 * n - 2);
        for (int i = 0; i < n; ++i) {
            gates.push_back(Gate::rx(i, tau0 + i));
        }
    } else {
        init = charged_bitstring(n, spec.q);
    }
    for (int l = 0; l < spec.depth; ++l) {
        const auto off = layer_offsets(spec, l);
        for (int i = 0; i < n; ++i) {
            gates.push_back(Gate::rz(i, off.alpha + i));
        }
        for (const int parity : {1, 0}) {
            for (int b = parity; b + 1 < n; b += 2) {
                gates.push_back(Gate::rzz(b, b + 1, off.gamma + b));
            }
            for (int b = parity; b + 1 < n; b += 2) {
                gates.push_back(Gate::rxxyy(b, b + 1, off.beta + b));
            }
        }
    }
    return Circuit(n, init, std::move(gates), spec.parameter_count());
}

std::vector<double> random_parameters(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-std::numbers::pi,
                                                std::numbers::pi);
    std::vector<double> out(static_cast<std::size_t>(count));
    for (auto &v : out) {
        v = dist(rng);
    }
    return out;
}

} // namespace rvqite
