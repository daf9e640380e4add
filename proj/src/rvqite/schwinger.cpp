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

#include "rvqite/schwinger.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <vector>

#include "rvqite/error.hpp"

namespace rvqite {

namespace {

double stagger(int i) { return (i % 2 == 0) ? 1.0 : -1.0; }

PauliString z_on(int site) { return PauliString::single(site, Axis::Z); }

PauliString pair(int a, Axis axis) {
    const auto p = PauliString::single(a, axis);
    const auto q = PauliString::single(a + 1, axis);
    return {p.x | q.x, p.z | q.z};
}

} // namespace

void SchwingerParams::validate() const {
    require(n_sites >= 2 && n_sites % 2 == 0, Errc::invalid_argument,
            "Schwinger model needs an even site count >= 2, got " +
                std::to_string(n_sites));
    require(n_sites <= kMaxStateQubits, Errc::capacity,
            "site count above the statevector limit");
    require(std::isfinite(a_g) && a_g > 0.0, Errc::invalid_argument,
            "lattice spacing a*g must be positive");
    require(std::isfinite(m_over_g) && std::isfinite(theta) &&
                std::isfinite(mu_over_g),
            Errc::invalid_argument, "model parameters must be finite");
}

PauliSum build_hamiltonian(const SchwingerParams &p) {
    p.validate();
    const int n = p.n_sites;
    PauliSum h(n);

    // Electric energy: J * sum_j L_j^2 with L_j = sum_{i<=j} Q_i + theta/2pi.
    PauliSum link = PauliSum::identity(n, p.theta / (2.0 * std::numbers::pi));
    for (int j = 0; j + 1 < n; ++j) {
        link.add(0.5, z_on(j));
        link.add(0.5 * stagger(j), PauliString{});
        link = simplify(link);
        h = h + p.J() * product(link, link);
    }

    for (int j = 0; j + 1 < n; ++j) {
        h.add(0.5 * p.w(), pair(j, Axis::X));
        h.add(0.5 * p.w(), pair(j, Axis::Y));
    }
    for (int j = 0; j < n; ++j) {
        h.add(0.5 * p.m_over_g * stagger(j), z_on(j));
    }
    if (p.mu_over_g != 0.0) {
        h = h - p.mu_over_g * charge_operator(n);
    }
    return simplify(h);
}

PauliSum charge_operator(int n_sites) {
    require(n_sites >= 1, Errc::invalid_argument, "charge operator needs N >= 1");
    PauliSum q(n_sites);
    for (int j = 0; j < n_sites; ++j) {
        q.add(0.5, z_on(j));
    }
    return q;
}

PauliSum site_charge(int n_sites, int site) {
    require(site >= 0 && site < n_sites, Errc::invalid_argument,
            "site out of range");
    PauliSum q(n_sites);
    q.add(0.5, z_on(site));
    q.add(0.5 * stagger(site), PauliString{});
    return q;
}

int bitstring_charge(int n_sites, std::uint64_t bits) {
    // Q = (1/2)(#zeros - #ones)
    return n_sites / 2 - std::popcount(bits);
}

Observables observables(const StateVector &psi, const SchwingerParams &p) {
    p.validate();
    require(psi.qubit_count() == p.n_sites, Errc::dimension_mismatch,
            "observables: state does not match the site count");
    psi.require_normalized();
    const int n = p.n_sites;
    std::vector<double> z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        z[static_cast<std::size_t>(i)] = z_expectation(psi, i);
    }
    Observables o;
    double partial = 0.0;
    double field = 0.0;
    for (int i = 0; i < n; ++i) {
        const double zi = z[static_cast<std::size_t>(i)];
        o.charge += 0.5 * zi;
        o.chiral_condensate += stagger(i) * zi;
        partial += zi + stagger(i);
        field += partial;
    }
    o.chiral_condensate *= p.a_g / (2.0 * n);
    o.electric_field = field / (2.0 * n) + p.theta / (2.0 * std::numbers::pi);
    return o;
}

} // namespace rvqite
