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

#include "rvqite/statevector.hpp"

#include <bit>
#include <cmath>
#include <fstream>

#include "rvqite/error.hpp"

namespace rvqite {

namespace {

void check_qubits(int qubits) {
    require(qubits >= 1 && qubits <= kMaxStateQubits, Errc::capacity,
            "statevector qubit count out of range: " + std::to_string(qubits));
}

} // namespace

StateVector::StateVector(int qubits) : qubits_(qubits) {
    check_qubits(qubits);
    amps_.assign(std::size_t{1} << qubits, cplx{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector StateVector::basis(int qubits, std::uint64_t bits) {
    StateVector psi(qubits);
    require(bits < psi.dimension(), Errc::invalid_argument,
            "basis bitstring does not fit the register");
    psi.amps_[0] = 0.0;
    psi.amps_[bits] = 1.0;
    return psi;
}

StateVector StateVector::from_amplitudes(int qubits, std::vector<cplx> amps) {
    check_qubits(qubits);
    require(amps.size() == (std::size_t{1} << qubits), Errc::dimension_mismatch,
            "amplitude count does not match 2^qubits");
    StateVector psi(1);
    psi.qubits_ = qubits;
    psi.amps_ = std::move(amps);
    return psi;
}

double StateVector::norm() const noexcept {
    double s = 0.0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

void StateVector::normalize() {
    const double n = norm();
    require(n > 0.0, Errc::invalid_argument, "cannot normalize a zero state");
    for (auto &a : amps_) {
        a /= n;
    }
}

void StateVector::require_normalized(double tol) const {
    require(std::abs(norm() - 1.0) <= tol, Errc::invalid_argument,
            "state is not normalized");
}

cplx inner(const StateVector &a, const StateVector &b) {
    require(a.qubit_count() == b.qubit_count(), Errc::dimension_mismatch,
            "inner: qubit counts differ");
    cplx s{0.0, 0.0};
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += std::conj(x[i]) * y[i];
    }
    return s;
}

StateVector with_ancilla(const StateVector &a, const StateVector &b) {
    require(a.qubit_count() == b.qubit_count(), Errc::dimension_mismatch,
            "with_ancilla: qubit counts differ");
    a.require_normalized();
    b.require_normalized();
    // (|+>a + |->b)/sqrt2 = (|0>(a+b) + |1>(a-b)) / 2
    const std::size_t dim = a.dimension();
    std::vector<cplx> amps(2 * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        amps[i] = 0.5 * (a[i] + b[i]);
        amps[i + dim] = 0.5 * (a[i] - b[i]);
    }
    return StateVector::from_amplitudes(a.qubit_count() + 1, std::move(amps));
}

double z_expectation(const StateVector &psi, int site) {
    require(site >= 0 && site < psi.qubit_count(), Errc::invalid_argument,
            "z_expectation: site out of range");
    const std::size_t mask = std::size_t{1} << site;
    double s = 0.0;
    for (std::size_t i = 0; i < psi.dimension(); ++i) {
        const double p = std::norm(psi[i]);
        s += (i & mask) ? -p : p;
    }
    return s;
}

void write_amplitudes(const StateVector &psi, const std::string &path) {
    static_assert(std::endian::native == std::endian::little,
                  "amplitude dump assumes a little-endian host");
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), Errc::io, "cannot open " + path);
    for (const auto &a : psi.amplitudes()) {
        const double re = a.real();
        const double im = a.imag();
        out.write(reinterpret_cast<const char *>(&re), sizeof re);
        out.write(reinterpret_cast<const char *>(&im), sizeof im);
    }
    require(static_cast<bool>(out), Errc::io, "write failed: " + path);
}

StateVector read_amplitudes(const std::string &path) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    require(static_cast<bool>(in), Errc::io, "cannot open " + path);
    const auto bytes = static_cast<std::size_t>(in.tellg());
    const std::size_t count = bytes / (2 * sizeof(double));
    require(count > 1 && std::has_single_bit(count) &&
                count * 2 * sizeof(double) == bytes,
            Errc::io, "amplitude file size is not 16 * 2^n bytes");
    in.seekg(0);
    std::vector<cplx> amps(count);
    for (auto &a : amps) {
        double re = 0.0;
        double im = 0.0;
        in.read(reinterpret_cast<char *>(&re), sizeof re);
        in.read(reinterpret_cast<char *>(&im), sizeof im);
        a = {re, im};
    }
    return StateVector::from_amplitudes(std::countr_zero(count),
                                        std::move(amps));
}

} // namespace rvqite
