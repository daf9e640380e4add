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


#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "rvqite/ansatz.hpp"
#include "rvqite/circuit.hpp"
#include "rvqite/error.hpp"
#include "rvqite/schwinger.hpp"

using namespace rvqite;
using oracle::MatrixXcd;
using oracle::VectorXcd;

namespace {

constexpr double kPi = std::numbers::pi;

StateVector random_state(int n, std::mt19937 &rng) {
    std::normal_distribution<double> g;
    std::vector<cplx> a(std::size_t{1} << n);
    for (auto &x : a) {
        x = {g(rng), g(rng)};
    }
    auto s = StateVector::from_amplitudes(n, std::move(a));
    s.normalize();
    return s;
}

// Dense generator of a gate on `n` qubits, with the sign folded in.
MatrixXcd dense_generator(const Gate &g, int n) {
    PauliSum s(n);
    for (const auto &t : g.generator) {
        s.add(static_cast<double>(t.sign), t.string);
    }
    return to_dense(s);
}

} // namespace

TEST_CASE("RZ at pi/2 multiplies |0> by i") {
    const auto out = apply_gate(StateVector(1), Gate::rz(0, 0), kPi / 2);
    CHECK(std::abs(out[0] - cplx{0.0, 1.0}) < 1e-15);
    CHECK(std::abs(out[1]) < 1e-15);
}

TEST_CASE("RXXYY at pi/4 swaps an antiparallel pair with phase i") {
    const auto g = Gate::rxxyy(0, 1, 0);
    const auto a = apply_gate(StateVector::basis(2, 1), g, kPi / 4);
    CHECK(std::abs(a[2] - cplx{0.0, 1.0}) < 1e-14);
    CHECK(std::abs(a[1]) < 1e-14);
    const auto b = apply_gate(StateVector::basis(2, 2), g, kPi / 4);
    CHECK(std::abs(b[1] - cplx{0.0, 1.0}) < 1e-14);
    // Parallel pairs are untouched.
    for (std::uint64_t bits : {0u, 3u}) {
        const auto c = apply_gate(StateVector::basis(2, bits), g, 0.83);
        CHECK(std::abs(c[bits] - 1.0) < 1e-14);
    }
}

TEST_CASE("gates match dense exponentials of their generators") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    const int n = 4;
    const Gate gates[] = {Gate::rx(2, 0), Gate::rz(1, 0), Gate::rzz(0, 3, 0),
                          Gate::rxxyy(1, 2, 0), Gate::rxxyy(3, 0, 0)};
    for (const auto &g : gates) {
        const double v = u(rng);
        const auto psi = random_state(n, rng);
        const auto out = oracle::as_vector(apply_gate(psi, g, v));
        const oracle::VectorXcd expect =
            oracle::expi(dense_generator(g, n), v) * oracle::as_vector(psi);
        CHECK((out - expect).norm() < 1e-12);
        CHECK(std::abs(out.norm() - 1.0) < 1e-12);
    }
    // RX is exp(-i v X).
    const auto rx = oracle::as_vector(apply_gate(StateVector(1), Gate::rx(0, 0), 0.3));
    CHECK(std::abs(rx[0] - std::cos(0.3)) < 1e-15);
    CHECK(std::abs(rx[1] - cplx{0.0, -std::sin(0.3)}) < 1e-15);
}

TEST_CASE("zero angle is the identity") {
    std::mt19937 rng(5);
    const auto psi = random_state(3, rng);
    for (const auto &g : {Gate::rx(0, 0), Gate::rz(2, 0), Gate::rzz(0, 1, 0),
                          Gate::rxxyy(1, 2, 0)}) {
        const auto out = apply_gate(psi, g, 0.0);
        CHECK((oracle::as_vector(out) - oracle::as_vector(psi)).norm() < 1e-15);
    }
}

TEST_CASE("charge-conserving gates leave <Q> unchanged") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    const int n = 4;
    const auto q = charge_operator(n);
    for (const auto &g : {Gate::rz(1, 0), Gate::rzz(1, 2, 0), Gate::rxxyy(0, 1, 0),
                          Gate::rxxyy(2, 3, 0)}) {
        for (int k = 0; k < 10; ++k) {
            const auto psi = random_state(n, rng);
            const auto out = apply_gate(psi, g, u(rng));
            CHECK(std::abs(expectation(q, out) - expectation(q, psi)) < 1e-10);
        }
    }
}

TEST_CASE("sites out of range are rejected") {
    CHECK_THROWS_AS((void)apply_gate(StateVector(2), Gate::rz(2, 0), 0.1), Error);
    CHECK_THROWS_AS((void)apply_gate(StateVector(2), Gate::rzz(0, 0, 0), 0.1), Error);
    CHECK_THROWS_AS(Circuit(2, 0, {Gate::rz(0, 1)}, 1), Error);
    // Every parameter must be bound.
    CHECK_THROWS_AS(Circuit(2, 0, {Gate::rz(0, 0)}, 2), Error);
}

TEST_CASE("evaluate checks the parameter count") {
    const auto c = build_circuit({4, 1, ChargeInit::Fixed, 0});
    std::vector<double> p(3);
    CHECK_THROWS_AS((void)evaluate(c, p), Error);
    std::vector<double> ok(static_cast<std::size_t>(c.parameter_count()));
    CHECK_THROWS_AS((void)derivative_state(c, ok, c.parameter_count()), Error);
}

TEST_CASE("derivative states agree with central differences") {
    const auto c = build_circuit({4, 2, ChargeInit::Fixed, 0});
    const auto theta = random_parameters(c.parameter_count(), 17);
    const auto f = [&](const std::vector<double> &x) {
        return oracle::as_vector(evaluate(c, x));
    };
    for (const double h : {1e-3, 1e-4}) {
        double worst = 0.0;
        for (int k = 0; k < c.parameter_count(); ++k) {
            const auto fd = oracle::central_difference(f, theta, static_cast<std::size_t>(k), h);
            const auto an = oracle::as_vector(derivative_state(c, theta, k));
            worst = std::max(worst, (an - fd).norm());
        }
        CHECK(worst < 10.0 * h * h);
    }
}

TEST_CASE("derivative bundle matches single derivative states") {
    const auto c = build_circuit({4, 2, ChargeInit::Free, 0});
    const auto theta = random_parameters(c.parameter_count(), 23);
    const auto bundle = derivative_states(c, theta);
    CHECK((oracle::as_vector(bundle.psi) - oracle::as_vector(evaluate(c, theta))).norm() <
          1e-13);
    REQUIRE(bundle.columns.cols() == c.parameter_count());
    for (int k = 0; k < c.parameter_count(); ++k) {
        const auto d = oracle::as_vector(derivative_state(c, theta, k));
        CHECK((bundle.columns.col(k) - d).norm() < 1e-12);
    }
}

TEST_CASE("shared XY parameter derivative sums both insertions") {
    // One parameter drives the two commuting terms of RXXYY; the derivative
    // of exp(i v G) is i G exp(i v G).
    const Circuit c(2, 1, {Gate::rxxyy(0, 1, 0)}, 1);
    const std::vector<double> v{0.37};
    const auto g = dense_generator(c.gates()[0], 2);
    VectorXcd init = VectorXcd::Zero(4);
    init[1] = 1.0;
    const VectorXcd expect = cplx{0.0, 1.0} * g * oracle::expi(g, 0.37) * init;
    CHECK((oracle::as_vector(derivative_state(c, v, 0)) - expect).norm() < 1e-13);
}

TEST_CASE("R_x layer at zero has orthonormal derivatives -iX_k|0>") {
    const int n = 4;
    const auto c = build_circuit({n, 1, ChargeInit::Free, 0});
    std::vector<double> theta(static_cast<std::size_t>(c.parameter_count()), 0.0);
    const int tau0 = 3 * n - 2;
    std::vector<StateVector> d;
    for (int k = 0; k < n; ++k) {
        d.push_back(derivative_state(c, theta, tau0 + k));
        // The layer sits on |0...0>, and the HVA gates at zero are identity.
        const auto bits = std::uint64_t{1} << k;
        CHECK(std::abs(d.back()[bits] - cplx{0.0, -1.0}) < 1e-14);
    }
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            CHECK(std::abs(inner(d[static_cast<std::size_t>(a)], d[static_cast<std::size_t>(b)]) -
                           cplx{a == b ? 1.0 : 0.0, 0.0}) < 1e-14);
        }
    }
}

TEST_CASE("commuting blocks partition the gate list") {
    const auto c = build_circuit({6, 2, ChargeInit::Fixed, 1});
    int covered = 0;
    for (const auto &[b, e] : c.blocks()) {
        CHECK(b == covered);
        CHECK(e > b);
        for (int i = b; i < e; ++i) {
            for (int j = i + 1; j < e; ++j) {
                CHECK(c.gates()[static_cast<std::size_t>(i)].commutes_with(
                    c.gates()[static_cast<std::size_t>(j)]));
            }
        }
        covered = e;
    }
    CHECK(covered == static_cast<int>(c.gates().size()));
}

TEST_CASE("term shift on a composite generator rotates one term only") {
    const Circuit c(2, 1, {Gate::rxxyy(0, 1, 0)}, 1);
    const std::vector<double> v{0.2};
    const auto shifted = oracle::as_vector(evaluate_shifted(c, v, {0, 1, 0.5}));
    const MatrixXcd u = oracle::expi(oracle::pauli("XX"), 0.2) * oracle::expi(oracle::pauli("YY"), 0.7);
    VectorXcd init = VectorXcd::Zero(4);
    init[1] = 1.0;
    CHECK((shifted - u * init).norm() < 1e-13);
}
