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

// Independent dense references for the tests: Kronecker-product Paulis,
// the Schwinger Hamiltonian written straight from its matrix elements,
// Hermitian exponentials and finite differences.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rvqite/schwinger.hpp"
#include "rvqite/statevector.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

inline MatrixXcd single(char p) {
    MatrixXcd m(2, 2);
    const cplx i{0.0, 1.0};
    switch (p) {
    case 'X':
        m << 0, 1, 1, 0;
        break;
    case 'Y':
        m << 0, -i, i, 0;
        break;
    case 'Z':
        m << 1, 0, 0, -1;
        break;
    default:
        m << 1, 0, 0, 1;
    }
    return m;
}

inline MatrixXcd kron(const MatrixXcd &a, const MatrixXcd &b) {
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) =
                a(r, c) * b;
        }
    }
    return out;
}

/// `word[k]` acts on site k. Site 0 is the least significant bit, so it is
/// the right-most Kronecker factor.
inline MatrixXcd pauli(const std::string &word) {
    MatrixXcd m = MatrixXcd::Identity(1, 1);
    for (char c : word) {
        m = kron(single(c), m);
    }
    return m;
}

inline double z_of(std::uint64_t bits, int site) {
    return ((bits >> site) & 1u) ? -1.0 : 1.0;
}

/// H(mu, m, theta) from its matrix elements in the computational basis.
inline MatrixXcd schwinger(const rvqite::SchwingerParams &p) {
    const int n = p.n_sites;
    const std::uint64_t dim = std::uint64_t{1} << n;
    const double J = p.a_g / 2.0;
    const double w = 1.0 / (2.0 * p.a_g);
    MatrixXcd h = MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                  static_cast<Eigen::Index>(dim));
    for (std::uint64_t b = 0; b < dim; ++b) {
        double diag = 0.0;
        double field = 0.0;
        for (int j = 0; j + 1 < n; ++j) {
            field += (z_of(b, j) + (j % 2 == 0 ? 1.0 : -1.0)) / 2.0;
            const double l = field + p.theta / (2.0 * std::numbers::pi);
            diag += J * l * l;
        }
        double charge = 0.0;
        for (int j = 0; j < n; ++j) {
            diag += p.m_over_g / 2.0 * (j % 2 == 0 ? 1.0 : -1.0) * z_of(b, j);
            charge += z_of(b, j) / 2.0;
        }
        diag -= p.mu_over_g * charge;
        const auto ib = static_cast<Eigen::Index>(b);
        h(ib, ib) += diag;
        // (XX + YY)/2 swaps antiparallel neighbours with amplitude 1.
        for (int j = 0; j + 1 < n; ++j) {
            if (((b >> j) & 1u) != ((b >> (j + 1)) & 1u)) {
                const auto c = static_cast<Eigen::Index>(b ^ (std::uint64_t{3} << j));
                h(c, ib) += w;
            }
        }
    }
    return h;
}

/// Q = (1/2) sum Z_j as a dense diagonal matrix.
inline MatrixXcd charge(int n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    MatrixXcd q = MatrixXcd::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
            s += z_of(static_cast<std::uint64_t>(b), j) / 2.0;
        }
        q(b, b) = s;
    }
    return q;
}

/// exp(i v G) for Hermitian G.
inline MatrixXcd expi(const MatrixXcd &g, double v) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(g);
    const cplx i{0.0, 1.0};
    VectorXcd phases(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
        phases[k] = std::exp(i * v * es.eigenvalues()[k]);
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline VectorXcd as_vector(const rvqite::StateVector &psi) {
    VectorXcd v(static_cast<Eigen::Index>(psi.dimension()));
    for (std::size_t k = 0; k < psi.dimension(); ++k) {
        v[static_cast<Eigen::Index>(k)] = psi[k];
    }
    return v;
}

/// Central difference of a vector-valued function of one coordinate.
inline VectorXcd central_difference(
    const std::function<VectorXcd(const std::vector<double> &)> &f,
    std::vector<double> x, std::size_t k, double h) {
    const double x0 = x[k];
    x[k] = x0 + h;
    const VectorXcd plus = f(x);
    x[k] = x0 - h;
    const VectorXcd minus = f(x);
    return (plus - minus) / (2.0 * h);
}

/// Lowest eigenvalue of a dense Hermitian matrix.
inline double lowest(const MatrixXcd &h) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues()[0];
}

} // namespace oracle
