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

#include "rvqite/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>

#include "rvqite/error.hpp"

namespace rvqite {

namespace {

void check_size(const SchwingerParams &p) {
    p.validate();
    require(p.n_sites <= kExactSiteCap, Errc::capacity,
            "exact diagonalization is capped at N=14");
}

void check_sector(int n_sites, int q) {
    require(2 * std::abs(q) <= n_sites, Errc::capacity,
            "charge sector q=" + std::to_string(q) + " is empty for N=" +
                std::to_string(n_sites));
}

} // namespace

std::vector<std::uint64_t> sector_basis(int n_sites, int q) {
    check_sector(n_sites, q);
    const int ones = n_sites / 2 - q;
    std::vector<std::uint64_t> out;
    const std::uint64_t dim = std::uint64_t{1} << n_sites;
    for (std::uint64_t b = 0; b < dim; ++b) {
        if (std::popcount(b) == ones) {
            out.push_back(b);
        }
    }
    return out;
}

Eigen::MatrixXcd sector_matrix(const PauliSum &h, int q) {
    const int n = h.qubit_count();
    require(n <= kExactSiteCap, Errc::capacity,
            "exact diagonalization is capped at N=14");
    const auto basis = sector_basis(n, q);
    std::vector<int> index(std::size_t{1} << n, -1);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        index[basis[i]] = static_cast<int>(i);
    }
    const auto dim = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &t : h.terms()) {
        for (std::size_t col = 0; col < basis.size(); ++col) {
            const std::uint64_t b = basis[col];
            const int row = index[b ^ t.string.x];
            if (row < 0) {
                continue;
            }
            m(row, static_cast<Eigen::Index>(col)) +=
                t.coefficient * basis_phase(t.string, b);
        }
    }
    return m;
}

Eigen::VectorXd full_spectrum(const SchwingerParams &p) {
    check_size(p);
    const Eigen::MatrixXcd m = to_dense(build_hamiltonian(p), kExactSiteCap);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    require(es.info() == Eigen::Success, Errc::solver,
            "dense eigensolver did not converge");
    return es.eigenvalues();
}

std::vector<double> sector_spectrum(const SchwingerParams &p, int q) {
    check_size(p);
    const Eigen::MatrixXcd m = sector_matrix(build_hamiltonian(p), q);
    Eigen::VectorXd lam;
    if (m.imag().cwiseAbs().maxCoeff() < 1e-14) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
            m.real(), Eigen::EigenvaluesOnly);
        require(es.info() == Eigen::Success, Errc::solver,
                "sector eigensolver did not converge");
        lam = es.eigenvalues();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            m, Eigen::EigenvaluesOnly);
        require(es.info() == Eigen::Success, Errc::solver,
                "sector eigensolver did not converge");
        lam = es.eigenvalues();
    }
    return {lam.data(), lam.data() + lam.size()};
}

RatioResult ratio(double e_min, double e_max, double e_qa) {
    const double span = e_max - e_min;
    require(span > 1e-14 * std::max(1.0, std::abs(e_max)),
            Errc::invalid_argument, "ratio undefined: E_max == E_min");
    const double slack = 1e-8 * std::max(1.0, span);
    require(e_qa >= e_min - slack && e_qa <= e_max + slack,
            Errc::invalid_argument, "energy outside the exact spectrum");
    return {e_max, e_min, e_qa, (e_max - e_qa) / span};
}

std::shared_ptr<const std::vector<double>>
ExactOracle::spectrum(const SchwingerParams &p, int q) {
    check_size(p);
    check_sector(p.n_sites, q);
    const Key key{p.n_sites, p.a_g, p.m_over_g, p.theta, p.mu_over_g, q};
    {
        std::shared_lock lock(mu_);
        if (auto it = cache_.find(key); it != cache_.end()) {
            return it->second;
        }
    }
    auto levels = std::make_shared<const std::vector<double>>(
        sector_spectrum(p, q));
    std::unique_lock lock(mu_);
    auto [it, inserted] = cache_.emplace(key, std::move(levels));
    if (inserted) {
        ++solves_;
    }
    return it->second;
}

SectorEnergy ExactOracle::sector_level(const SchwingerParams &p, int q,
                                       int n) {
    const auto levels = spectrum(p, q);
    require(n >= 0 && n < static_cast<int>(levels->size()),
            Errc::invalid_argument, "sector level index out of range");
    return {q, n, (*levels)[static_cast<std::size_t>(n)], p};
}

SectorEnergy ExactOracle::sector_lowest(const SchwingerParams &p, int q) {
    return sector_level(p, q, 0);
}

std::pair<double, double> ExactOracle::extremes(const SchwingerParams &p) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int q = -p.n_sites / 2; q <= p.n_sites / 2; ++q) {
        const auto levels = spectrum(p, q);
        lo = std::min(lo, levels->front());
        hi = std::max(hi, levels->back());
    }
    return {lo, hi};
}

RatioResult ExactOracle::ratio(const SchwingerParams &p, double e_qa) {
    const auto [lo, hi] = extremes(p);
    return rvqite::ratio(lo, hi, e_qa);
}

long ExactOracle::solves() const {
    std::shared_lock lock(mu_);
    return solves_;
}

} // namespace rvqite
