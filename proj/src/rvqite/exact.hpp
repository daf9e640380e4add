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
 * Exact diagonalization of the Schwinger Hamiltonian.
 *
 * Computational basis states are Q eigenstates (Q = N/2 - popcount), so the
 * charge-q block is obtained by filtering basis states and solved densely.
 */

#pragma once

#include <map>
#include <memory>
#include <shared_mutex>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "rvqite/schwinger.hpp"

namespace rvqite {

inline constexpr int kExactSiteCap = 14;

struct SectorEnergy {
    int q = 0;
    int n = 0;
    double energy = 0.0;
    SchwingerParams params;
};

struct RatioResult {
    double e_max = 0.0;
    double e_min = 0.0;
    double e_qa = 0.0;
    double ratio = 0.0;
};

/// Basis states with total charge q, ascending.
[[nodiscard]] std::vector<std::uint64_t> sector_basis(int n_sites, int q);

/// P_q H P_q as a dense Hermitian matrix over sector_basis(N, q).
[[nodiscard]] Eigen::MatrixXcd sector_matrix(const PauliSum &h, int q);

/// All 2^N eigenvalues of H(mu, m, theta), ascending, from the dense matrix.
[[nodiscard]] Eigen::VectorXd full_spectrum(const SchwingerParams &p);

/// Eigenvalues of the charge-q block, ascending.
[[nodiscard]] std::vector<double> sector_spectrum(const SchwingerParams &p,
                                                  int q);

/// (E_max - e_qa) / (E_max - E_min).
[[nodiscard]] RatioResult ratio(double e_min, double e_max, double e_qa);

/// Memoizing oracle; safe for concurrent use.
class ExactOracle {
  public:
    [[nodiscard]] std::shared_ptr<const std::vector<double>>
    spectrum(const SchwingerParams &p, int q);

    [[nodiscard]] SectorEnergy sector_lowest(const SchwingerParams &p, int q);
    [[nodiscard]] SectorEnergy sector_level(const SchwingerParams &p, int q,
                                            int n);

    /// Global (E_min, E_max) over every sector.
    [[nodiscard]] std::pair<double, double> extremes(const SchwingerParams &p);

    [[nodiscard]] RatioResult ratio(const SchwingerParams &p, double e_qa);

    /// Sector-block solves performed so far (cache misses).
    [[nodiscard]] long solves() const;

  private:
    using Key = std::tuple<int, double, double, double, double, int>;
    mutable std::shared_mutex mu_;
    std::map<Key, std::shared_ptr<const std::vector<double>>> cache_;
    long solves_ = 0;
};

} // namespace rvqite
