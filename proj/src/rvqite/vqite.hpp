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
 * Variational imaginary-time evolution under McLachlan's principle.
 *
 * The parameter flow solves A theta_dot = -C with
 *
 *     A_ij = Re <d_i psi | d_j psi>,    C_i = Re <d_i psi | H | psi>,
 *
 * and each step is scored by the squared McLachlan distance
 *
 *     Delta^2 = theta_dot^T A theta_dot + 2 theta_dot^T C + Var(H).
 *
 * The regularized update eigendecomposes A and drops every eigendirection
 * whose eigenvalue is <= epsilon, negative ones included.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rvqite/circuit.hpp"
#include "rvqite/pauli.hpp"

namespace rvqite {

struct McLachlanSystem {
    Eigen::MatrixXd A;
    Eigen::VectorXd C;
    double var_h = 0.0;
    double energy = 0.0;
};

enum class UpdateRule : std::uint8_t { Regularized, PseudoInverse, Gradient };
enum class DerivativeMode : std::uint8_t { Analytic, ParameterShift };

struct VqiteConfig {
    double dtau = 0.1;
    double epsilon = 1e-6;
    int max_iters = 500;
    double stop_delta2 = 1e-10;
    UpdateRule rule = UpdateRule::Regularized;
    DerivativeMode mode = DerivativeMode::Analytic;
    /// Relative singular-value cutoff of the pseudo-inverse baseline.
    double rcond = 1e-15;
    /// Gradient-descent step; defaults to dtau.
    std::optional<double> learning_rate;
    std::uint64_t seed = 0;

    void validate() const;
    [[nodiscard]] double step_size() const noexcept {
        return rule == UpdateRule::Gradient ? learning_rate.value_or(dtau)
                                            : dtau;
    }
};

struct UpdateResult {
    Eigen::VectorXd theta_dot;
    /// Eigenvalues of A, ascending.
    Eigen::VectorXd eigenvalues;
    double kappa = 1.0;
    int truncated_count = 0;
    bool stalled = false;
};

struct StepReport {
    int iter = 0;
    double energy = 0.0;
    double delta2 = 0.0;
    double kappa = 1.0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    int truncated_count = 0;
    double charge = 0.0;
};

enum class RunStatus : std::uint8_t { MaxIters, Converged, Stalled, Aborted };

struct EvolveResult {
    std::vector<StepReport> steps;
    std::vector<double> final_params;
    double final_energy = 0.0;
    RunStatus status = RunStatus::MaxIters;
    std::string diagnostic;
};

[[nodiscard]] const char *to_string(UpdateRule r) noexcept;
[[nodiscard]] const char *to_string(RunStatus s) noexcept;
[[nodiscard]] UpdateRule parse_update_rule(const std::string &s);

/// Analytic assembly from derivative states (Gram matrix of their real part).
[[nodiscard]] McLachlanSystem assemble(const Circuit &c,
                                       std::span<const double> params,
                                       const PauliSum &h);

/// Hardware-faithful assembly: A from ancilla overlaps, C from parameter
/// shifts. Cost grows with the square of the generator-term count.
[[nodiscard]] McLachlanSystem assemble_shift(const Circuit &c,
                                             std::span<const double> params,
                                             const PauliSum &h);

/// |lambda|_max / |lambda|_min over the spectrum; +inf if a zero is present.
[[nodiscard]] double condition_number(const Eigen::VectorXd &eigenvalues);

[[nodiscard]] UpdateResult regularized_update(const McLachlanSystem &sys,
                                              double epsilon);

[[nodiscard]] UpdateResult pseudo_inverse_update(const McLachlanSystem &sys,
                                                 double rcond = 1e-15);

/// theta_dot = -2C, the plain energy gradient direction.
[[nodiscard]] UpdateResult gradient_update(const McLachlanSystem &sys);

/// Throws Errc::solver below -1e-6; values in [-1e-10, 0) clamp to 0.
[[nodiscard]] double mclachlan_delta2(const McLachlanSystem &sys,
                                      const Eigen::VectorXd &theta_dot);

/// Per-parameter C from energies at +-pi/4 term shifts:
/// C_k = (1/2) sum_terms [E(+pi/4) - E(-pi/4)].
[[nodiscard]] Eigen::VectorXd shift_rule_C(const Circuit &c,
                                           std::span<const double> params,
                                           const PauliSum &h);

/// A from ancilla sigma^z readout of pi/2-shifted state pairs.
[[nodiscard]] Eigen::MatrixXd ancilla_A(const Circuit &c,
                                        std::span<const double> params);

struct EvolveOptions {
    /// Measured each step when set (typically the U(1) charge).
    const PauliSum *charge = nullptr;
    /// Called after each recorded step.
    std::function<void(const StepReport &)> on_step;
};

/// theta <- theta + step * theta_dot until max_iters, or until both Delta^2
/// and Var(H) drop below stop_delta2. Non-finite parameters end the run with
/// RunStatus::Aborted.
[[nodiscard]] EvolveResult evolve(const Circuit &c,
                                  std::span<const double> theta0,
                                  const PauliSum &h, const VqiteConfig &cfg,
                                  const EvolveOptions &opts = {});

struct HistogramSpec {
    double log10_lo = -20.0;
    double log10_hi = 2.0;
    int bins = 44;
};

struct Histogram {
    std::vector<double> edges; // log10 |lambda|, bins + 1 entries
    std::vector<long> counts;
};

struct SpectrumStats {
    std::vector<double> eigenvalues;
    std::vector<double> kappas;
    Histogram negative;
    Histogram positive;
    long zero_count = 0;
    long negative_count = 0;
    long positive_count = 0;
};

/// Pools the spectra of the given A matrices; bins by log10 |lambda| and
/// splits by sign.
[[nodiscard]] SpectrumStats
spectrum_statistics(std::span<const Eigen::MatrixXd> samples,
                    const HistogramSpec &spec = {});

} // namespace rvqite
