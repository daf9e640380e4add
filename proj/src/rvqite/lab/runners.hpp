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
 * Experiment drivers behind the lab subcommands.
 *
 * Every runner returns structured results and writes its CSV files into
 * RunOptions::out_dir. Work items run on a pool of RunOptions::jobs threads
 * and are gathered in grid order, so output does not depend on scheduling.
 *
 * Sample i of any randomized experiment starts from
 * random_parameters(count, derive_seed(seed, i)).
 */

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rvqite/lab/config.hpp"

namespace rvqite::lab {

struct RunOptions {
    std::string out_dir = ".";
    int jobs = 1;
    bool dump_hamiltonian = false;
    /// Ground runs write the final amplitudes here when non-empty.
    std::string dump_state_path;
    bool gnuplot = false;
    /// Test hook for the spectrum diagnostic: replaces A^R of sample i.
    std::function<Eigen::MatrixXd(int sample, std::uint64_t seed)>
        spectrum_sampler;
};

struct RunReport {
    std::string summary;
    std::vector<std::string> files;
    bool solver_failed = false;
};

/// (E_max - e) / (E_max - E_min) without range checks.
[[nodiscard]] double ratio_of(std::pair<double, double> extremes, double e);

struct GroundResult {
    EvolveResult run;
    double exact_min = 0.0;
    double exact_max = 0.0;
    double ratio = 0.0;
    Observables observables;
    RunReport report;
};

[[nodiscard]] GroundResult run_ground(const LabConfig &cfg,
                                      const RunOptions &opts);

struct MethodCurve {
    int depth = 0;
    UpdateRule method = UpdateRule::Regularized;
    /// Indexed by iteration 0..max_iters; entry max_iters is the final state.
    std::vector<double> mean;
    std::vector<double> stddev;
    std::vector<double> final_ratios;
    std::vector<RunStatus> statuses;
};

struct BenchmarkResult {
    std::vector<MethodCurve> curves;
    RunReport report;
};

[[nodiscard]] BenchmarkResult run_benchmark(const LabConfig &cfg,
                                            const RunOptions &opts);

struct GridCell {
    double first = 0.0;
    double second = 0.0;
    double energy = 0.0;
    double ratio = 0.0;
    Observables obs;
    double delta2 = 0.0;
    int iterations = 0;
    std::uint64_t seed = 0;
    bool warm = false;
    /// Empty on success.
    std::string error;
};

struct SweepResult {
    Plane plane = Plane::ThetaMu;
    AxisGrid first;
    AxisGrid second;
    /// Row-major: cells[i * second.points + j].
    std::vector<GridCell> cells;
    std::vector<BoundaryTrace> overlay;
    /// max |Q(mu, theta) + Q(-mu, -theta)| over mirrored grid pairs.
    std::optional<double> quasi_symmetry;
    /// Fraction of overlay roots within one cell of a |delta <Q>| maximum.
    std::optional<double> overlay_agreement;
    RunReport report;

    [[nodiscard]] const GridCell &at(int i, int j) const {
        return cells[static_cast<std::size_t>(i * second.points + j)];
    }
};

[[nodiscard]] SweepResult run_sweep(const LabConfig &cfg,
                                    const RunOptions &opts);

struct SpectrumResult {
    SpectrumStats stats;
    std::vector<std::uint64_t> seeds;
    RunReport report;
};

[[nodiscard]] SpectrumResult run_spectrum(const LabConfig &cfg,
                                          const RunOptions &opts);

struct Crossing {
    int q = 0;
    double theta_over_2pi = 0.0;
};

struct SpectraResult {
    std::vector<SectorEnergy> levels;
    std::vector<Crossing> crossings;
    RunReport report;
};

[[nodiscard]] SpectraResult run_spectra(const LabConfig &cfg,
                                        const RunOptions &opts);

struct BoundaryResult {
    std::vector<BoundaryTrace> traces;
    RunReport report;
};

[[nodiscard]] BoundaryResult run_boundary(const LabConfig &cfg,
                                          const RunOptions &opts);

/// Dispatches by subcommand name; "run" uses the config's experiment.
[[nodiscard]] RunReport run_subcommand(const std::string &name,
                                       const LabConfig &cfg,
                                       const RunOptions &opts);

/// Runs fn(0..count-1) on up to `jobs` threads; rethrows the first failure.
void parallel_for(int count, int jobs, const std::function<void(int)> &fn);

} // namespace rvqite::lab
