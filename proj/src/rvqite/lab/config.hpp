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
 * Experiment configuration: a JSON tree merged over built-in defaults.
 *
 * Unknown keys are rejected so typos surface as config errors instead of
 * silently running the default experiment.
 */

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "rvqite/ansatz.hpp"
#include "rvqite/boundary.hpp"
#include "rvqite/schwinger.hpp"
#include "rvqite/vqite.hpp"

namespace rvqite::lab {

using nlohmann::json;

struct BenchmarkSection {
    int samples = 20;
    std::vector<UpdateRule> methods;
    /// Empty means the ansatz depth only.
    std::vector<int> depths;
};

struct SweepSection {
    Plane plane = Plane::ThetaMu;
    AxisGrid theta{-1.0, 1.0, 41};
    AxisGrid mu{-1.5, 1.5, 31};
    AxisGrid mass{-1.0, 1.0, 31};
    ChargeInit init = ChargeInit::Free;
    bool warm_start = true;
    /// Iteration budget of warm-started cells; the first cell of each column
    /// runs solver.max_iters.
    int warm_iters = 150;
    /// Warm cells draw fresh R_x angles and inherit only the HVA angles.
    bool reseed_tau = true;
    /// Traces boundary.q over the sweep grid.
    bool boundary_overlay = true;

    [[nodiscard]] const AxisGrid &second() const noexcept {
        return plane == Plane::ThetaMu ? mu : mass;
    }
};

struct SpectrumSection {
    int samples = 10;
    HistogramSpec histogram;
};

struct SpectraSection {
    AxisGrid theta{-0.5, 0.5, 201};
    std::vector<int> q;
    int levels = 1;
};

struct BoundarySection {
    /// Boundaries between q and q+1.
    std::vector<int> q;
    double tol = 1e-6;
};

struct LabConfig {
    /// Fully resolved tree; recorded in every CSV header.
    json resolved;
    SchwingerParams model;
    AnsatzSpec ansatz;
    VqiteConfig solver;
    std::uint64_t seed = 1;
    /// Subcommand run by `rvqite-lab run`.
    std::string experiment = "ground";
    BenchmarkSection benchmark;
    SweepSection sweep;
    SpectrumSection spectrum;
    SpectraSection spectra;
    BoundarySection boundary;
};

inline constexpr const char *kSubcommands[] = {
    "ground", "benchmark", "sweep", "spectrum", "spectra", "boundary"};

[[nodiscard]] bool is_subcommand(std::string_view name);

[[nodiscard]] json default_tree();

/// Merges `user` over the defaults, validates and converts.
[[nodiscard]] LabConfig resolve(const json &user);

[[nodiscard]] json parse_text(std::string_view text);
[[nodiscard]] json load_file(const std::string &path);

/// Sets a dotted path ("solver.epsilon") in `tree`, creating objects.
void set_path(json &tree, std::string_view dotted, json value);

/// Flattened "a.b.c" -> dumped value pairs in key order.
[[nodiscard]] std::vector<std::pair<std::string, std::string>>
flatten(const json &tree);

/// splitmix64 of (seed, index); gives every sample an independent stream.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed,
                                        std::uint64_t index) noexcept;

} // namespace rvqite::lab
