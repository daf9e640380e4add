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
 * Phase boundaries between the ground-state charge sectors q and q+1:
 * roots of f_q = mu - (E_0^{(q+1)} - E_0^{(q)}), energies taken at mu = 0
 * from the exact oracle.
 *
 * Axis values are in user units: mu/g, theta/2pi and m/g.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rvqite/exact.hpp"

namespace rvqite {

enum class BoundaryAxis : std::uint8_t { Mu, Theta, Mass };
enum class Plane : std::uint8_t { ThetaMu, ThetaMass };

[[nodiscard]] const char *to_string(BoundaryAxis a) noexcept;
[[nodiscard]] const char *to_string(Plane p) noexcept;

/// Inclusive grid of `points` evenly spaced values.
struct AxisGrid {
    double lo = 0.0;
    double hi = 1.0;
    int points = 2;

    [[nodiscard]] double value(int i) const noexcept {
        return points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
    }
    [[nodiscard]] double spacing() const noexcept {
        return points <= 1 ? 0.0 : (hi - lo) / (points - 1);
    }
};

/// Returns a copy of `p` with the axis coordinate set to `value`.
[[nodiscard]] SchwingerParams with_axis(SchwingerParams p, BoundaryAxis axis,
                                        double value);
[[nodiscard]] double axis_value(const SchwingerParams &p, BoundaryAxis axis);

/// f_q at p: p.mu_over_g - (E_0^{(q+1)}(0, m, theta) - E_0^{(q)}(0, m, theta)).
[[nodiscard]] double f_q(ExactOracle &oracle, int q, const SchwingerParams &p);

struct BoundaryQuery {
    int q = 0;
    BoundaryAxis axis = BoundaryAxis::Mu;
    /// Values of the two other coordinates; the axis coordinate is ignored.
    SchwingerParams base;
    double lo = 0.0;
    double hi = 1.0;
    double tol = 1e-6;
    /// Bisect along mu as well instead of using the closed form.
    bool force_bisection = false;
};

struct BoundaryRoot {
    double value = 0.0;
    int q = 0;
    double residual = 0.0;
    int sign_lo = 0;
    int sign_hi = 0;
    /// Halving steps taken (0 for the closed form).
    int iterations = 0;
    /// f_q evaluations, each two sector solves.
    int evaluations = 0;
};

/// First root of f_q inside [lo, hi]; nullopt when f has the same sign at
/// both ends (or, along mu, when the closed-form root lies outside).
[[nodiscard]] std::optional<BoundaryRoot> bisect(ExactOracle &oracle,
                                                 const BoundaryQuery &query);

struct BoundaryPoint {
    double first = 0.0;
    std::optional<BoundaryRoot> root;
};

struct BoundaryTrace {
    int q = 0;
    Plane plane = Plane::ThetaMu;
    std::vector<BoundaryPoint> points;
    std::string diagnostic;
};

/// For each theta/2pi on `first`, the root along the plane's second axis
/// inside `second`, bracketed at grid resolution first.
[[nodiscard]] BoundaryTrace trace_boundary(ExactOracle &oracle, int q,
                                           Plane plane, const AxisGrid &first,
                                           const AxisGrid &second,
                                           const SchwingerParams &base,
                                           double tol = 1e-6);

} // namespace rvqite
