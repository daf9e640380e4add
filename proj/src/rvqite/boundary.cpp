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

#include "rvqite/boundary.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "rvqite/error.hpp"

namespace rvqite {

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

bool sectors_exist(int n_sites, int q) {
    return 2 * std::abs(q) <= n_sites && 2 * std::abs(q + 1) <= n_sites;
}

double checked_f(ExactOracle &oracle, int q, const SchwingerParams &p,
                 int &evaluations) {
    ++evaluations;
    const double v = f_q(oracle, q, p);
    require(std::isfinite(v), Errc::solver, "f_q is not finite");
    return v;
}

} // namespace

const char *to_string(BoundaryAxis a) noexcept {
    switch (a) {
    case BoundaryAxis::Mu:
        return "mu";
    case BoundaryAxis::Theta:
        return "theta";
    case BoundaryAxis::Mass:
        return "m";
    }
    return "?";
}

const char *to_string(Plane p) noexcept {
    return p == Plane::ThetaMu ? "theta_mu" : "theta_m";
}

SchwingerParams with_axis(SchwingerParams p, BoundaryAxis axis, double value) {
    switch (axis) {
    case BoundaryAxis::Mu:
        p.mu_over_g = value;
        break;
    case BoundaryAxis::Theta:
        p.theta = 2.0 * std::numbers::pi * value;
        break;
    case BoundaryAxis::Mass:
        p.m_over_g = value;
        break;
    }
    return p;
}

double axis_value(const SchwingerParams &p, BoundaryAxis axis) {
    switch (axis) {
    case BoundaryAxis::Mu:
        return p.mu_over_g;
    case BoundaryAxis::Theta:
        return p.theta / (2.0 * std::numbers::pi);
    case BoundaryAxis::Mass:
        return p.m_over_g;
    }
    return 0.0;
}

double f_q(ExactOracle &oracle, int q, const SchwingerParams &p) {
    require(sectors_exist(p.n_sites, q), Errc::capacity,
            "boundary q=" + std::to_string(q) + " needs sectors beyond N/2");
    SchwingerParams zero_mu = p;
    zero_mu.mu_over_g = 0.0;
    const double upper = oracle.sector_lowest(zero_mu, q + 1).energy;
    const double lower = oracle.sector_lowest(zero_mu, q).energy;
    return p.mu_over_g - (upper - lower);
}

std::optional<BoundaryRoot> bisect(ExactOracle &oracle,
                                   const BoundaryQuery &query) {
    require(query.lo < query.hi, Errc::invalid_argument,
            "bracket needs lo < hi");
    require(query.tol > 0.0, Errc::invalid_argument, "tol must be positive");
    BoundaryRoot root;
    root.q = query.q;

    if (query.axis == BoundaryAxis::Mu && !query.force_bisection) {
        // f is affine in mu with unit slope.
        const double gap = -checked_f(oracle, query.q,
                                      with_axis(query.base, query.axis, 0.0),
                                      root.evaluations);
        if (gap < query.lo || gap > query.hi) {
            return std::nullopt;
        }
        root.value = gap;
        root.sign_lo = sign_of(query.lo - gap);
        root.sign_hi = sign_of(query.hi - gap);
        root.residual = 0.0;
        return root;
    }

    auto f = [&](double x) {
        return checked_f(oracle, query.q, with_axis(query.base, query.axis, x),
                         root.evaluations);
    };
    double lo = query.lo;
    double hi = query.hi;
    double flo = f(lo);
    const double fhi = f(hi);
    root.sign_lo = sign_of(flo);
    root.sign_hi = sign_of(fhi);
    if (flo == 0.0 || fhi == 0.0) {
        root.value = flo == 0.0 ? lo : hi;
        return root;
    }
    if (root.sign_lo == root.sign_hi) {
        return std::nullopt;
    }
    while (hi - lo > query.tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        ++root.iterations;
        if (fm == 0.0) {
            lo = hi = mid;
            break;
        }
        if (sign_of(fm) == sign_of(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    root.value = 0.5 * (lo + hi);
    root.residual = std::abs(f(root.value));
    return root;
}

BoundaryTrace trace_boundary(ExactOracle &oracle, int q, Plane plane,
                             const AxisGrid &first, const AxisGrid &second,
                             const SchwingerParams &base, double tol) {
    require(first.points >= 1 && second.points >= 1, Errc::invalid_argument,
            "boundary grids need at least one point");
    BoundaryTrace trace;
    trace.q = q;
    trace.plane = plane;
    if (!sectors_exist(base.n_sites, q)) {
        trace.diagnostic = "q=" + std::to_string(q) +
                           " has no q+1 partner sector at N=" +
                           std::to_string(base.n_sites);
        return trace;
    }
    const BoundaryAxis along =
        plane == Plane::ThetaMu ? BoundaryAxis::Mu : BoundaryAxis::Mass;
    for (int i = 0; i < first.points; ++i) {
        BoundaryPoint pt;
        pt.first = first.value(i);
        const auto column = with_axis(base, BoundaryAxis::Theta, pt.first);
        if (along == BoundaryAxis::Mu || second.points < 2) {
            pt.root = bisect(oracle, {q, along, column, second.lo, second.hi,
                                      tol, false});
        } else {
            double prev = f_q(oracle, q, with_axis(column, along, second.value(0)));
            for (int j = 1; j < second.points && !pt.root; ++j) {
                const double x = second.value(j);
                const double cur = f_q(oracle, q, with_axis(column, along, x));
                if (prev == 0.0 || sign_of(prev) != sign_of(cur)) {
                    pt.root = bisect(oracle, {q, along, column,
                                              second.value(j - 1), x, tol,
                                              false});
                }
                prev = cur;
            }
        }
        trace.points.push_back(pt);
    }
    return trace;
}

} // namespace rvqite
