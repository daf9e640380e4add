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

#include "rvqite/vqite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rvqite/error.hpp"

namespace rvqite {

namespace {

using Eigen::Index;

struct Assembled {
    McLachlanSystem sys;
    StateVector psi;
};

void finish_energy(McLachlanSystem &sys, const StateVector &psi,
                   const PauliSum &h) {
    StateVector hpsi(psi.qubit_count());
    apply_into(h, psi.amplitudes(), hpsi.amplitudes());
    sys.energy = inner(psi, hpsi).real();
    const double hh = inner(hpsi, hpsi).real();
    sys.var_h = std::max(0.0, hh - sys.energy * sys.energy);
}

Assembled assemble_analytic(const Circuit &c, std::span<const double> params,
                            const PauliSum &h) {
    require(h.qubit_count() == c.qubit_count(), Errc::dimension_mismatch,
            "Hamiltonian and circuit sizes differ");
    auto bundle = derivative_states(c, params);
    const auto &d = bundle.columns;
    const auto dim = static_cast<Index>(bundle.psi.dimension());

    Eigen::VectorXcd hpsi(dim);
    apply_into(h, bundle.psi.amplitudes(),
               std::span<cplx>(hpsi.data(), static_cast<std::size_t>(dim)));
    const Eigen::Map<const Eigen::VectorXcd> psi(bundle.psi.amplitudes().data(),
                                                  dim);

    McLachlanSystem sys;
    sys.energy = psi.dot(hpsi).real();
    sys.var_h = std::max(0.0, hpsi.squaredNorm() - sys.energy * sys.energy);
    const Eigen::MatrixXd gram = (d.adjoint() * d).real();
    sys.A = 0.5 * (gram + gram.transpose());
    sys.C = (d.adjoint() * hpsi).real();
    return {std::move(sys), std::move(bundle.psi)};
}

Assembled assemble_hardware(const Circuit &c, std::span<const double> params,
                            const PauliSum &h) {
    McLachlanSystem sys;
    sys.A = ancilla_A(c, params);
    sys.C = shift_rule_C(c, params, h);
    auto psi = evaluate(c, params);
    finish_energy(sys, psi, h);
    return {std::move(sys), std::move(psi)};
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>
eigensolve(const Eigen::MatrixXd &a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    require(es.info() == Eigen::Success, Errc::solver,
            "eigendecomposition of A did not converge");
    return es;
}

// Beyond this magnitude an angle has no significant digits left modulo 2pi.
constexpr double kMaxAngle = 1e15;

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) {
        return std::isfinite(x) && std::abs(x) < kMaxAngle;
    });
}

} // namespace

void VqiteConfig::validate() const {
    require(std::isfinite(dtau) && dtau > 0.0, Errc::invalid_argument,
            "dtau must be positive");
    require(std::isfinite(epsilon) && epsilon >= 0.0, Errc::invalid_argument,
            "epsilon must be non-negative");
    require(max_iters >= 0, Errc::invalid_argument,
            "max_iters must be non-negative");
    require(std::isfinite(stop_delta2) && stop_delta2 >= 0.0,
            Errc::invalid_argument, "stop_delta2 must be non-negative");
    require(std::isfinite(rcond) && rcond >= 0.0, Errc::invalid_argument,
            "rcond must be non-negative");
    if (learning_rate) {
        require(std::isfinite(*learning_rate) && *learning_rate > 0.0,
                Errc::invalid_argument, "learning_rate must be positive");
    }
}

const char *to_string(UpdateRule r) noexcept {
    switch (r) {
    case UpdateRule::Regularized:
        return "regularized";
    case UpdateRule::PseudoInverse:
        return "pseudo_inverse";
    case UpdateRule::Gradient:
        return "gradient";
    }
    return "?";
}

const char *to_string(RunStatus s) noexcept {
    switch (s) {
    case RunStatus::MaxIters:
        return "max_iters";
    case RunStatus::Converged:
        return "converged";
    case RunStatus::Stalled:
        return "stalled";
    case RunStatus::Aborted:
        return "aborted";
    }
    return "?";
}

UpdateRule parse_update_rule(const std::string &s) {
    if (s == "regularized") {
        return UpdateRule::Regularized;
    }
    if (s == "pseudo_inverse") {
        return UpdateRule::PseudoInverse;
    }
    if (s == "gradient") {
        return UpdateRule::Gradient;
    }
    fail(Errc::config, "unknown update rule: " + s);
}

McLachlanSystem assemble(const Circuit &c, std::span<const double> params,
                         const PauliSum &h) {
    return assemble_analytic(c, params, h).sys;
}

McLachlanSystem assemble_shift(const Circuit &c,
                               std::span<const double> params,
                               const PauliSum &h) {
    return assemble_hardware(c, params, h).sys;
}

double condition_number(const Eigen::VectorXd &eigenvalues) {
    if (eigenvalues.size() == 0) {
        return 1.0;
    }
    const double hi = eigenvalues.cwiseAbs().maxCoeff();
    const double lo = eigenvalues.cwiseAbs().minCoeff();
    if (lo == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return hi / lo;
}

UpdateResult regularized_update(const McLachlanSystem &sys, double epsilon) {
    const Index m = sys.A.rows();
    UpdateResult out;
    out.theta_dot = Eigen::VectorXd::Zero(m);
    if (m == 0) {
        return out;
    }
    const auto es = eigensolve(sys.A);
    out.eigenvalues = es.eigenvalues();
    out.kappa = condition_number(out.eigenvalues);
    const Eigen::VectorXd c = es.eigenvectors().transpose() * sys.C;
    Eigen::VectorXd g = Eigen::VectorXd::Zero(m);
    for (Index k = 0; k < m; ++k) {
        const double lam = out.eigenvalues[k];
        if (lam > epsilon) {
            g[k] = -c[k] / lam;
        } else {
            ++out.truncated_count;
        }
    }
    out.stalled = out.truncated_count == m;
    out.theta_dot = es.eigenvectors() * g;
    return out;
}

UpdateResult pseudo_inverse_update(const McLachlanSystem &sys, double rcond) {
    const Index m = sys.A.rows();
    UpdateResult out;
    out.theta_dot = Eigen::VectorXd::Zero(m);
    if (m == 0) {
        return out;
    }
    // Singular values of a symmetric matrix are |lambda|.
    const auto es = eigensolve(sys.A);
    out.eigenvalues = es.eigenvalues();
    out.kappa = condition_number(out.eigenvalues);
    const double cutoff = rcond * out.eigenvalues.cwiseAbs().maxCoeff();
    const Eigen::VectorXd c = es.eigenvectors().transpose() * sys.C;
    Eigen::VectorXd g = Eigen::VectorXd::Zero(m);
    for (Index k = 0; k < m; ++k) {
        const double lam = out.eigenvalues[k];
        if (std::abs(lam) > cutoff) {
            g[k] = -c[k] / lam;
        } else {
            ++out.truncated_count;
        }
    }
    out.theta_dot = es.eigenvectors() * g;
    return out;
}

UpdateResult gradient_update(const McLachlanSystem &sys) {
    UpdateResult out;
    out.theta_dot = -2.0 * sys.C;
    if (sys.A.rows() > 0) {
        out.eigenvalues = eigensolve(sys.A).eigenvalues();
        out.kappa = condition_number(out.eigenvalues);
    }
    return out;
}

double mclachlan_delta2(const McLachlanSystem &sys,
                        const Eigen::VectorXd &theta_dot) {
    require(theta_dot.size() == sys.C.size(), Errc::dimension_mismatch,
            "theta_dot length does not match the system");
    const double d2 = theta_dot.dot(sys.A * theta_dot) +
                      2.0 * theta_dot.dot(sys.C) + sys.var_h;
    require(d2 >= -1e-6, Errc::solver,
            "squared McLachlan distance is significantly negative");
    if (d2 < 0.0 && d2 >= -1e-10) {
        return 0.0;
    }
    return d2;
}

Eigen::VectorXd shift_rule_C(const Circuit &c, std::span<const double> params,
                             const PauliSum &h) {
    const double quarter = std::numbers::pi / 4.0;
    Eigen::VectorXd out = Eigen::VectorXd::Zero(c.parameter_count());
    for (int k = 0; k < c.parameter_count(); ++k) {
        for (const int gi : c.gates_of(k)) {
            const auto &g = c.gates()[static_cast<std::size_t>(gi)];
            for (int t = 0; t < static_cast<int>(g.generator.size()); ++t) {
                require(!g.generator[static_cast<std::size_t>(t)]
                             .string.is_identity(),
                        Errc::invalid_argument,
                        "shift rule needs non-identity Pauli generators");
                const double plus =
                    expectation(h, evaluate_shifted(c, params, {gi, t, quarter}));
                const double minus = expectation(
                    h, evaluate_shifted(c, params, {gi, t, -quarter}));
                out[k] += 0.5 * (plus - minus);
            }
        }
    }
    return out;
}

Eigen::MatrixXd ancilla_A(const Circuit &c, std::span<const double> params) {
    // exp(i (v + pi/2) s P) = exp(i v s P) (i s P): a pi/2 shift of one term
    // is exactly that term's derivative insertion.
    struct Shifted {
        int param;
        StateVector state;
    };
    std::vector<Shifted> states;
    const double half = std::numbers::pi / 2.0;
    for (int k = 0; k < c.parameter_count(); ++k) {
        for (const int gi : c.gates_of(k)) {
            const auto &g = c.gates()[static_cast<std::size_t>(gi)];
            for (int t = 0; t < static_cast<int>(g.generator.size()); ++t) {
                states.push_back({k, evaluate_shifted(c, params, {gi, t, half})});
            }
        }
    }
    const int anc = c.qubit_count();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(c.parameter_count(),
                                              c.parameter_count());
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (std::size_t j = i; j < states.size(); ++j) {
            const double re = z_expectation(
                with_ancilla(states[i].state, states[j].state), anc);
            const int pi = states[i].param;
            const int pj = states[j].param;
            a(pi, pj) += re;
            if (i != j) {
                a(pj, pi) += re;
            }
        }
    }
    return a;
}

EvolveResult evolve(const Circuit &c, std::span<const double> theta0,
                    const PauliSum &h, const VqiteConfig &cfg,
                    const EvolveOptions &opts) {
    cfg.validate();
    require(theta0.size() == static_cast<std::size_t>(c.parameter_count()),
            Errc::dimension_mismatch, "initial parameters have wrong length");
    EvolveResult res;
    std::vector<double> theta(theta0.begin(), theta0.end());
    const double step = cfg.step_size();

    for (int it = 0; it < cfg.max_iters; ++it) {
        auto [sys, psi] = cfg.mode == DerivativeMode::Analytic
                              ? assemble_analytic(c, theta, h)
                              : assemble_hardware(c, theta, h);
        UpdateResult upd;
        switch (cfg.rule) {
        case UpdateRule::Regularized:
            upd = regularized_update(sys, cfg.epsilon);
            break;
        case UpdateRule::PseudoInverse:
            upd = pseudo_inverse_update(sys, cfg.rcond);
            break;
        case UpdateRule::Gradient:
            upd = gradient_update(sys);
            break;
        }
        StepReport rep;
        rep.iter = it;
        rep.energy = sys.energy;
        try {
            rep.delta2 = mclachlan_delta2(sys, upd.theta_dot);
        } catch (const Error &e) {
            res.status = RunStatus::Aborted;
            res.diagnostic = std::string(e.what()) + " at iteration " +
                             std::to_string(it);
            break;
        }
        rep.kappa = upd.kappa;
        if (upd.eigenvalues.size() > 0) {
            rep.lambda_min = upd.eigenvalues.minCoeff();
            rep.lambda_max = upd.eigenvalues.maxCoeff();
        }
        rep.truncated_count = upd.truncated_count;
        if (opts.charge != nullptr) {
            rep.charge = expectation(*opts.charge, psi);
        }
        res.steps.push_back(rep);
        if (opts.on_step) {
            opts.on_step(rep);
        }
        // Delta^2 vanishes identically once the tangent space covers the
        // charge sector, so the variance must be small as well.
        if (rep.delta2 < cfg.stop_delta2 && sys.var_h < cfg.stop_delta2) {
            res.status = RunStatus::Converged;
            break;
        }
        if (upd.stalled) {
            res.status = RunStatus::Stalled;
            res.diagnostic = "every direction of A was truncated";
            break;
        }
        for (std::size_t k = 0; k < theta.size(); ++k) {
            theta[k] += step * upd.theta_dot[static_cast<Index>(k)];
        }
        if (!all_finite(theta)) {
            res.status = RunStatus::Aborted;
            res.diagnostic = "parameters diverged after iteration " +
                             std::to_string(it);
            break;
        }
    }
    res.final_params = theta;
    if (res.status != RunStatus::Aborted) {
        res.final_energy = expectation(h, evaluate(c, theta));
    } else if (!res.steps.empty()) {
        res.final_energy = res.steps.back().energy;
    }
    return res;
}

SpectrumStats spectrum_statistics(std::span<const Eigen::MatrixXd> samples,
                                  const HistogramSpec &spec) {
    require(!samples.empty(), Errc::invalid_argument,
            "spectrum statistics need at least one sample");
    require(spec.bins >= 1 && spec.log10_hi > spec.log10_lo,
            Errc::invalid_argument, "invalid histogram spec");
    SpectrumStats st;
    const double width = (spec.log10_hi - spec.log10_lo) / spec.bins;
    for (auto *h : {&st.negative, &st.positive}) {
        h->edges.resize(static_cast<std::size_t>(spec.bins) + 1);
        for (int i = 0; i <= spec.bins; ++i) {
            h->edges[static_cast<std::size_t>(i)] = spec.log10_lo + i * width;
        }
        h->counts.assign(static_cast<std::size_t>(spec.bins), 0);
    }
    for (const auto &a : samples) {
        const Eigen::VectorXd lam = eigensolve(a).eigenvalues();
        st.kappas.push_back(condition_number(lam));
        for (Index k = 0; k < lam.size(); ++k) {
            const double v = lam[k];
            st.eigenvalues.push_back(v);
            if (v == 0.0) {
                ++st.zero_count;
                continue;
            }
            auto &hist = v < 0.0 ? st.negative : st.positive;
            (v < 0.0 ? st.negative_count : st.positive_count) += 1;
            const double pos = (std::log10(std::abs(v)) - spec.log10_lo) / width;
            const int bin = std::clamp(static_cast<int>(std::floor(pos)), 0,
                                       spec.bins - 1);
            hist.counts[static_cast<std::size_t>(bin)] += 1;
        }
    }
    return st;
}

} // namespace rvqite
