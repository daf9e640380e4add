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

#include "rvqite/rvqite.h"

#include <bit>
#include <new>
#include <string>
#include <vector>

#include "rvqite/ansatz.hpp"
#include "rvqite/error.hpp"
#include "rvqite/exact.hpp"
#include "rvqite/lab/runners.hpp"
#include "rvqite/schwinger.hpp"
#include "rvqite/vqite.hpp"

struct rvq_hamiltonian {
    rvqite::PauliSum sum;
    std::string text;
};

struct rvq_circuit {
    rvqite::Circuit circuit;
};

struct rvq_run {
    rvqite::EvolveResult result;
};

struct rvq_lab_config {
    rvqite::lab::json tree;
    std::string resolved_text;
};

struct rvq_lab_result {
    rvqite::lab::RunReport report;
};

namespace {

thread_local std::string g_last_error;

rvq_status map(rvqite::Errc c) {
    using rvqite::Errc;
    switch (c) {
    case Errc::invalid_argument:
        return RVQ_INVALID_ARGUMENT;
    case Errc::dimension_mismatch:
        return RVQ_DIMENSION;
    case Errc::capacity:
        return RVQ_CAPACITY;
    case Errc::config:
        return RVQ_CONFIG;
    case Errc::solver:
        return RVQ_SOLVER;
    case Errc::io:
        return RVQ_IO;
    }
    return RVQ_INTERNAL;
}

rvq_status fail_with(rvq_status s, const char *msg) {
    g_last_error = msg;
    return s;
}

template <class F> rvq_status guard(F &&f) noexcept {
    try {
        return f();
    } catch (const rvqite::Error &e) {
        return fail_with(map(e.code()), e.what());
    } catch (const std::bad_alloc &) {
        return fail_with(RVQ_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return fail_with(RVQ_INTERNAL, e.what());
    } catch (...) {
        return fail_with(RVQ_INTERNAL, "unknown exception");
    }
}

#define RVQ_REQUIRE_PTR(p)                                                     \
    do {                                                                       \
        if ((p) == nullptr) {                                                  \
            return fail_with(RVQ_INVALID_ARGUMENT, #p " is NULL");             \
        }                                                                      \
    } while (0)

rvqite::SchwingerParams to_params(const rvq_model &m) {
    rvqite::SchwingerParams p;
    p.n_sites = m.n_sites;
    p.a_g = m.a_g;
    p.m_over_g = m.m_over_g;
    p.theta = m.theta;
    p.mu_over_g = m.mu_over_g;
    p.validate();
    return p;
}

rvqite::StateVector to_state(const double *amps, size_t dimension) {
    using rvqite::Errc;
    rvqite::require(dimension >= 2 && std::has_single_bit(dimension),
                    Errc::dimension_mismatch, "dimension must be a power of two");
    std::vector<rvqite::cplx> v(dimension);
    for (size_t i = 0; i < dimension; ++i) {
        v[i] = {amps[2 * i], amps[2 * i + 1]};
    }
    return rvqite::StateVector::from_amplitudes(std::countr_zero(dimension),
                                                std::move(v));
}

} // namespace

extern "C" {

const char *rvq_version(void) { return "0.1.0"; }

const char *rvq_last_error(void) { return g_last_error.c_str(); }

const char *rvq_status_name(rvq_status s) {
    switch (s) {
    case RVQ_OK:
        return "ok";
    case RVQ_INVALID_ARGUMENT:
        return "invalid_argument";
    case RVQ_DIMENSION:
        return "dimension_mismatch";
    case RVQ_CAPACITY:
        return "capacity";
    case RVQ_CONFIG:
        return "config";
    case RVQ_SOLVER:
        return "solver";
    case RVQ_IO:
        return "io";
    case RVQ_INTERNAL:
        return "internal";
    }
    return "unknown";
}

rvq_model rvq_model_default(void) { return {10, 1.0, 1.0, 0.0, 0.0}; }

rvq_ansatz rvq_ansatz_default(void) { return {10, 5, 0, 0}; }

rvq_solver rvq_solver_default(void) {
    return {0.1, 1e-6, 500, 1e-10, RVQ_RULE_REGULARIZED, 0, 1e-15, 0.0};
}

rvq_status rvq_hamiltonian_create(const rvq_model *model, rvq_hamiltonian **out) {
    RVQ_REQUIRE_PTR(model);
    RVQ_REQUIRE_PTR(out);
    *out = nullptr;
    return guard([&] {
        *out = new rvq_hamiltonian{rvqite::build_hamiltonian(to_params(*model)), {}};
        return RVQ_OK;
    });
}

void rvq_hamiltonian_destroy(rvq_hamiltonian *h) { delete h; }

rvq_status rvq_hamiltonian_term_count(const rvq_hamiltonian *h, size_t *out) {
    RVQ_REQUIRE_PTR(h);
    RVQ_REQUIRE_PTR(out);
    *out = h->sum.size();
    return RVQ_OK;
}

rvq_status rvq_hamiltonian_to_text(rvq_hamiltonian *h, const char **out) {
    RVQ_REQUIRE_PTR(h);
    RVQ_REQUIRE_PTR(out);
    return guard([&] {
        h->text = rvqite::to_text(h->sum);
        *out = h->text.c_str();
        return RVQ_OK;
    });
}

rvq_status rvq_hamiltonian_expectation(const rvq_hamiltonian *h,
                                       const double *amplitudes,
                                       size_t dimension, double *out) {
    RVQ_REQUIRE_PTR(h);
    RVQ_REQUIRE_PTR(amplitudes);
    RVQ_REQUIRE_PTR(out);
    return guard([&] {
        *out = rvqite::expectation(h->sum, to_state(amplitudes, dimension));
        return RVQ_OK;
    });
}

rvq_status rvq_exact_sector_lowest(const rvq_model *model, int q, double *energy) {
    RVQ_REQUIRE_PTR(model);
    RVQ_REQUIRE_PTR(energy);
    return guard([&] {
        *energy = rvqite::sector_spectrum(to_params(*model), q).front();
        return RVQ_OK;
    });
}

rvq_status rvq_exact_ratio(const rvq_model *model, double e_qa, double *ratio) {
    RVQ_REQUIRE_PTR(model);
    RVQ_REQUIRE_PTR(ratio);
    return guard([&] {
        rvqite::ExactOracle oracle;
        *ratio = oracle.ratio(to_params(*model), e_qa).ratio;
        return RVQ_OK;
    });
}

rvq_status rvq_circuit_create(const rvq_ansatz *spec, rvq_circuit **out) {
    RVQ_REQUIRE_PTR(spec);
    RVQ_REQUIRE_PTR(out);
    *out = nullptr;
    return guard([&] {
        rvqite::AnsatzSpec s;
        s.n_sites = spec->n_sites;
        s.depth = spec->depth;
        s.init = spec->free_charge ? rvqite::ChargeInit::Free
                                   : rvqite::ChargeInit::Fixed;
        s.q = spec->free_charge ? 0 : spec->q;
        *out = new rvq_circuit{rvqite::build_circuit(s)};
        return RVQ_OK;
    });
}

void rvq_circuit_destroy(rvq_circuit *c) { delete c; }

rvq_status rvq_circuit_parameter_count(const rvq_circuit *c, size_t *out) {
    RVQ_REQUIRE_PTR(c);
    RVQ_REQUIRE_PTR(out);
    *out = static_cast<size_t>(c->circuit.parameter_count());
    return RVQ_OK;
}

rvq_status rvq_circuit_evaluate(const rvq_circuit *c, const double *params,
                                size_t count, double *amplitudes,
                                size_t dimension) {
    RVQ_REQUIRE_PTR(c);
    RVQ_REQUIRE_PTR(amplitudes);
    if (count > 0) {
        RVQ_REQUIRE_PTR(params);
    }
    return guard([&] {
        const auto psi = rvqite::evaluate(c->circuit, {params, count});
        rvqite::require(dimension == psi.dimension(),
                        rvqite::Errc::dimension_mismatch,
                        "amplitude buffer does not match 2^N");
        for (size_t i = 0; i < dimension; ++i) {
            amplitudes[2 * i] = psi[i].real();
            amplitudes[2 * i + 1] = psi[i].imag();
        }
        return RVQ_OK;
    });
}

rvq_status rvq_random_parameters(size_t count, uint64_t seed, double *out) {
    if (count > 0) {
        RVQ_REQUIRE_PTR(out);
    }
    return guard([&] {
        const auto v = rvqite::random_parameters(static_cast<int>(count), seed);
        std::copy(v.begin(), v.end(), out);
        return RVQ_OK;
    });
}

rvq_status rvq_evolve(const rvq_circuit *c, const rvq_hamiltonian *h,
                      const rvq_solver *solver, const double *theta0,
                      size_t count, rvq_run **out) {
    RVQ_REQUIRE_PTR(c);
    RVQ_REQUIRE_PTR(h);
    RVQ_REQUIRE_PTR(solver);
    RVQ_REQUIRE_PTR(out);
    if (count > 0) {
        RVQ_REQUIRE_PTR(theta0);
    }
    *out = nullptr;
    return guard([&] {
        rvqite::VqiteConfig cfg;
        cfg.dtau = solver->dtau;
        cfg.epsilon = solver->epsilon;
        cfg.max_iters = solver->max_iters;
        cfg.stop_delta2 = solver->stop_delta2;
        switch (solver->rule) {
        case RVQ_RULE_REGULARIZED:
            cfg.rule = rvqite::UpdateRule::Regularized;
            break;
        case RVQ_RULE_PSEUDO_INVERSE:
            cfg.rule = rvqite::UpdateRule::PseudoInverse;
            break;
        case RVQ_RULE_GRADIENT:
            cfg.rule = rvqite::UpdateRule::Gradient;
            break;
        default:
            return fail_with(RVQ_INVALID_ARGUMENT, "unknown update rule");
        }
        cfg.mode = solver->parameter_shift ? rvqite::DerivativeMode::ParameterShift
                                           : rvqite::DerivativeMode::Analytic;
        cfg.rcond = solver->rcond;
        if (solver->learning_rate > 0.0) {
            cfg.learning_rate = solver->learning_rate;
        }
        const auto q_op = rvqite::charge_operator(c->circuit.qubit_count());
        rvqite::EvolveOptions eo;
        eo.charge = &q_op;
        auto *run = new rvq_run{
            rvqite::evolve(c->circuit, {theta0, count}, h->sum, cfg, eo)};
        *out = run;
        if (run->result.status == rvqite::RunStatus::Aborted) {
            return fail_with(RVQ_SOLVER, run->result.diagnostic.c_str());
        }
        return RVQ_OK;
    });
}

void rvq_run_destroy(rvq_run *r) { delete r; }

rvq_status rvq_run_step_count(const rvq_run *r, size_t *out) {
    RVQ_REQUIRE_PTR(r);
    RVQ_REQUIRE_PTR(out);
    *out = r->result.steps.size();
    return RVQ_OK;
}

rvq_status rvq_run_step(const rvq_run *r, size_t index, rvq_step *out) {
    RVQ_REQUIRE_PTR(r);
    RVQ_REQUIRE_PTR(out);
    if (index >= r->result.steps.size()) {
        return fail_with(RVQ_INVALID_ARGUMENT, "step index out of range");
    }
    const auto &s = r->result.steps[index];
    *out = {s.iter,       s.energy,     s.delta2,          s.kappa,
            s.lambda_min, s.lambda_max, s.truncated_count, s.charge};
    return RVQ_OK;
}

rvq_status rvq_run_final_energy(const rvq_run *r, double *out) {
    RVQ_REQUIRE_PTR(r);
    RVQ_REQUIRE_PTR(out);
    *out = r->result.final_energy;
    return RVQ_OK;
}

rvq_status rvq_run_final_params(const rvq_run *r, double *out, size_t count) {
    RVQ_REQUIRE_PTR(r);
    RVQ_REQUIRE_PTR(out);
    if (count != r->result.final_params.size()) {
        return fail_with(RVQ_DIMENSION, "parameter buffer has the wrong length");
    }
    std::copy(r->result.final_params.begin(), r->result.final_params.end(), out);
    return RVQ_OK;
}

rvq_status rvq_run_get_status(const rvq_run *r, rvq_run_status *out) {
    RVQ_REQUIRE_PTR(r);
    RVQ_REQUIRE_PTR(out);
    *out = static_cast<rvq_run_status>(r->result.status);
    return RVQ_OK;
}

rvq_status rvq_lab_config_parse(const char *json_text, rvq_lab_config **out) {
    RVQ_REQUIRE_PTR(out);
    *out = nullptr;
    return guard([&] {
        auto tree = json_text ? rvqite::lab::parse_text(json_text)
                              : rvqite::lab::json::object();
        (void)rvqite::lab::resolve(tree);
        *out = new rvq_lab_config{std::move(tree), {}};
        return RVQ_OK;
    });
}

rvq_status rvq_lab_config_load(const char *path, rvq_lab_config **out) {
    RVQ_REQUIRE_PTR(path);
    RVQ_REQUIRE_PTR(out);
    *out = nullptr;
    return guard([&] {
        auto tree = rvqite::lab::load_file(path);
        (void)rvqite::lab::resolve(tree);
        *out = new rvq_lab_config{std::move(tree), {}};
        return RVQ_OK;
    });
}

void rvq_lab_config_destroy(rvq_lab_config *cfg) { delete cfg; }

namespace {

rvq_status set_value(rvq_lab_config *cfg, const char *key,
                     rvqite::lab::json value) {
    RVQ_REQUIRE_PTR(cfg);
    RVQ_REQUIRE_PTR(key);
    return guard([&] {
        rvqite::lab::set_path(cfg->tree, key, std::move(value));
        return RVQ_OK;
    });
}

} // namespace

rvq_status rvq_lab_config_set_number(rvq_lab_config *cfg, const char *key,
                                     double value) {
    return set_value(cfg, key, value);
}

rvq_status rvq_lab_config_set_int(rvq_lab_config *cfg, const char *key,
                                  int64_t value) {
    return set_value(cfg, key, value);
}

rvq_status rvq_lab_config_set_bool(rvq_lab_config *cfg, const char *key,
                                   int value) {
    return set_value(cfg, key, value != 0);
}

rvq_status rvq_lab_config_set_string(rvq_lab_config *cfg, const char *key,
                                     const char *value) {
    RVQ_REQUIRE_PTR(value);
    return set_value(cfg, key, std::string(value));
}

rvq_status rvq_lab_config_resolved(rvq_lab_config *cfg, const char **out) {
    RVQ_REQUIRE_PTR(cfg);
    RVQ_REQUIRE_PTR(out);
    return guard([&] {
        cfg->resolved_text = rvqite::lab::resolve(cfg->tree).resolved.dump(2);
        *out = cfg->resolved_text.c_str();
        return RVQ_OK;
    });
}

rvq_lab_options rvq_lab_options_default(void) {
    return {nullptr, 1, 0, nullptr, 0};
}

rvq_status rvq_lab_run(const rvq_lab_config *cfg, const char *subcommand,
                       const rvq_lab_options *options, rvq_lab_result **out) {
    RVQ_REQUIRE_PTR(cfg);
    RVQ_REQUIRE_PTR(subcommand);
    RVQ_REQUIRE_PTR(out);
    *out = nullptr;
    return guard([&] {
        const auto resolved = rvqite::lab::resolve(cfg->tree);
        rvqite::lab::RunOptions opts;
        if (options) {
            if (options->out_dir) {
                opts.out_dir = options->out_dir;
            }
            opts.jobs = options->jobs > 0 ? options->jobs : 1;
            opts.dump_hamiltonian = options->dump_hamiltonian != 0;
            if (options->dump_state_path) {
                opts.dump_state_path = options->dump_state_path;
            }
            opts.gnuplot = options->gnuplot != 0;
        }
        auto *res = new rvq_lab_result{
            rvqite::lab::run_subcommand(subcommand, resolved, opts)};
        *out = res;
        if (res->report.solver_failed) {
            return fail_with(RVQ_SOLVER, res->report.summary.c_str());
        }
        return RVQ_OK;
    });
}

void rvq_lab_result_destroy(rvq_lab_result *r) { delete r; }

const char *rvq_lab_result_summary(const rvq_lab_result *r) {
    return r ? r->report.summary.c_str() : "";
}

size_t rvq_lab_result_file_count(const rvq_lab_result *r) {
    return r ? r->report.files.size() : 0;
}

const char *rvq_lab_result_file(const rvq_lab_result *r, size_t index) {
    if (!r || index >= r->report.files.size()) {
        return nullptr;
    }
    return r->report.files[index].c_str();
}

} // extern "C"
