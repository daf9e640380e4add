/*
 * Copyright 2026 The rvqite Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the rvqite library.
 *
 * Objects are opaque handles created by *_create (or *_load) and released by
 * the matching *_destroy; destroy functions accept NULL. Every fallible call
 * returns an rvq_status; on failure rvq_last_error() describes the problem
 * for the calling thread until its next failing call.
 *
 * Strings returned through `const char **` stay valid until the owning
 * handle is destroyed or the same accessor is called again on it.
 */

#ifndef RVQITE_RVQITE_H
#define RVQITE_RVQITE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(RVQ_BUILDING_LIBRARY)
#define RVQ_API __declspec(dllexport)
#else
#define RVQ_API __declspec(dllimport)
#endif
#else
#define RVQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rvq_status {
    RVQ_OK = 0,
    RVQ_INVALID_ARGUMENT = 1,
    RVQ_DIMENSION = 2,
    RVQ_CAPACITY = 3,
    RVQ_CONFIG = 4,
    RVQ_SOLVER = 5,
    RVQ_IO = 6,
    RVQ_INTERNAL = 7
} rvq_status;

typedef enum rvq_update_rule {
    RVQ_RULE_REGULARIZED = 0,
    RVQ_RULE_PSEUDO_INVERSE = 1,
    RVQ_RULE_GRADIENT = 2
} rvq_update_rule;

typedef enum rvq_run_status {
    RVQ_RUN_MAX_ITERS = 0,
    RVQ_RUN_CONVERGED = 1,
    RVQ_RUN_STALLED = 2,
    RVQ_RUN_ABORTED = 3
} rvq_run_status;

/* Lattice Schwinger model couplings; theta in radians. */
typedef struct rvq_model {
    int n_sites;
    double a_g;
    double m_over_g;
    double theta;
    double mu_over_g;
} rvq_model;

typedef struct rvq_ansatz {
    int n_sites;
    int depth;
    int free_charge; /* nonzero: R_x layer on the vacuum, q ignored */
    int q;
} rvq_ansatz;

typedef struct rvq_solver {
    double dtau;
    double epsilon;
    int max_iters;
    double stop_delta2;
    rvq_update_rule rule;
    int parameter_shift; /* nonzero: ancilla A and shift-rule C */
    double rcond;
    double learning_rate; /* <= 0 means dtau */
} rvq_solver;

typedef struct rvq_step {
    int iter;
    double energy;
    double delta2;
    double kappa;
    double lambda_min;
    double lambda_max;
    int truncated_count;
    double charge;
} rvq_step;

typedef struct rvq_hamiltonian rvq_hamiltonian;
typedef struct rvq_circuit rvq_circuit;
typedef struct rvq_run rvq_run;
typedef struct rvq_lab_config rvq_lab_config;
typedef struct rvq_lab_result rvq_lab_result;

RVQ_API const char *rvq_version(void);
RVQ_API const char *rvq_last_error(void);
RVQ_API const char *rvq_status_name(rvq_status s);

/* Defaults: N=10, a*g=1, m=g, theta=0, mu=0 / depth 5 fixed q=0 /
 * dtau 0.1, epsilon 1e-6, 500 iterations, regularized. */
RVQ_API rvq_model rvq_model_default(void);
RVQ_API rvq_ansatz rvq_ansatz_default(void);
RVQ_API rvq_solver rvq_solver_default(void);

/* ---- Hamiltonian ------------------------------------------------------ */

RVQ_API rvq_status rvq_hamiltonian_create(const rvq_model *model,
                                          rvq_hamiltonian **out);
RVQ_API void rvq_hamiltonian_destroy(rvq_hamiltonian *h);
RVQ_API rvq_status rvq_hamiltonian_term_count(const rvq_hamiltonian *h,
                                              size_t *out);
/* One "coefficient  P1 P2 ..." line per term. */
RVQ_API rvq_status rvq_hamiltonian_to_text(rvq_hamiltonian *h,
                                           const char **out);
/* <psi|H|psi> for 2^N interleaved (re, im) amplitude pairs. */
RVQ_API rvq_status rvq_hamiltonian_expectation(const rvq_hamiltonian *h,
                                               const double *amplitudes,
                                               size_t dimension, double *out);

/* ---- Exact oracle ----------------------------------------------------- */

RVQ_API rvq_status rvq_exact_sector_lowest(const rvq_model *model, int q,
                                           double *energy);
/* (E_max - e_qa) / (E_max - E_min) over the full spectrum. */
RVQ_API rvq_status rvq_exact_ratio(const rvq_model *model, double e_qa,
                                   double *ratio);

/* ---- Ansatz circuits and evolution ------------------------------------ */

RVQ_API rvq_status rvq_circuit_create(const rvq_ansatz *spec,
                                      rvq_circuit **out);
RVQ_API void rvq_circuit_destroy(rvq_circuit *c);
RVQ_API rvq_status rvq_circuit_parameter_count(const rvq_circuit *c,
                                               size_t *out);
/* Writes 2^N interleaved (re, im) pairs into `amplitudes`. */
RVQ_API rvq_status rvq_circuit_evaluate(const rvq_circuit *c,
                                        const double *params, size_t count,
                                        double *amplitudes, size_t dimension);
/* Uniform [-pi, pi] initial parameters from a seeded generator. */
RVQ_API rvq_status rvq_random_parameters(size_t count, uint64_t seed,
                                         double *out);

/* Runs imaginary-time evolution. An aborted run still yields a run handle
 * and returns RVQ_SOLVER. */
RVQ_API rvq_status rvq_evolve(const rvq_circuit *c, const rvq_hamiltonian *h,
                              const rvq_solver *solver, const double *theta0,
                              size_t count, rvq_run **out);
RVQ_API void rvq_run_destroy(rvq_run *r);
RVQ_API rvq_status rvq_run_step_count(const rvq_run *r, size_t *out);
RVQ_API rvq_status rvq_run_step(const rvq_run *r, size_t index, rvq_step *out);
RVQ_API rvq_status rvq_run_final_energy(const rvq_run *r, double *out);
RVQ_API rvq_status rvq_run_final_params(const rvq_run *r, double *out,
                                        size_t count);
RVQ_API rvq_status rvq_run_get_status(const rvq_run *r, rvq_run_status *out);

/* ---- Lab experiments -------------------------------------------------- */

/* A JSON config merged over the defaults. Text may be NULL for defaults. */
RVQ_API rvq_status rvq_lab_config_parse(const char *json_text,
                                        rvq_lab_config **out);
RVQ_API rvq_status rvq_lab_config_load(const char *path, rvq_lab_config **out);
RVQ_API void rvq_lab_config_destroy(rvq_lab_config *cfg);
/* Overrides a dotted key such as "solver.epsilon". */
RVQ_API rvq_status rvq_lab_config_set_number(rvq_lab_config *cfg,
                                             const char *key, double value);
RVQ_API rvq_status rvq_lab_config_set_int(rvq_lab_config *cfg,
                                          const char *key, int64_t value);
RVQ_API rvq_status rvq_lab_config_set_bool(rvq_lab_config *cfg,
                                           const char *key, int value);
RVQ_API rvq_status rvq_lab_config_set_string(rvq_lab_config *cfg,
                                             const char *key,
                                             const char *value);
/* Resolved tree as JSON text; fails with RVQ_CONFIG if invalid. */
RVQ_API rvq_status rvq_lab_config_resolved(rvq_lab_config *cfg,
                                           const char **out);

typedef struct rvq_lab_options {
    const char *out_dir; /* NULL means "." */
    int jobs;            /* <= 0 means 1 */
    int dump_hamiltonian;
    const char *dump_state_path; /* ground only; NULL to skip */
    int gnuplot;
} rvq_lab_options;

RVQ_API rvq_lab_options rvq_lab_options_default(void);

/* Runs "ground", "benchmark", "sweep", "spectrum", "spectra" or "boundary".
 * A ground run whose solver aborts returns RVQ_SOLVER with *out set. */
RVQ_API rvq_status rvq_lab_run(const rvq_lab_config *cfg,
                               const char *subcommand,
                               const rvq_lab_options *options,
                               rvq_lab_result **out);
RVQ_API void rvq_lab_result_destroy(rvq_lab_result *r);
RVQ_API const char *rvq_lab_result_summary(const rvq_lab_result *r);
RVQ_API size_t rvq_lab_result_file_count(const rvq_lab_result *r);
RVQ_API const char *rvq_lab_result_file(const rvq_lab_result *r, size_t index);

#ifdef __cplusplus
}
#endif

#endif /* RVQITE_RVQITE_H */
