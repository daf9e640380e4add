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

/* Exercises the shared library through its C header only. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "rvqite/rvqite.h"

static int failures = 0;

#define EXPECT(cond)                                                         \
    do {                                                                     \
        if (!(cond)) {                                                       \
            fprintf(stderr, "%s:%d: expected %s (last error: %s)\n",         \
                    __FILE__, __LINE__, #cond, rvq_last_error());            \
            ++failures;                                                      \
        }                                                                    \
    } while (0)

static void test_hamiltonian(void) {
    rvq_model m = rvq_model_default();
    rvq_hamiltonian *h = NULL;
    size_t terms = 0;
    const char *text = NULL;
    double amps[2 * 16];
    double e = 0.0;
    double ref = 0.0;

    m.n_sites = 4;
    EXPECT(rvq_hamiltonian_create(&m, &h) == RVQ_OK);
    EXPECT(rvq_hamiltonian_term_count(h, &terms) == RVQ_OK && terms > 0);
    EXPECT(rvq_hamiltonian_to_text(h, &text) == RVQ_OK && strlen(text) > 0);

    /* The vacuum |0101> read little-endian is index 5. */
    memset(amps, 0, sizeof amps);
    amps[2 * 5] = 1.0;
    EXPECT(rvq_hamiltonian_expectation(h, amps, 16, &e) == RVQ_OK);
    /* Zero links, mass term -m N / 2. */
    EXPECT(fabs(e - (-2.0)) < 1e-12);
    EXPECT(rvq_hamiltonian_expectation(h, amps, 8, &e) == RVQ_DIMENSION);

    EXPECT(rvq_exact_sector_lowest(&m, 0, &ref) == RVQ_OK);
    EXPECT(ref < e);
    EXPECT(rvq_exact_sector_lowest(&m, 3, &ref) == RVQ_CAPACITY);
    rvq_hamiltonian_destroy(h);

    m.n_sites = 5;
    h = NULL;
    EXPECT(rvq_hamiltonian_create(&m, &h) == RVQ_INVALID_ARGUMENT);
    EXPECT(h == NULL);
    EXPECT(strlen(rvq_last_error()) > 0);
    EXPECT(rvq_hamiltonian_create(NULL, &h) == RVQ_INVALID_ARGUMENT);
    rvq_hamiltonian_destroy(NULL);
}

static void test_evolve(void) {
    rvq_model m = rvq_model_default();
    rvq_ansatz a = rvq_ansatz_default();
    rvq_solver s = rvq_solver_default();
    rvq_hamiltonian *h = NULL;
    rvq_circuit *c = NULL;
    rvq_run *run = NULL;
    size_t count = 0;
    size_t steps = 0;
    double *theta = NULL;
    double energy = 0.0;
    double exact = 0.0;
    double ratio = 0.0;
    rvq_step st;
    rvq_run_status status;

    m.n_sites = 4;
    a.n_sites = 4;
    a.depth = 2;
    s.max_iters = 200;
    EXPECT(rvq_hamiltonian_create(&m, &h) == RVQ_OK);
    EXPECT(rvq_circuit_create(&a, &c) == RVQ_OK);
    EXPECT(rvq_circuit_parameter_count(c, &count) == RVQ_OK && count == 20);
    theta = malloc(count * sizeof *theta);
    EXPECT(rvq_random_parameters(count, 7, theta) == RVQ_OK);
    EXPECT(rvq_evolve(c, h, &s, theta, count, &run) == RVQ_OK);
    EXPECT(rvq_run_step_count(run, &steps) == RVQ_OK && steps > 0);
    EXPECT(rvq_run_step(run, 0, &st) == RVQ_OK && st.iter == 0);
    EXPECT(rvq_run_step(run, steps, &st) == RVQ_INVALID_ARGUMENT);
    EXPECT(rvq_run_final_energy(run, &energy) == RVQ_OK);
    EXPECT(rvq_run_get_status(run, &status) == RVQ_OK);
    EXPECT(rvq_exact_sector_lowest(&m, 0, &exact) == RVQ_OK);
    EXPECT(fabs(energy - exact) < 1e-4);
    EXPECT(rvq_exact_ratio(&m, energy, &ratio) == RVQ_OK && ratio > 0.999);
    EXPECT(rvq_run_final_params(run, theta, count) == RVQ_OK);
    EXPECT(rvq_run_final_params(run, theta, count - 1) == RVQ_DIMENSION);
    rvq_run_destroy(run);
    run = NULL;

    /* A diverging gradient step aborts but still returns the run. */
    s.rule = RVQ_RULE_GRADIENT;
    s.learning_rate = 1e308;
    s.max_iters = 10;
    EXPECT(rvq_evolve(c, h, &s, theta, count, &run) == RVQ_SOLVER);
    EXPECT(run != NULL);
    EXPECT(rvq_run_get_status(run, &status) == RVQ_OK && status == RVQ_RUN_ABORTED);
    rvq_run_destroy(run);

    EXPECT(rvq_evolve(c, h, &s, theta, count - 1, &run) == RVQ_DIMENSION);
    free(theta);
    rvq_circuit_destroy(c);
    rvq_hamiltonian_destroy(h);
}

static void test_lab(const char *out_dir) {
    rvq_lab_config *cfg = NULL;
    rvq_lab_result *res = NULL;
    rvq_lab_options opt = rvq_lab_options_default();
    const char *resolved = NULL;

    EXPECT(rvq_lab_config_parse("{\"model\": {\"N\": 4}}", &cfg) == RVQ_OK);
    EXPECT(rvq_lab_config_set_int(cfg, "ansatz.depth", 2) == RVQ_OK);
    EXPECT(rvq_lab_config_set_number(cfg, "solver.epsilon", 1e-7) == RVQ_OK);
    EXPECT(rvq_lab_config_set_string(cfg, "solver.update_rule", "regularized") == RVQ_OK);
    EXPECT(rvq_lab_config_set_bool(cfg, "sweep.warm_start", 0) == RVQ_OK);
    EXPECT(rvq_lab_config_resolved(cfg, &resolved) == RVQ_OK);
    EXPECT(strstr(resolved, "1e-07") != NULL);

    opt.out_dir = out_dir;
    EXPECT(rvq_lab_run(cfg, "boundary", &opt, &res) == RVQ_OK);
    EXPECT(rvq_lab_result_file_count(res) >= 1);
    EXPECT(strstr(rvq_lab_result_file(res, 0), "boundary.csv") != NULL);
    EXPECT(rvq_lab_result_file(res, 99) == NULL);
    EXPECT(strlen(rvq_lab_result_summary(res)) > 0);
    rvq_lab_result_destroy(res);
    res = NULL;
    EXPECT(rvq_lab_run(cfg, "nonsense", &opt, &res) == RVQ_CONFIG);

    EXPECT(rvq_lab_config_set_number(cfg, "solver.epsilonn", 1.0) == RVQ_OK);
    EXPECT(rvq_lab_config_resolved(cfg, &resolved) == RVQ_CONFIG);
    rvq_lab_config_destroy(cfg);

    cfg = NULL;
    EXPECT(rvq_lab_config_parse("{broken", &cfg) == RVQ_CONFIG);
    EXPECT(rvq_lab_config_load("/nonexistent.json", &cfg) == RVQ_CONFIG);
    EXPECT(rvq_lab_config_parse(NULL, &cfg) == RVQ_OK);
    rvq_lab_config_destroy(cfg);
}

int main(int argc, char **argv) {
    const char *out_dir = argc > 1 ? argv[1] : "capi_out";
    EXPECT(strlen(rvq_version()) > 0);
    EXPECT(strcmp(rvq_status_name(RVQ_SOLVER), "solver") == 0);
    test_hamiltonian();
    test_evolve();
    test_lab(out_dir);
    if (failures) {
        fprintf(stderr, "%d failure(s)\n", failures);
        return 1;
    }
    printf("capi: all checks passed\n");
    return 0;
}
