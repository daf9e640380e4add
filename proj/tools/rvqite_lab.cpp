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

// rvqite-lab: command-line front end over the C API.
//
//   rvqite-lab ground --N 6 --depth 3 --out-dir out/
//   rvqite-lab run configs/fig4_theta_mu.json --jobs 4
//
// Exit codes: 0 ok, 2 config or usage error, 3 solver failure, 1 otherwise.

#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "rvqite/rvqite.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

int exit_code(rvq_status s) {
    switch (s) {
    case RVQ_OK:
        return kExitOk;
    case RVQ_CONFIG:
    case RVQ_INVALID_ARGUMENT:
    case RVQ_CAPACITY:
        return kExitConfig;
    case RVQ_SOLVER:
        return kExitSolver;
    default:
        return kExitOther;
    }
}

int report(rvq_status s, const char *what) {
    std::fprintf(stderr, "rvqite-lab: %s: %s (%s)\n", what, rvq_last_error(),
                 rvq_status_name(s));
    return exit_code(s);
}

struct Flags {
    std::string config;
    std::string run_config;
    std::optional<std::uint64_t> seed;
    int jobs = 1;
    std::string out_dir = ".";
    bool dump_hamiltonian = false;
    bool no_warm_start = false;
    std::optional<double> epsilon;
    std::optional<double> dtau;
    std::optional<int> depth;
    std::optional<int> n_sites;
    std::string dump_state;
    bool gnuplot = false;
    bool print_config = false;
};

void add_common(CLI::App &app, Flags &f) {
    app.add_option("--config", f.config, "JSON experiment config")
        ->check(CLI::ExistingFile);
    app.add_option("--seed", f.seed, "master seed");
    app.add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--out-dir", f.out_dir, "directory for CSV output");
    app.add_flag("--dump-hamiltonian", f.dump_hamiltonian,
                 "write hamiltonian.txt");
    app.add_flag("--no-warm-start", f.no_warm_start,
                 "fresh random start in every sweep cell");
    app.add_option("--epsilon", f.epsilon, "eigenvalue truncation threshold");
    app.add_option("--dtau", f.dtau, "imaginary-time step");
    app.add_option("--depth", f.depth, "ansatz layers");
    app.add_option("--N", f.n_sites, "lattice sites (even)");
    app.add_option("--dump-state", f.dump_state,
                   "write final ground-run amplitudes (float64 re,im pairs)");
    app.add_flag("--gnuplot", f.gnuplot, "also write gnuplot scripts");
    app.add_flag("--print-config", f.print_config,
                 "print the resolved config and exit");
}

int run(const std::string &subcommand, const Flags &f) {
    rvq_lab_config *cfg = nullptr;
    rvq_status s = RVQ_OK;
    const std::string &path = subcommand == "run" ? f.run_config : f.config;
    s = path.empty() ? rvq_lab_config_parse(nullptr, &cfg)
                     : rvq_lab_config_load(path.c_str(), &cfg);
    if (s != RVQ_OK) {
        return report(s, "config");
    }
    auto set_all = [&]() -> rvq_status {
        rvq_status r = RVQ_OK;
        if (f.seed) {
            r = rvq_lab_config_set_int(cfg, "seed", static_cast<int64_t>(*f.seed));
        }
        if (r == RVQ_OK && f.no_warm_start) {
            r = rvq_lab_config_set_bool(cfg, "sweep.warm_start", 0);
        }
        if (r == RVQ_OK && f.epsilon) {
            r = rvq_lab_config_set_number(cfg, "solver.epsilon", *f.epsilon);
        }
        if (r == RVQ_OK && f.dtau) {
            r = rvq_lab_config_set_number(cfg, "solver.dtau", *f.dtau);
        }
        if (r == RVQ_OK && f.depth) {
            r = rvq_lab_config_set_int(cfg, "ansatz.depth", *f.depth);
        }
        if (r == RVQ_OK && f.n_sites) {
            r = rvq_lab_config_set_int(cfg, "model.N", *f.n_sites);
        }
        return r;
    };
    if (s = set_all(); s != RVQ_OK) {
        rvq_lab_config_destroy(cfg);
        return report(s, "config");
    }
    const char *resolved = nullptr;
    if (s = rvq_lab_config_resolved(cfg, &resolved); s != RVQ_OK) {
        rvq_lab_config_destroy(cfg);
        return report(s, "config");
    }
    if (f.print_config) {
        std::printf("%s\n", resolved);
        rvq_lab_config_destroy(cfg);
        return kExitOk;
    }

    rvq_lab_options opts = rvq_lab_options_default();
    opts.out_dir = f.out_dir.c_str();
    opts.jobs = f.jobs;
    opts.dump_hamiltonian = f.dump_hamiltonian;
    opts.dump_state_path = f.dump_state.empty() ? nullptr : f.dump_state.c_str();
    opts.gnuplot = f.gnuplot;

    rvq_lab_result *res = nullptr;
    s = rvq_lab_run(cfg, subcommand.c_str(), &opts, &res);
    rvq_lab_config_destroy(cfg);
    if (res) {
        std::printf("%s\n", rvq_lab_result_summary(res));
        for (size_t i = 0; i < rvq_lab_result_file_count(res); ++i) {
            std::printf("wrote %s\n", rvq_lab_result_file(res, i));
        }
        rvq_lab_result_destroy(res);
    }
    return s == RVQ_OK ? kExitOk : report(s, subcommand.c_str());
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Regularized variational imaginary-time evolution for the "
                 "lattice Schwinger model",
                 "rvqite-lab"};
    app.set_version_flag("--version", rvq_version());
    app.require_subcommand(1);
    app.fallthrough();

    Flags flags;
    add_common(app, flags);

    const struct {
        const char *name;
        const char *help;
    } subs[] = {
        {"ground", "one ground-state run: trajectory and summary CSV"},
        {"benchmark", "Ratio statistics over seeded random starts per method"},
        {"sweep", "phase-diagram sweep with optional boundary overlay"},
        {"spectrum", "eigenvalue statistics of A^R at random parameters"},
        {"spectra", "exact sector energies along theta"},
        {"boundary", "exact phase-boundary curves"},
    };
    for (const auto &s : subs) {
        app.add_subcommand(s.name, s.help);
    }
    auto *run_cmd = app.add_subcommand(
        "run", "run the experiment named by a config's \"experiment\" key");
    run_cmd->add_option("config", flags.run_config, "JSON experiment config")
        ->required()
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }
    const auto chosen = app.get_subcommands();
    return run(chosen.front()->get_name(), flags);
}
