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

#include "rvqite/lab/runners.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <thread>

#include "rvqite/error.hpp"
#include "rvqite/exact.hpp"
#include "rvqite/lab/csv.hpp"

namespace rvqite::lab {

namespace {

using ll = long long;

CsvTable table(const std::string &name, std::vector<std::string> columns,
               const LabConfig &cfg, const std::string &subcommand) {
    CsvTable t(name, std::move(columns));
    t.add_meta("subcommand", subcommand);
    t.add_config(cfg.resolved);
    return t;
}

void emit(RunReport &r, const CsvTable &t, const RunOptions &opts) {
    r.files.push_back(t.write(opts.out_dir));
}

void emit_text(RunReport &r, const RunOptions &opts, const std::string &name,
               const std::string &text) {
    r.files.push_back(write_text(opts.out_dir, name, text));
}

std::string fmt(double v) { return format_double(v); }

void maybe_dump_hamiltonian(const LabConfig &cfg, const RunOptions &opts,
                            RunReport &r) {
    if (opts.dump_hamiltonian) {
        emit_text(r, opts, "hamiltonian.txt",
                  to_text(build_hamiltonian(cfg.model)));
    }
}

const char *second_column(Plane p) {
    return p == Plane::ThetaMu ? "mu_over_g" : "m_over_g";
}

SchwingerParams cell_params(const SchwingerParams &base, Plane plane,
                            double theta_over_2pi, double second) {
    auto p = with_axis(base, BoundaryAxis::Theta, theta_over_2pi);
    return with_axis(p, plane == Plane::ThetaMu ? BoundaryAxis::Mu
                                                : BoundaryAxis::Mass,
                     second);
}

std::vector<Field> cell_row(const GridCell &c) {
    std::vector<Field> row{c.first, c.second};
    if (c.error.empty()) {
        row.insert(row.end(),
                   {c.energy, c.ratio, c.obs.charge, c.obs.chiral_condensate,
                    c.obs.electric_field, c.delta2, ll{c.iterations}});
    } else {
        row.insert(row.end(), 7, Field{std::string()});
    }
    row.push_back(std::to_string(c.seed));
    row.push_back(ll{c.warm});
    row.push_back(c.error);
    return row;
}

// Rounded <Q> of a cell, or nullopt for failed cells.
std::optional<long> rounded_charge(const GridCell &c) {
    if (!c.error.empty()) {
        return std::nullopt;
    }
    return std::lround(c.obs.charge);
}

} // namespace

void parallel_for(int count, int jobs, const std::function<void(int)> &fn) {
    const int workers = std::clamp(jobs, 1, std::max(count, 1));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first;
    std::mutex mu;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(mu);
                    if (!first) {
                        first = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (first) {
        std::rethrow_exception(first);
    }
}

double ratio_of(std::pair<double, double> extremes, double e) {
    return (extremes.second - e) / (extremes.second - extremes.first);
}

GroundResult run_ground(const LabConfig &cfg, const RunOptions &opts) {
    GroundResult out;
    const auto h = build_hamiltonian(cfg.model);
    const auto circuit = build_circuit(cfg.ansatz);
    const auto q_op = charge_operator(cfg.model.n_sites);
    ExactOracle oracle;
    const auto ext = oracle.extremes(cfg.model);
    out.exact_min = ext.first;
    out.exact_max = ext.second;

    const auto seed = derive_seed(cfg.seed, 0);
    const auto theta0 = random_parameters(circuit.parameter_count(), seed);
    EvolveOptions eo;
    eo.charge = &q_op;
    out.run = evolve(circuit, theta0, h, cfg.solver, eo);
    out.ratio = ratio_of(ext, out.run.final_energy);

    auto traj = table("trajectory.csv",
                      {"iter", "energy", "ratio", "delta2", "kappa",
                       "truncated_count", "charge", "lambda_min",
                       "lambda_max"},
                      cfg, "ground");
    for (const auto &s : out.run.steps) {
        traj.add_row({ll{s.iter}, s.energy, ratio_of(ext, s.energy), s.delta2,
                      s.kappa, ll{s.truncated_count}, s.charge, s.lambda_min,
                      s.lambda_max});
    }
    emit(out.report, traj, opts);

    // Aborted runs keep the last finite energy but no usable state.
    if (out.run.status != RunStatus::Aborted) {
        const auto psi = evaluate(circuit, out.run.final_params);
        out.observables = observables(psi, cfg.model);
        if (!opts.dump_state_path.empty()) {
            write_amplitudes(psi, opts.dump_state_path);
            out.report.files.push_back(opts.dump_state_path);
        }
    }
    const double last_d2 =
        out.run.steps.empty() ? 0.0 : out.run.steps.back().delta2;
    auto summary = table("ground_summary.csv",
                         {"energy", "exact_min", "exact_max", "ratio",
                          "charge", "chiral_condensate", "electric_field",
                          "delta2", "iterations", "seed", "status"},
                         cfg, "ground");
    summary.add_row({out.run.final_energy, out.exact_min, out.exact_max,
                     out.ratio, out.observables.charge,
                     out.observables.chiral_condensate,
                     out.observables.electric_field, last_d2,
                     ll(out.run.steps.size()), std::to_string(seed),
                     std::string(to_string(out.run.status))});
    emit(out.report, summary, opts);
    maybe_dump_hamiltonian(cfg, opts, out.report);

    out.report.solver_failed = out.run.status == RunStatus::Aborted;
    std::ostringstream ss;
    ss << "ground: E=" << fmt(out.run.final_energy)
       << " E_min=" << fmt(out.exact_min) << " ratio=" << fmt(out.ratio)
       << " <Q>=" << fmt(out.observables.charge)
       << " chi=" << fmt(out.observables.chiral_condensate)
       << " efield=" << fmt(out.observables.electric_field)
       << " iterations=" << out.run.steps.size()
       << " status=" << to_string(out.run.status);
    if (!out.run.diagnostic.empty()) {
        ss << " (" << out.run.diagnostic << ")";
    }
    out.report.summary = ss.str();
    return out;
}

BenchmarkResult run_benchmark(const LabConfig &cfg, const RunOptions &opts) {
    BenchmarkResult out;
    const auto &bm = cfg.benchmark;
    const std::vector<int> depths =
        bm.depths.empty() ? std::vector<int>{cfg.ansatz.depth} : bm.depths;
    const auto h = build_hamiltonian(cfg.model);
    ExactOracle oracle;
    const auto ext = oracle.extremes(cfg.model);

    std::vector<Circuit> circuits;
    for (int d : depths) {
        AnsatzSpec spec = cfg.ansatz;
        spec.depth = d;
        circuits.push_back(build_circuit(spec));
    }
    const int n_methods = static_cast<int>(bm.methods.size());
    const int samples = bm.samples;
    const int iters = cfg.solver.max_iters;
    const int tasks = static_cast<int>(depths.size()) * n_methods * samples;

    struct Sample {
        std::vector<double> trajectory;
        double final_energy = 0.0;
        int iterations = 0;
        RunStatus status = RunStatus::MaxIters;
    };
    std::vector<Sample> results(static_cast<std::size_t>(tasks));
    parallel_for(tasks, opts.jobs, [&](int t) {
        const int s = t % samples;
        const int m = (t / samples) % n_methods;
        const int d = t / (samples * n_methods);
        const auto &circuit = circuits[static_cast<std::size_t>(d)];
        VqiteConfig sc = cfg.solver;
        sc.rule = bm.methods[static_cast<std::size_t>(m)];
        const auto theta0 = random_parameters(circuit.parameter_count(),
                                              derive_seed(cfg.seed, s));
        const auto run = evolve(circuit, theta0, h, sc);
        Sample &r = results[static_cast<std::size_t>(t)];
        for (const auto &st : run.steps) {
            r.trajectory.push_back(ratio_of(ext, st.energy));
        }
        // Runs that stop early hold their final value.
        const double fin = ratio_of(ext, run.final_energy);
        r.trajectory.resize(static_cast<std::size_t>(iters) + 1, fin);
        r.trajectory.back() = fin;
        r.final_energy = run.final_energy;
        r.iterations = static_cast<int>(run.steps.size());
        r.status = run.status;
    });

    auto curves = table("benchmark.csv",
                        {"depth", "method", "iter", "mean_ratio", "std_ratio",
                         "samples"},
                        cfg, "benchmark");
    auto per_sample = table("benchmark_samples.csv",
                            {"depth", "method", "sample", "seed",
                             "final_energy", "final_ratio", "iterations",
                             "status"},
                            cfg, "benchmark");
    std::ostringstream ss;
    ss << "benchmark:";
    for (std::size_t d = 0; d < depths.size(); ++d) {
        for (int m = 0; m < n_methods; ++m) {
            MethodCurve c;
            c.depth = depths[d];
            c.method = bm.methods[static_cast<std::size_t>(m)];
            c.mean.assign(static_cast<std::size_t>(iters) + 1, 0.0);
            c.stddev.assign(c.mean.size(), 0.0);
            const auto base = (d * n_methods + m) * samples;
            for (int s = 0; s < samples; ++s) {
                const auto &r = results[base + s];
                for (std::size_t k = 0; k < c.mean.size(); ++k) {
                    c.mean[k] += r.trajectory[k] / samples;
                }
                c.final_ratios.push_back(r.trajectory.back());
                c.statuses.push_back(r.status);
                per_sample.add_row({ll{c.depth}, std::string(to_string(c.method)),
                                    ll{s}, std::to_string(derive_seed(cfg.seed, s)),
                                    r.final_energy, r.trajectory.back(),
                                    ll{r.iterations},
                                    std::string(to_string(r.status))});
            }
            // Population standard deviation: one sample gives zero.
            for (int s = 0; s < samples; ++s) {
                const auto &r = results[base + s];
                for (std::size_t k = 0; k < c.mean.size(); ++k) {
                    const double dev = r.trajectory[k] - c.mean[k];
                    c.stddev[k] += dev * dev / samples;
                }
            }
            for (std::size_t k = 0; k < c.mean.size(); ++k) {
                c.stddev[k] = std::sqrt(c.stddev[k]);
                curves.add_row({ll{c.depth}, std::string(to_string(c.method)),
                                ll(k), c.mean[k], c.stddev[k], ll{samples}});
            }
            ss << " [depth=" << c.depth << " " << to_string(c.method)
               << " mean=" << fmt(c.mean.back())
               << " std=" << fmt(c.stddev.back()) << "]";
            out.curves.push_back(std::move(c));
        }
    }
    emit(out.report, curves, opts);
    emit(out.report, per_sample, opts);
    if (opts.gnuplot) {
        emit_text(out.report, opts, "benchmark.gp",
                  "set datafile separator ','\n"
                  "set xlabel 'iteration'\nset ylabel 'Ratio'\n"
                  "set key bottom right\n"
                  "plot for [m in 'regularized pseudo_inverse gradient'] "
                  "'benchmark.csv' using 3:(strcol(2) eq m ? $4 : NaN) "
                  "with lines title m\n");
    }
    maybe_dump_hamiltonian(cfg, opts, out.report);
    out.report.summary = ss.str();
    return out;
}

SweepResult run_sweep(const LabConfig &cfg, const RunOptions &opts) {
    SweepResult out;
    const auto &sw = cfg.sweep;
    out.plane = sw.plane;
    out.first = sw.theta;
    out.second = sw.second();
    const int n1 = out.first.points;
    const int n2 = out.second.points;
    out.cells.resize(static_cast<std::size_t>(n1) * n2);

    AnsatzSpec spec = cfg.ansatz;
    spec.init = sw.init;
    const auto circuit = build_circuit(spec);
    const auto q_op = charge_operator(cfg.model.n_sites);
    ExactOracle oracle;

    // Returns the final parameters for warm-starting the next cell.
    auto solve_cell = [&](int i, int j, const std::vector<double> *warm)
        -> std::vector<double> {
        GridCell &cell = out.cells[static_cast<std::size_t>(i * n2 + j)];
        cell.first = out.first.value(i);
        cell.second = out.second.value(j);
        cell.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(i * n2 + j));
        cell.warm = warm != nullptr;
        try {
            const auto p = cell_params(cfg.model, sw.plane, cell.first, cell.second);
            const auto h = build_hamiltonian(p);
            VqiteConfig sc = cfg.solver;
            if (warm) {
                sc.max_iters = sw.warm_iters;
            }
            auto theta0 = random_parameters(circuit.parameter_count(), cell.seed);
            if (warm) {
                // The R_x angles of a converged cell sit on a charge
                // eigenstate, where the flow towards other sectors vanishes.
                // Keeping only the HVA angles lets the cell change sector.
                const auto keep = sw.reseed_tau && spec.init == ChargeInit::Free
                                      ? theta0.size() - static_cast<std::size_t>(spec.n_sites)
                                      : theta0.size();
                std::copy_n(warm->begin(), keep, theta0.begin());
            }
            EvolveOptions eo;
            eo.charge = &q_op;
            const auto run = evolve(circuit, theta0, h, sc, eo);
            cell.iterations = static_cast<int>(run.steps.size());
            if (run.status == RunStatus::Aborted) {
                cell.error = run.diagnostic.empty() ? "aborted" : run.diagnostic;
                return {};
            }
            cell.energy = run.final_energy;
            cell.ratio = ratio_of(oracle.extremes(p), cell.energy);
            cell.obs = observables(evaluate(circuit, run.final_params), p);
            cell.delta2 = run.steps.empty() ? 0.0 : run.steps.back().delta2;
            return run.final_params;
        } catch (const std::exception &e) {
            cell.error = e.what();
            return {};
        }
    };

    if (sw.warm_start) {
        // Columns in parallel; each column walks its second axis in order.
        parallel_for(n1, opts.jobs, [&](int i) {
            std::vector<double> prev;
            for (int j = 0; j < n2; ++j) {
                prev = solve_cell(i, j, prev.empty() ? nullptr : &prev);
            }
        });
    } else {
        parallel_for(n1 * n2, opts.jobs,
                     [&](int k) { (void)solve_cell(k / n2, k % n2, nullptr); });
    }

    const std::string second_name = second_column(sw.plane);
    auto grid = table("sweep.csv",
                      {"theta_over_2pi", second_name, "energy", "ratio",
                       "charge", "chiral_condensate", "electric_field",
                       "delta2", "iterations", "seed", "warm", "error"},
                      cfg, "sweep");
    int failures = 0;
    for (const auto &c : out.cells) {
        grid.add_row(cell_row(c));
        failures += !c.error.empty();
    }
    emit(out.report, grid, opts);

    // The mirror of grid point (i, j) is (n1-1-i, n2-1-j) on symmetric axes.
    const bool symmetric =
        sw.plane == Plane::ThetaMu &&
        std::abs(out.first.lo + out.first.hi) < 1e-12 &&
        std::abs(out.second.lo + out.second.hi) < 1e-12;
    if (symmetric) {
        double worst = 0.0;
        for (int i = 0; i < n1; ++i) {
            for (int j = 0; j < n2; ++j) {
                const auto &a = out.at(i, j);
                const auto &b = out.at(n1 - 1 - i, n2 - 1 - j);
                if (a.error.empty() && b.error.empty()) {
                    worst = std::max(worst, std::abs(a.obs.charge + b.obs.charge));
                }
            }
        }
        out.quasi_symmetry = worst;
    }

    if (sw.boundary_overlay) {
        out.overlay.resize(cfg.boundary.q.size());
        parallel_for(static_cast<int>(out.overlay.size()), opts.jobs, [&](int k) {
            out.overlay[static_cast<std::size_t>(k)] = trace_boundary(
                oracle, cfg.boundary.q[static_cast<std::size_t>(k)], sw.plane,
                out.first, out.second, cfg.model, cfg.boundary.tol);
        });
        auto overlay = table("sweep_boundary.csv",
                             {"q", "axis1_value", "axis2_root", "residual"},
                             cfg, "sweep");
        int roots = 0;
        int agree = 0;
        const double h2 = out.second.spacing();
        for (const auto &tr : out.overlay) {
            for (std::size_t i = 0; i < tr.points.size(); ++i) {
                const auto &pt = tr.points[i];
                if (!pt.root) {
                    continue;
                }
                overlay.add_row({ll{tr.q}, pt.first, pt.root->value,
                                 pt.root->residual});
                ++roots;
                // A step from <= q to >= q+1 between adjacent cells whose
                // span, widened by one cell, contains the root.
                for (int j = 0; j + 1 < n2; ++j) {
                    const auto lo = rounded_charge(out.at(static_cast<int>(i), j));
                    const auto hi =
                        rounded_charge(out.at(static_cast<int>(i), j + 1));
                    if (!lo || !hi) {
                        continue;
                    }
                    const bool step = (*lo <= tr.q && *hi >= tr.q + 1) ||
                                      (*hi <= tr.q && *lo >= tr.q + 1);
                    if (step && pt.root->value >= out.second.value(j) - h2 - 1e-12 &&
                        pt.root->value <= out.second.value(j + 1) + h2 + 1e-12) {
                        ++agree;
                        break;
                    }
                }
            }
        }
        if (roots > 0) {
            out.overlay_agreement = static_cast<double>(agree) / roots;
        }
        emit(out.report, overlay, opts);
    }

    if (opts.gnuplot) {
        std::string gp = "set datafile separator ','\nset view map\n"
                         "set xlabel 'theta/2pi'\nset ylabel '" +
                         second_name + "'\n";
        const char *names[] = {"charge", "chiral_condensate", "electric_field"};
        for (int col = 0; col < 3; ++col) {
            gp += "set title '" + std::string(names[col]) + "'\n"
                  "plot 'sweep.csv' using 1:2:" + std::to_string(5 + col) +
                  " with image notitle";
            if (sw.boundary_overlay) {
                gp += ", 'sweep_boundary.csv' using 2:3 with points pt 7 ps 0.4 "
                      "lc rgb 'red' notitle";
            }
            gp += "\npause -1\n";
        }
        emit_text(out.report, opts, "sweep.gp", gp);
    }
    maybe_dump_hamiltonian(cfg, opts, out.report);

    std::ostringstream ss;
    ss << "sweep: " << to_string(sw.plane) << " " << n1 << "x" << n2
       << " cells, " << failures << " failed";
    if (out.quasi_symmetry) {
        ss << ", quasi-symmetry max|Q(mu,theta)+Q(-mu,-theta)|="
           << fmt(*out.quasi_symmetry);
    }
    if (out.overlay_agreement) {
        ss << ", overlay agreement=" << fmt(*out.overlay_agreement);
    }
    out.report.summary = ss.str();
    return out;
}

SpectrumResult run_spectrum(const LabConfig &cfg, const RunOptions &opts) {
    SpectrumResult out;
    const int samples = cfg.spectrum.samples;
    const auto h = build_hamiltonian(cfg.model);
    const auto circuit = build_circuit(cfg.ansatz);
    std::vector<Eigen::MatrixXd> mats(static_cast<std::size_t>(samples));
    for (int s = 0; s < samples; ++s) {
        out.seeds.push_back(derive_seed(cfg.seed, s));
    }
    parallel_for(samples, opts.jobs, [&](int s) {
        const auto seed = out.seeds[static_cast<std::size_t>(s)];
        if (opts.spectrum_sampler) {
            mats[static_cast<std::size_t>(s)] = opts.spectrum_sampler(s, seed);
            return;
        }
        const auto theta = random_parameters(circuit.parameter_count(), seed);
        mats[static_cast<std::size_t>(s)] = assemble(circuit, theta, h).A;
    });
    out.stats = spectrum_statistics(mats, cfg.spectrum.histogram);

    auto hist = table("spectrum_histogram.csv",
                      {"sign", "log10_lo", "log10_hi", "count"}, cfg,
                      "spectrum");
    auto add_hist = [&](const char *sign, const Histogram &hg) {
        for (std::size_t b = 0; b < hg.counts.size(); ++b) {
            hist.add_row({std::string(sign), hg.edges[b], hg.edges[b + 1],
                          ll{hg.counts[b]}});
        }
    };
    add_hist("negative", out.stats.negative);
    add_hist("positive", out.stats.positive);
    emit(out.report, hist, opts);

    auto per = table("spectrum_samples.csv",
                     {"sample", "seed", "kappa", "lambda_min", "lambda_max",
                      "negative_count", "below_epsilon_count"},
                     cfg, "spectrum");
    auto eig = table("spectrum_eigenvalues.csv", {"sample", "index", "eigenvalue"},
                     cfg, "spectrum");
    std::size_t offset = 0;
    for (int s = 0; s < samples; ++s) {
        const auto dim = static_cast<std::size_t>(mats[static_cast<std::size_t>(s)].rows());
        double lo = 0.0;
        double hi = 0.0;
        ll neg = 0;
        ll tiny = 0;
        for (std::size_t k = 0; k < dim; ++k) {
            const double v = out.stats.eigenvalues[offset + k];
            lo = k ? std::min(lo, v) : v;
            hi = k ? std::max(hi, v) : v;
            neg += v < 0.0;
            tiny += v > 0.0 && v < cfg.solver.epsilon;
            eig.add_row({ll{s}, ll(k), v});
        }
        offset += dim;
        per.add_row({ll{s}, std::to_string(out.seeds[static_cast<std::size_t>(s)]),
                     out.stats.kappas[static_cast<std::size_t>(s)], lo, hi, neg,
                     tiny});
    }
    emit(out.report, per, opts);
    emit(out.report, eig, opts);
    if (opts.gnuplot) {
        emit_text(out.report, opts, "spectrum.gp",
                  "set datafile separator ','\nset style fill solid 0.5\n"
                  "set xlabel 'log10 |lambda|'\nset ylabel 'count'\n"
                  "plot 'spectrum_histogram.csv' using "
                  "(($2+$3)/2):(strcol(1) eq 'negative' ? $4 : NaN) with boxes "
                  "title 'negative', '' using (($2+$3)/2):(strcol(1) eq "
                  "'positive' ? $4 : NaN) with boxes title 'positive'\n");
    }
    maybe_dump_hamiltonian(cfg, opts, out.report);

    const double kmax = *std::max_element(out.stats.kappas.begin(),
                                          out.stats.kappas.end());
    std::ostringstream ss;
    ss << "spectrum: " << samples << " samples, "
       << out.stats.eigenvalues.size() << " eigenvalues, negative="
       << out.stats.negative_count << " positive=" << out.stats.positive_count
       << " zero=" << out.stats.zero_count << " max kappa=" << fmt(kmax);
    out.report.summary = ss.str();
    return out;
}

SpectraResult run_spectra(const LabConfig &cfg, const RunOptions &opts) {
    SpectraResult out;
    const auto &sx = cfg.spectra;
    const int nt = sx.theta.points;
    const int nq = static_cast<int>(sx.q.size());
    ExactOracle oracle;
    std::vector<std::vector<SectorEnergy>> rows(static_cast<std::size_t>(nt) * nq);
    parallel_for(nt * nq, opts.jobs, [&](int k) {
        const int t = k / nq;
        const int q = sx.q[static_cast<std::size_t>(k % nq)];
        const auto p = with_axis(cfg.model, BoundaryAxis::Theta, sx.theta.value(t));
        const auto levels = oracle.spectrum(p, q);
        const int n = std::min<int>(sx.levels, static_cast<int>(levels->size()));
        for (int l = 0; l < n; ++l) {
            rows[static_cast<std::size_t>(k)].push_back(
                {q, l, (*levels)[static_cast<std::size_t>(l)], p});
        }
    });
    auto levels = table("spectra.csv",
                        {"q", "n", "energy", "theta_over_2pi", "m_over_g",
                         "mu_over_g"},
                        cfg, "spectra");
    for (const auto &r : rows) {
        for (const auto &e : r) {
            levels.add_row({ll{e.q}, ll{e.n}, e.energy,
                            axis_value(e.params, BoundaryAxis::Theta),
                            e.params.m_over_g, e.params.mu_over_g});
            out.levels.push_back(e);
        }
    }
    emit(out.report, levels, opts);

    // Sign changes of E_0^(q) - E_0^(-q) along theta, linearly interpolated.
    auto crossings = table("spectra_crossings.csv",
                           {"q", "theta_over_2pi", "theta_over_pi"}, cfg,
                           "spectra");
    auto ground = [&](int t, int q) {
        const auto p = with_axis(cfg.model, BoundaryAxis::Theta, sx.theta.value(t));
        return oracle.sector_lowest(p, q).energy;
    };
    std::ostringstream ss;
    ss << "spectra: " << out.levels.size() << " levels";
    for (int q : sx.q) {
        if (q <= 0 || std::find(sx.q.begin(), sx.q.end(), -q) == sx.q.end()) {
            continue;
        }
        double prev = ground(0, q) - ground(0, -q);
        for (int t = 1; t < nt; ++t) {
            const double cur = ground(t, q) - ground(t, -q);
            if ((prev < 0.0) != (cur < 0.0)) {
                const double x0 = sx.theta.value(t - 1);
                const double x1 = sx.theta.value(t);
                const double x = x0 + (x1 - x0) * prev / (prev - cur);
                out.crossings.push_back({q, x});
                crossings.add_row({ll{q}, x, 2.0 * x});
                ss << " [q=" << q << " crossing theta/pi=" << fmt(2.0 * x) << "]";
            }
            prev = cur;
        }
    }
    emit(out.report, crossings, opts);
    if (opts.gnuplot) {
        emit_text(out.report, opts, "spectra.gp",
                  "set datafile separator ','\nset xlabel 'theta/2pi'\n"
                  "set ylabel 'E_0^(q)'\n"
                  "plot for [q=-3:3] 'spectra.csv' using 4:($1==q && $2==0 ? "
                  "$3 : NaN) with lines title sprintf('q=%d', q)\n");
    }
    maybe_dump_hamiltonian(cfg, opts, out.report);
    out.report.summary = ss.str();
    return out;
}

BoundaryResult run_boundary(const LabConfig &cfg, const RunOptions &opts) {
    BoundaryResult out;
    const auto &sw = cfg.sweep;
    ExactOracle oracle;
    out.traces.resize(cfg.boundary.q.size());
    parallel_for(static_cast<int>(out.traces.size()), opts.jobs, [&](int k) {
        out.traces[static_cast<std::size_t>(k)] =
            trace_boundary(oracle, cfg.boundary.q[static_cast<std::size_t>(k)],
                           sw.plane, sw.theta, sw.second(), cfg.model,
                           cfg.boundary.tol);
    });
    auto t = table("boundary.csv", {"q", "axis1_value", "axis2_root", "residual"},
                   cfg, "boundary");
    std::ostringstream ss;
    ss << "boundary: " << to_string(sw.plane);
    for (const auto &tr : out.traces) {
        int found = 0;
        for (const auto &pt : tr.points) {
            if (pt.root) {
                t.add_row({ll{tr.q}, pt.first, pt.root->value, pt.root->residual});
                ++found;
            }
        }
        ss << " [q=" << tr.q << " roots=" << found << "/" << tr.points.size();
        if (!tr.diagnostic.empty()) {
            ss << " " << tr.diagnostic;
        }
        ss << "]";
    }
    emit(out.report, t, opts);
    maybe_dump_hamiltonian(cfg, opts, out.report);
    out.report.summary = ss.str();
    return out;
}

RunReport run_subcommand(const std::string &name, const LabConfig &cfg,
                         const RunOptions &opts) {
    require(opts.jobs >= 1, Errc::config, "jobs must be >= 1");
    if (name == "run") {
        return run_subcommand(cfg.experiment, cfg, opts);
    }
    if (name == "ground") {
        return run_ground(cfg, opts).report;
    }
    if (name == "benchmark") {
        return run_benchmark(cfg, opts).report;
    }
    if (name == "sweep") {
        return run_sweep(cfg, opts).report;
    }
    if (name == "spectrum") {
        return run_spectrum(cfg, opts).report;
    }
    if (name == "spectra") {
        return run_spectra(cfg, opts).report;
    }
    if (name == "boundary") {
        return run_boundary(cfg, opts).report;
    }
    fail(Errc::config, "unknown subcommand: " + name);
}

} // namespace rvqite::lab
