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

#include "rvqite/lab/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "rvqite/error.hpp"

namespace rvqite::lab {

namespace {

json range(double lo, double hi, int points) {
    return {{"min", lo}, {"max", hi}, {"points", points}};
}

// Rejects keys in `user` that the defaults do not define. Null defaults
// (optional values) accept anything.
void check_keys(const json &user, const json &defaults,
                const std::string &prefix) {
    if (!user.is_object() || !defaults.is_object()) {
        return;
    }
    for (const auto &[key, value] : user.items()) {
        const std::string path = prefix.empty() ? key : prefix + "." + key;
        const auto it = defaults.find(key);
        require(it != defaults.end(), Errc::config, "unknown config key: " + path);
        if (it->is_object()) {
            require(value.is_object(), Errc::config, path + " must be an object");
            check_keys(value, *it, path);
        }
    }
}

template <class T> T get(const json &tree, const char *section, const char *key) {
    const auto &v = tree.at(section).at(key);
    try {
        return v.get<T>();
    } catch (const json::exception &) {
        fail(Errc::config,
             std::string(section) + "." + key + " has the wrong type");
    }
}

AxisGrid grid(const json &node, const std::string &path) {
    try {
        AxisGrid g{node.at("min").get<double>(), node.at("max").get<double>(),
                   node.at("points").get<int>()};
        require(std::isfinite(g.lo) && std::isfinite(g.hi), Errc::config,
                path + " range must be finite");
        require(g.points >= 1, Errc::config, path + ".points must be >= 1");
        require(g.points == 1 || g.lo < g.hi, Errc::config,
                path + " needs min < max");
        return g;
    } catch (const json::exception &) {
        fail(Errc::config, path + " must hold numeric min, max and points");
    }
}

ChargeInit parse_init(const std::string &s) {
    if (s == "fixed") {
        return ChargeInit::Fixed;
    }
    if (s == "free") {
        return ChargeInit::Free;
    }
    fail(Errc::config, "ansatz init must be \"fixed\" or \"free\", got " + s);
}

Plane parse_plane(const std::string &s) {
    if (s == "theta_mu") {
        return Plane::ThetaMu;
    }
    if (s == "theta_m") {
        return Plane::ThetaMass;
    }
    fail(Errc::config, "sweep plane must be theta_mu or theta_m, got " + s);
}

DerivativeMode parse_mode(const std::string &s) {
    if (s == "analytic") {
        return DerivativeMode::Analytic;
    }
    if (s == "parameter_shift") {
        return DerivativeMode::ParameterShift;
    }
    fail(Errc::config, "derivative_mode must be analytic or parameter_shift");
}

// Domain validators throw invalid_argument; in a config these are config
// errors.
template <class F> void as_config_error(F &&f) {
    try {
        f();
    } catch (const Error &e) {
        if (e.code() == Errc::invalid_argument) {
            fail(Errc::config, e.what());
        }
        throw;
    }
}

void flatten_into(const json &node, const std::string &prefix,
                  std::vector<std::pair<std::string, std::string>> &out) {
    if (node.is_object() && !node.empty()) {
        for (const auto &[key, value] : node.items()) {
            flatten_into(value, prefix.empty() ? key : prefix + "." + key, out);
        }
        return;
    }
    out.emplace_back(prefix, node.dump());
}

} // namespace

bool is_subcommand(std::string_view name) {
    for (const char *s : kSubcommands) {
        if (name == s) {
            return true;
        }
    }
    return false;
}

json default_tree() {
    return {
        {"model",
         {{"N", 10},
          {"a_g", 1.0},
          {"m_over_g", 1.0},
          {"theta_over_2pi", 0.0},
          {"mu_over_g", 0.0}}},
        {"ansatz", {{"depth", 5}, {"init", "fixed"}, {"q", 0}}},
        {"solver",
         {{"dtau", 0.1},
          {"epsilon", 1e-6},
          {"max_iters", 500},
          {"stop_delta2", 1e-10},
          {"update_rule", "regularized"},
          {"derivative_mode", "analytic"},
          {"rcond", 1e-15},
          {"learning_rate", nullptr}}},
        {"seed", 1},
        {"experiment", "ground"},
        {"benchmark",
         {{"samples", 20},
          {"methods", {"regularized", "pseudo_inverse", "gradient"}},
          {"depths", json::array()}}},
        {"sweep",
         {{"plane", "theta_mu"},
          {"theta_over_2pi", range(-1.0, 1.0, 41)},
          {"mu_over_g", range(-1.5, 1.5, 31)},
          {"m_over_g", range(-1.0, 1.0, 31)},
          {"init", "free"},
          {"warm_start", true},
          {"warm_iters", 150},
          {"reseed_tau", true},
          {"boundary_overlay", true}}},
        {"spectrum",
         {{"samples", 10},
          {"histogram", {{"log10_lo", -20.0}, {"log10_hi", 2.0}, {"bins", 44}}}}},
        {"spectra",
         {{"theta_over_2pi", range(-0.5, 0.5, 201)},
          {"q", {-3, -2, -1, 0, 1, 2, 3}},
          {"levels", 1}}},
        {"boundary", {{"q", {-2, -1, 0, 1, 2}}, {"tol", 1e-6}}},
    };
}

LabConfig resolve(const json &user) {
    require(user.is_object() || user.is_null(), Errc::config,
            "config root must be an object");
    json tree = default_tree();
    if (user.is_object()) {
        check_keys(user, tree, "");
        tree.merge_patch(user);
    }

    LabConfig cfg;
    cfg.resolved = tree;

    auto &m = cfg.model;
    m.n_sites = get<int>(tree, "model", "N");
    m.a_g = get<double>(tree, "model", "a_g");
    m.m_over_g = get<double>(tree, "model", "m_over_g");
    m.theta = 2.0 * std::numbers::pi * get<double>(tree, "model", "theta_over_2pi");
    m.mu_over_g = get<double>(tree, "model", "mu_over_g");
    as_config_error([&] { m.validate(); });

    auto &a = cfg.ansatz;
    a.n_sites = m.n_sites;
    a.depth = get<int>(tree, "ansatz", "depth");
    a.init = parse_init(get<std::string>(tree, "ansatz", "init"));
    a.q = get<int>(tree, "ansatz", "q");
    as_config_error([&] { a.validate(); });

    auto &s = cfg.solver;
    s.dtau = get<double>(tree, "solver", "dtau");
    s.epsilon = get<double>(tree, "solver", "epsilon");
    s.max_iters = get<int>(tree, "solver", "max_iters");
    s.stop_delta2 = get<double>(tree, "solver", "stop_delta2");
    s.rule = parse_update_rule(get<std::string>(tree, "solver", "update_rule"));
    s.mode = parse_mode(get<std::string>(tree, "solver", "derivative_mode"));
    s.rcond = get<double>(tree, "solver", "rcond");
    if (const auto &lr = tree["solver"]["learning_rate"]; !lr.is_null()) {
        require(lr.is_number(), Errc::config, "solver.learning_rate must be a number");
        s.learning_rate = lr.get<double>();
    }
    as_config_error([&] { s.validate(); });

    try {
        cfg.seed = tree.at("seed").get<std::uint64_t>();
    } catch (const json::exception &) {
        fail(Errc::config, "seed must be a non-negative integer");
    }

    try {
        cfg.experiment = tree.at("experiment").get<std::string>();
    } catch (const json::exception &) {
        fail(Errc::config, "experiment must be a string");
    }
    require(is_subcommand(cfg.experiment), Errc::config,
            "unknown experiment: " + cfg.experiment);

    auto &b = cfg.benchmark;
    b.samples = get<int>(tree, "benchmark", "samples");
    require(b.samples >= 1, Errc::config, "benchmark.samples must be >= 1");
    for (const auto &name : get<std::vector<std::string>>(tree, "benchmark", "methods")) {
        b.methods.push_back(parse_update_rule(name));
    }
    require(!b.methods.empty(), Errc::config, "benchmark.methods is empty");
    b.depths = get<std::vector<int>>(tree, "benchmark", "depths");
    for (int d : b.depths) {
        require(d >= 1, Errc::config, "benchmark depths must be >= 1");
    }

    auto &w = cfg.sweep;
    const auto &sw = tree.at("sweep");
    w.plane = parse_plane(get<std::string>(tree, "sweep", "plane"));
    w.theta = grid(sw.at("theta_over_2pi"), "sweep.theta_over_2pi");
    w.mu = grid(sw.at("mu_over_g"), "sweep.mu_over_g");
    w.mass = grid(sw.at("m_over_g"), "sweep.m_over_g");
    w.init = parse_init(get<std::string>(tree, "sweep", "init"));
    w.warm_start = get<bool>(tree, "sweep", "warm_start");
    w.warm_iters = get<int>(tree, "sweep", "warm_iters");
    w.reseed_tau = get<bool>(tree, "sweep", "reseed_tau");
    require(w.warm_iters >= 0, Errc::config, "sweep.warm_iters must be >= 0");
    w.boundary_overlay = get<bool>(tree, "sweep", "boundary_overlay");

    auto &sp = cfg.spectrum;
    sp.samples = get<int>(tree, "spectrum", "samples");
    require(sp.samples >= 1, Errc::config, "spectrum.samples must be >= 1");
    const auto &hist = tree.at("spectrum").at("histogram");
    try {
        sp.histogram = {hist.at("log10_lo").get<double>(),
                        hist.at("log10_hi").get<double>(),
                        hist.at("bins").get<int>()};
    } catch (const json::exception &) {
        fail(Errc::config, "spectrum.histogram has the wrong type");
    }
    require(sp.histogram.bins >= 1 &&
                sp.histogram.log10_lo < sp.histogram.log10_hi,
            Errc::config, "spectrum.histogram needs bins >= 1 and lo < hi");

    auto &x = cfg.spectra;
    x.theta = grid(tree.at("spectra").at("theta_over_2pi"), "spectra.theta_over_2pi");
    x.q = get<std::vector<int>>(tree, "spectra", "q");
    x.levels = get<int>(tree, "spectra", "levels");
    require(x.levels >= 1, Errc::config, "spectra.levels must be >= 1");

    cfg.boundary.q = get<std::vector<int>>(tree, "boundary", "q");
    cfg.boundary.tol = get<double>(tree, "boundary", "tol");
    require(cfg.boundary.tol > 0.0, Errc::config, "boundary.tol must be positive");
    return cfg;
}

json parse_text(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end(), nullptr, true, true);
    } catch (const json::parse_error &e) {
        fail(Errc::config, std::string("config parse error: ") + e.what());
    }
}

json load_file(const std::string &path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), Errc::config, "cannot open config " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

void set_path(json &tree, std::string_view dotted, json value) {
    require(!dotted.empty(), Errc::config, "empty config key");
    json *node = &tree;
    std::size_t start = 0;
    while (true) {
        const auto dot = dotted.find('.', start);
        const std::string key(dotted.substr(start, dot - start));
        require(!key.empty(), Errc::config, "malformed config key");
        if (!node->is_object()) {
            *node = json::object();
        }
        if (dot == std::string_view::npos) {
            (*node)[key] = std::move(value);
            return;
        }
        node = &(*node)[key];
        start = dot + 1;
    }
}

std::vector<std::pair<std::string, std::string>> flatten(const json &tree) {
    std::vector<std::pair<std::string, std::string>> out;
    flatten_into(tree, "", out);
    return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace rvqite::lab
