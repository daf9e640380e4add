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

#include "rvqite/circuit.hpp"

#include <bit>
#include <cmath>

#include "rvqite/error.hpp"

namespace rvqite {

namespace {

constexpr cplx kI{0.0, 1.0};

PauliString two_site(int a, int b, Axis axis) {
    const auto pa = PauliString::single(a, axis);
    const auto pb = PauliString::single(b, axis);
    return {pa.x | pb.x, pa.z | pb.z};
}

void check_gate_sites(const Gate &g, int qubits) {
    for (int i = 0; i < g.site_count; ++i) {
        require(g.sites[i] >= 0 && g.sites[i] < qubits, Errc::invalid_argument,
                "gate site out of range");
    }
    if (g.site_count == 2) {
        require(g.sites[0] != g.sites[1], Errc::invalid_argument,
                "two-site gate on a single site");
    }
}

void check_params(const Circuit &c, std::span<const double> params) {
    require(params.size() == static_cast<std::size_t>(c.parameter_count()),
            Errc::dimension_mismatch,
            "parameter vector length does not match the circuit");
}

// i * sum_t sign_t P_t |psi>, written into out.
void generator_insertion(const Gate &g, std::span<const cplx> psi,
                         std::span<cplx> out, std::vector<cplx> &scratch) {
    std::fill(out.begin(), out.end(), cplx{0.0, 0.0});
    scratch.assign(psi.begin(), psi.end());
    const std::size_t dim = psi.size();
    for (const auto &t : g.generator) {
        std::copy(psi.begin(), psi.end(), scratch.begin());
        apply_pauli_string(scratch, t.string);
        const cplx f = kI * static_cast<double>(t.sign);
        for (std::size_t b = 0; b < dim; ++b) {
            out[b] += f * scratch[b];
        }
    }
}

void apply_range(std::span<cplx> amps, const Circuit &c,
                 std::span<const double> params, int begin, int end) {
    const auto gates = c.gates();
    for (int i = begin; i < end; ++i) {
        const auto &g = gates[static_cast<std::size_t>(i)];
        apply_gate_inplace(amps, c.qubit_count(), g,
                           params[static_cast<std::size_t>(g.param_index)]);
    }
}

} // namespace

Gate Gate::rx(int site, int param) {
    Gate g;
    g.kind = GateKind::RX;
    g.sites = {site, site};
    g.site_count = 1;
    g.param_index = param;
    g.generator = {{PauliString::single(site, Axis::X), -1}};
    return g;
}

Gate Gate::rz(int site, int param) {
    Gate g;
    g.kind = GateKind::RZ;
    g.sites = {site, site};
    g.site_count = 1;
    g.param_index = param;
    g.generator = {{PauliString::single(site, Axis::Z), +1}};
    return g;
}

Gate Gate::rzz(int a, int b, int param) {
    Gate g;
    g.kind = GateKind::RZZ;
    g.sites = {a, b};
    g.site_count = 2;
    g.param_index = param;
    g.generator = {{two_site(a, b, Axis::Z), +1}};
    return g;
}

Gate Gate::rxxyy(int a, int b, int param) {
    Gate g;
    g.kind = GateKind::RXXYY;
    g.sites = {a, b};
    g.site_count = 2;
    g.param_index = param;
    g.generator = {{two_site(a, b, Axis::X), +1}, {two_site(a, b, Axis::Y), +1}};
    return g;
}

bool Gate::commutes_with(const Gate &o) const noexcept {
    for (const auto &a : generator) {
        for (const auto &b : o.generator) {
            if (!a.string.commutes_with(b.string)) {
                return false;
            }
        }
    }
    return true;
}

Circuit::Circuit(int qubits, std::uint64_t initial_bits,
                 std::vector<Gate> gates, int parameter_count)
    : qubits_(qubits), init_(initial_bits), gates_(std::move(gates)),
      params_(parameter_count) {
    require(qubits >= 1 && qubits <= kMaxStateQubits, Errc::invalid_argument,
            "circuit qubit count out of range");
    require((initial_bits >> qubits) == 0, Errc::invalid_argument,
            "initial bitstring does not fit the register");
    require(parameter_count >= 0, Errc::invalid_argument,
            "negative parameter count");
    param_gates_.resize(static_cast<std::size_t>(parameter_count));
    for (std::size_t i = 0; i < gates_.size(); ++i) {
        const auto &g = gates_[i];
        check_gate_sites(g, qubits);
        require(g.param_index >= 0 && g.param_index < parameter_count,
                Errc::invalid_argument, "gate parameter index out of range");
        for (std::size_t a = 0; a < g.generator.size(); ++a) {
            for (std::size_t b = a + 1; b < g.generator.size(); ++b) {
                require(g.generator[a].string.commutes_with(
                            g.generator[b].string),
                        Errc::invalid_argument,
                        "gate generator terms must commute");
            }
        }
        param_gates_[static_cast<std::size_t>(g.param_index)].push_back(
            static_cast<int>(i));
    }
    for (const auto &pg : param_gates_) {
        require(!pg.empty(), Errc::invalid_argument,
                "every parameter must drive at least one gate");
    }
    int begin = 0;
    for (int i = 1; i <= static_cast<int>(gates_.size()); ++i) {
        bool split = i == static_cast<int>(gates_.size());
        for (int j = begin; !split && j < i; ++j) {
            split = !gates_[static_cast<std::size_t>(i)].commutes_with(
                gates_[static_cast<std::size_t>(j)]);
        }
        if (split) {
            blocks_.emplace_back(begin, i);
            begin = i;
        }
    }
}

std::span<const int> Circuit::gates_of(int param) const {
    require(param >= 0 && param < params_, Errc::invalid_argument,
            "parameter index out of range");
    return param_gates_[static_cast<std::size_t>(param)];
}

void apply_gate_inplace(std::span<cplx> amps, int qubits, const Gate &g,
                        double value) {
    check_gate_sites(g, qubits);
    const std::size_t dim = amps.size();
    require(dim == (std::size_t{1} << qubits), Errc::dimension_mismatch,
            "gate applied to a buffer of the wrong size");
    const std::size_t ma = std::size_t{1} << g.sites[0];
    const std::size_t mb = std::size_t{1} << g.sites[1];
    switch (g.kind) {
    case GateKind::RZ: {
        const cplx e = std::polar(1.0, value);
        const cplx ec = std::conj(e);
        for (std::size_t b = 0; b < dim; ++b) {
            amps[b] *= (b & ma) ? ec : e;
        }
        break;
    }
    case GateKind::RZZ: {
        const cplx e = std::polar(1.0, value);
        const cplx ec = std::conj(e);
        for (std::size_t b = 0; b < dim; ++b) {
            const bool odd = ((b & ma) != 0) != ((b & mb) != 0);
            amps[b] *= odd ? ec : e;
        }
        break;
    }
    case GateKind::RX: {
        const double c = std::cos(value);
        const cplx ms{0.0, -std::sin(value)};
        for (std::size_t b = 0; b < dim; ++b) {
            if (b & ma) {
                continue;
            }
            const cplx a0 = amps[b];
            const cplx a1 = amps[b | ma];
            amps[b] = c * a0 + ms * a1;
            amps[b | ma] = ms * a0 + c * a1;
        }
        break;
    }
    case GateKind::RXXYY: {
        // Acts only on the {|01>, |10>} block of the two sites.
        const double c = std::cos(2.0 * value);
        const cplx is{0.0, std::sin(2.0 * value)};
        for (std::size_t b = 0; b < dim; ++b) {
            if ((b & ma) || !(b & mb)) {
                continue;
            }
            const std::size_t p = b ^ ma ^ mb;
            const cplx u = amps[b];
            const cplx v = amps[p];
            amps[b] = c * u + is * v;
            amps[p] = is * u + c * v;
        }
        break;
    }
    }
}

StateVector apply_gate(const StateVector &psi, const Gate &g, double value) {
    StateVector out = psi;
    apply_gate_inplace(out.amplitudes(), out.qubit_count(), g, value);
    return out;
}

void apply_pauli_string(std::span<cplx> amps, const PauliString &p) {
    const std::size_t dim = amps.size();
    if (p.x == 0) {
        for (std::size_t b = 0; b < dim; ++b) {
            if (std::popcount(b & p.z) & 1) {
                amps[b] = -amps[b];
            }
        }
        return;
    }
    const std::uint64_t low = p.x & (~p.x + 1);
    for (std::size_t b = 0; b < dim; ++b) {
        if (b & low) {
            continue;
        }
        const std::size_t q = b ^ p.x;
        const cplx vb = amps[b];
        const cplx vq = amps[q];
        amps[q] = basis_phase(p, b) * vb;
        amps[b] = basis_phase(p, q) * vq;
    }
}

void apply_pauli_rotation(std::span<cplx> amps, const PauliString &p,
                          double angle) {
    std::vector<cplx> tmp(amps.begin(), amps.end());
    apply_pauli_string(tmp, p);
    const double c = std::cos(angle);
    const cplx is{0.0, std::sin(angle)};
    for (std::size_t b = 0; b < amps.size(); ++b) {
        amps[b] = c * amps[b] + is * tmp[b];
    }
}

StateVector evaluate(const Circuit &c, std::span<const double> params) {
    check_params(c, params);
    auto psi = StateVector::basis(c.qubit_count(), c.initial_bits());
    apply_range(psi.amplitudes(), c, params, 0,
                static_cast<int>(c.gates().size()));
    return psi;
}

StateVector evaluate_shifted(const Circuit &c, std::span<const double> params,
                             const TermShift &shift) {
    check_params(c, params);
    const auto gates = c.gates();
    require(shift.gate >= 0 && shift.gate < static_cast<int>(gates.size()),
            Errc::invalid_argument, "shifted gate index out of range");
    const auto &g = gates[static_cast<std::size_t>(shift.gate)];
    require(shift.term >= 0 &&
                shift.term < static_cast<int>(g.generator.size()),
            Errc::invalid_argument, "shifted term index out of range");
    auto psi = StateVector::basis(c.qubit_count(), c.initial_bits());
    auto amps = psi.amplitudes();
    apply_range(amps, c, params, 0, shift.gate);
    const double value = params[static_cast<std::size_t>(g.param_index)];
    if (g.generator.size() == 1) {
        apply_gate_inplace(amps, c.qubit_count(), g, value + shift.offset);
    } else {
        for (int t = 0; t < static_cast<int>(g.generator.size()); ++t) {
            const auto &term = g.generator[static_cast<std::size_t>(t)];
            const double v = value + (t == shift.term ? shift.offset : 0.0);
            apply_pauli_rotation(amps, term.string, term.sign * v);
        }
    }
    apply_range(amps, c, params, shift.gate + 1,
                static_cast<int>(gates.size()));
    return psi;
}

StateVector derivative_state(const Circuit &c, std::span<const double> params,
                             int k) {
    check_params(c, params);
    const auto bound = c.gates_of(k);
    const int n_gates = static_cast<int>(c.gates().size());
    StateVector total(c.qubit_count());
    total[0] = 0.0;
    std::vector<cplx> scratch;
    for (const int gi : bound) {
        auto psi = StateVector::basis(c.qubit_count(), c.initial_bits());
        apply_range(psi.amplitudes(), c, params, 0, gi + 1);
        StateVector d(c.qubit_count());
        generator_insertion(c.gates()[static_cast<std::size_t>(gi)],
                            psi.amplitudes(), d.amplitudes(), scratch);
        apply_range(d.amplitudes(), c, params, gi + 1, n_gates);
        for (std::size_t b = 0; b < total.dimension(); ++b) {
            total[b] += d[b];
        }
    }
    return total;
}

DerivativeBundle derivative_states(const Circuit &c,
                                   std::span<const double> params) {
    check_params(c, params);
    const int qubits = c.qubit_count();
    const auto gates = c.gates();
    const std::size_t dim = std::size_t{1} << qubits;
    const auto n_gates = static_cast<Eigen::Index>(gates.size());
    const auto rows = static_cast<Eigen::Index>(dim);

    auto psi = StateVector::basis(qubits, c.initial_bits());
    Eigen::MatrixXcd per_gate(rows, n_gates);
    Eigen::VectorXcd phases(rows);
    std::vector<cplx> scratch;
    Eigen::Index active = 0;

    for (const auto &[begin, end] : c.blocks()) {
        bool diagonal = true;
        for (int gi = begin; gi < end; ++gi) {
            diagonal = diagonal && gates[static_cast<std::size_t>(gi)].is_diagonal();
        }
        if (diagonal) {
            phases.setOnes();
            std::span<cplx> ph(phases.data(), dim);
            apply_range(ph, c, params, begin, end);
            if (active > 0) {
                per_gate.leftCols(active).array().colwise() *= phases.array();
            }
            auto amps = psi.amplitudes();
            for (std::size_t b = 0; b < dim; ++b) {
                amps[b] *= phases[static_cast<Eigen::Index>(b)];
            }
        } else {
            for (Eigen::Index j = 0; j < active; ++j) {
                std::span<cplx> col(per_gate.col(j).data(), dim);
                apply_range(col, c, params, begin, end);
            }
            apply_range(psi.amplitudes(), c, params, begin, end);
        }
        // Gates in a commuting block can all be moved to its end, so the
        // insertion point for each of them is the state after the block.
        for (int gi = begin; gi < end; ++gi) {
            std::span<cplx> col(per_gate.col(gi).data(), dim);
            generator_insertion(gates[static_cast<std::size_t>(gi)],
                                psi.amplitudes(), col, scratch);
        }
        active = end;
    }

    DerivativeBundle out{std::move(psi),
                         Eigen::MatrixXcd::Zero(rows, c.parameter_count())};
    for (Eigen::Index gi = 0; gi < n_gates; ++gi) {
        out.columns.col(gates[static_cast<std::size_t>(gi)].param_index) +=
            per_gate.col(gi);
    }
    return out;
}

} // namespace rvqite
