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

#include "rvqite/pauli.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "rvqite/error.hpp"

namespace rvqite {

namespace {

constexpr std::array<cplx, 4> kIPow{cplx{1, 0}, cplx{0, 1}, cplx{-1, 0},
                                    cplx{0, -1}};

// Single-site code: 0 = I, 1 = X, 2 = Y, 3 = Z.
int site_code(const PauliString &p, int site) {
    const bool xb = (p.x >> site) & 1U;
    const bool zb = (p.z >> site) & 1U;
    if (xb && zb) {
        return 2;
    }
    if (xb) {
        return 1;
    }
    return zb ? 3 : 0;
}

struct SiteProduct {
    int code;
    int phase;
};

// kSiteTable[a][b] = a * b.
constexpr std::array<std::array<SiteProduct, 4>, 4> kSiteTable{{
    {{{0, 0}, {1, 0}, {2, 0}, {3, 0}}},
    {{{1, 0}, {0, 0}, {3, 1}, {2, 3}}},
    {{{2, 0}, {3, 3}, {0, 0}, {1, 1}}},
    {{{3, 0}, {2, 1}, {1, 3}, {0, 0}}},
}};

void check_sites(const PauliString &p, int qubits) {
    require(p.max_site() < qubits, Errc::invalid_argument,
            "Pauli term acts on a site beyond qubit_count");
}

void check_state(const PauliSum &s, const StateVector &psi) {
    require(s.qubit_count() == psi.qubit_count(), Errc::dimension_mismatch,
            "Pauli sum and state have different qubit counts");
}

PauliSum from_complex(int qubits, const detail::ComplexTerms &terms,
                      double drop_tol) {
    PauliSum out(qubits);
    for (const auto &[str, c] : terms) {
        if (std::abs(c) < drop_tol) {
            continue;
        }
        require(std::abs(c.imag()) < drop_tol, Errc::invalid_argument,
                "operator product has imaginary coefficients");
        out.add(c.real(), str);
    }
    return out;
}

char axis_char(Axis a) {
    switch (a) {
    case Axis::X:
        return 'X';
    case Axis::Y:
        return 'Y';
    case Axis::Z:
        return 'Z';
    }
    return '?';
}

} // namespace

PauliString PauliString::single(int site, Axis axis) {
    require(site >= 0 && site < kMaxPauliSites, Errc::invalid_argument,
            "Pauli site out of range");
    const std::uint64_t bit = std::uint64_t{1} << site;
    PauliString p;
    if (axis == Axis::X || axis == Axis::Y) {
        p.x = bit;
    }
    if (axis == Axis::Z || axis == Axis::Y) {
        p.z = bit;
    }
    return p;
}

PauliString
PauliString::from_factors(std::span<const std::pair<int, Axis>> factors) {
    PauliString p;
    int last = -1;
    for (const auto &[site, axis] : factors) {
        require(site > last, Errc::invalid_argument,
                "Pauli factors must have strictly increasing sites");
        const auto s = single(site, axis);
        p.x |= s.x;
        p.z |= s.z;
        last = site;
    }
    return p;
}

int PauliString::max_site() const noexcept {
    const std::uint64_t s = support();
    return s == 0 ? -1 : 63 - std::countl_zero(s);
}

bool PauliString::commutes_with(const PauliString &o) const noexcept {
    return (std::popcount((x & o.z) ^ (z & o.x)) & 1) == 0;
}

std::vector<std::pair<int, Axis>> PauliString::factors() const {
    std::vector<std::pair<int, Axis>> out;
    std::uint64_t s = support();
    while (s != 0) {
        const int site = std::countr_zero(s);
        s &= s - 1;
        out.emplace_back(site, static_cast<Axis>(site_code(*this, site)));
    }
    return out;
}

PauliProduct multiply(const PauliString &a, const PauliString &b) {
    PauliProduct out;
    std::uint64_t s = a.support() | b.support();
    while (s != 0) {
        const int site = std::countr_zero(s);
        s &= s - 1;
        const auto r = kSiteTable[site_code(a, site)][site_code(b, site)];
        out.phase = (out.phase + r.phase) & 3;
        if (r.code != 0) {
            const auto f = PauliString::single(site, static_cast<Axis>(r.code));
            out.string.x |= f.x;
            out.string.z |= f.z;
        }
    }
    return out;
}

cplx basis_phase(const PauliString &p, std::uint64_t bits) {
    const int k = std::popcount(p.x & p.z) + 2 * std::popcount(bits & p.z);
    return kIPow[k & 3];
}

PauliTerm::PauliTerm(double c, std::span<const std::pair<int, Axis>> factors)
    : coefficient(c), string(PauliString::from_factors(factors)) {}

PauliSum::PauliSum(int qubit_count) : qubits_(qubit_count) {
    require(qubit_count >= 1 && qubit_count <= kMaxPauliSites,
            Errc::invalid_argument, "PauliSum qubit_count out of range");
}

PauliSum::PauliSum(int qubit_count, std::vector<PauliTerm> terms)
    : PauliSum(qubit_count) {
    for (const auto &t : terms) {
        add(t);
    }
}

PauliSum &PauliSum::add(const PauliTerm &t) {
    check_sites(t.string, qubits_);
    terms_.push_back(t);
    return *this;
}

PauliSum PauliSum::identity(int qubit_count, double c) {
    PauliSum s(qubit_count);
    s.add(c, PauliString{});
    return s;
}

PauliSum simplify(const PauliSum &s, double drop_tol) {
    std::map<PauliString, double> merged;
    for (const auto &t : s.terms()) {
        merged[t.string] += t.coefficient;
    }
    PauliSum out(s.qubit_count());
    for (const auto &[str, c] : merged) {
        if (std::abs(c) >= drop_tol) {
            out.add(c, str);
        }
    }
    return out;
}

PauliSum operator+(const PauliSum &a, const PauliSum &b) {
    require(a.qubit_count() == b.qubit_count(), Errc::dimension_mismatch,
            "PauliSum +: qubit counts differ");
    PauliSum out = a;
    for (const auto &t : b.terms()) {
        out.add(t);
    }
    return out;
}

PauliSum operator*(double c, const PauliSum &a) {
    PauliSum out(a.qubit_count());
    for (const auto &t : a.terms()) {
        out.add(c * t.coefficient, t.string);
    }
    return out;
}

PauliSum operator-(const PauliSum &a, const PauliSum &b) {
    return a + (-1.0) * b;
}

PauliSum product(const PauliSum &a, const PauliSum &b) {
    require(a.qubit_count() == b.qubit_count(), Errc::dimension_mismatch,
            "product: qubit counts differ");
    detail::ComplexTerms acc;
    for (const auto &ta : a.terms()) {
        for (const auto &tb : b.terms()) {
            const auto p = multiply(ta.string, tb.string);
            acc[p.string] += ta.coefficient * tb.coefficient * kIPow[p.phase];
        }
    }
    return from_complex(a.qubit_count(), acc, kDropTolerance);
}

void apply_into(const PauliSum &s, std::span<const cplx> in,
                std::span<cplx> out) {
    const std::size_t dim = std::size_t{1} << s.qubit_count();
    require(in.size() == dim && out.size() == dim, Errc::dimension_mismatch,
            "apply: buffer size does not match 2^N");
    std::fill(out.begin(), out.end(), cplx{0.0, 0.0});
    for (const auto &t : s.terms()) {
        const auto x = t.string.x;
        const auto z = t.string.z;
        const cplx base = t.coefficient * kIPow[std::popcount(x & z) & 3];
        for (std::size_t b = 0; b < dim; ++b) {
            const cplx v = base * in[b];
            out[b ^ x] += (std::popcount(b & z) & 1) ? -v : v;
        }
    }
}

StateVector apply(const PauliSum &s, const StateVector &psi) {
    check_state(s, psi);
    StateVector out(psi.qubit_count());
    apply_into(s, psi.amplitudes(), out.amplitudes());
    return out;
}

double expectation(const PauliSum &s, const StateVector &psi) {
    check_state(s, psi);
    psi.require_normalized();
    const auto amp = psi.amplitudes();
    const std::size_t dim = amp.size();
    cplx total{0.0, 0.0};
    for (const auto &t : s.terms()) {
        const auto x = t.string.x;
        const auto z = t.string.z;
        cplx acc{0.0, 0.0};
        for (std::size_t b = 0; b < dim; ++b) {
            const cplx v = std::conj(amp[b ^ x]) * amp[b];
            acc += (std::popcount(b & z) & 1) ? -v : v;
        }
        total += t.coefficient * kIPow[std::popcount(x & z) & 3] * acc;
    }
    const double scale = std::max(1.0, std::abs(total.real()));
    require(std::abs(total.imag()) < 1e-10 * scale, Errc::invalid_argument,
            "expectation has a non-negligible imaginary part");
    return total.real();
}

Eigen::MatrixXcd to_dense(const PauliSum &s, int max_qubits) {
    require(s.qubit_count() <= max_qubits, Errc::capacity,
            "to_dense: qubit count above the dense cap");
    const std::size_t dim = std::size_t{1} << s.qubit_count();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    for (const auto &t : s.terms()) {
        for (std::size_t b = 0; b < dim; ++b) {
            m(static_cast<Eigen::Index>(b ^ t.string.x),
              static_cast<Eigen::Index>(b)) +=
                t.coefficient * basis_phase(t.string, b);
        }
    }
    return m;
}

namespace detail {

ComplexTerms commutator(const PauliSum &a, const PauliSum &b) {
    require(a.qubit_count() == b.qubit_count(), Errc::dimension_mismatch,
            "commutator: qubit counts differ");
    ComplexTerms acc;
    for (const auto &ta : a.terms()) {
        for (const auto &tb : b.terms()) {
            if (ta.string.commutes_with(tb.string)) {
                continue;
            }
            // Anticommuting strings: [P, Q] = 2PQ.
            const auto p = multiply(ta.string, tb.string);
            acc[p.string] +=
                2.0 * ta.coefficient * tb.coefficient * kIPow[p.phase];
        }
    }
    return acc;
}

} // namespace detail

double commutator_norm(const PauliSum &a, const PauliSum &b) {
    double s = 0.0;
    for (const auto &[str, c] : detail::commutator(a, b)) {
        if (std::abs(c) >= kDropTolerance) {
            s += std::norm(c);
        }
    }
    return std::sqrt(s);
}

std::string to_text(const PauliSum &s) {
    std::string out;
    char buf[64];
    for (const auto &t : s.terms()) {
        std::snprintf(buf, sizeof buf, "%.17g", t.coefficient);
        out += buf;
        out += ' ';
        if (t.string.is_identity()) {
            out += " I";
        }
        for (const auto &[site, axis] : t.string.factors()) {
            out += ' ';
            out += axis_char(axis);
            out += std::to_string(site);
        }
        out += '\n';
    }
    return out;
}

PauliSum from_text(int qubit_count, const std::string &text) {
    PauliSum out(qubit_count);
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream fields(line);
        double c = 0.0;
        if (!(fields >> c)) {
            continue;
        }
        std::vector<std::pair<int, Axis>> factors;
        std::string tok;
        while (fields >> tok) {
            if (tok == "I") {
                continue;
            }
            require(tok.size() >= 2, Errc::invalid_argument,
                    "bad Pauli factor: " + tok);
            Axis axis{};
            switch (tok[0]) {
            case 'X':
                axis = Axis::X;
                break;
            case 'Y':
                axis = Axis::Y;
                break;
            case 'Z':
                axis = Axis::Z;
                break;
            default:
                fail(Errc::invalid_argument, "bad Pauli axis: " + tok);
            }
            factors.emplace_back(std::stoi(tok.substr(1)), axis);
        }
        out.add(PauliTerm(c, factors));
    }
    return out;
}

} // namespace rvqite
