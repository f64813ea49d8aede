// Copyright 2026 The NOTraP Authors
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

/**
 * @file
 * Text formats: operators (`<coeff> <string>` per line), two-mode vibronic
 * model files (`key = values`), and amplitude files (`re [im]` per line).
 * Blank lines and `#` comments are ignored everywhere.
 */
#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "notrap/apps.hpp"
#include "notrap/error.hpp"
#include "notrap/pauli.hpp"
#include "notrap/statevector.hpp"

namespace notrap::io {

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/// Line without comment, trimmed.
inline std::string_view content(std::string_view line) {
    const auto h = line.find('#');
    return trim(h == std::string_view::npos ? line : line.substr(0, h));
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') {
            ++j;
        }
        if (j > i) {
            out.push_back(s.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

inline double parse_double(std::string_view tok, const std::string &where) {
    double v = 0.0;
    const auto *first = tok.data();
    const auto *last = tok.data() + tok.size();
    if (!tok.empty() && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw ParseError(where + ": cannot parse number '" + std::string(tok) +
                         "'");
    }
    return v;
}

inline std::string location(const std::string &source, std::size_t line) {
    return source + ":" + std::to_string(line);
}

inline std::ifstream open(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    return in;
}

} // namespace detail

/**
 * Reads one term per line. Complex coefficients (anything with i, j or
 * parentheses) are rejected; the operator must be real.
 */
inline PauliOperator parse_operator(std::istream &in,
                                    const std::string &source = "<operator>") {
    std::string line;
    std::size_t lineno = 0;
    std::size_t n_q = 0;
    PauliOperator op;
    bool have = false;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = detail::content(line);
        if (body.empty()) {
            continue;
        }
        const auto where = detail::location(source, lineno);
        const auto tok = detail::split_ws(body);
        if (tok.size() != 2) {
            throw ParseError(where + ": expected '<coeff> <pauli string>'");
        }
        if (tok[0].find_first_of("ijIJ()") != std::string_view::npos) {
            throw ParseError(where + ": coefficient '" + std::string(tok[0]) +
                             "' is not real");
        }
        const double g = detail::parse_double(tok[0], where);
        PauliString p;
        try {
            p = PauliString::from_string(tok[1]);
        } catch (const Error &e) {
            throw ParseError(where + ": " + e.what());
        }
        if (!have) {
            n_q = p.n_qubits();
            op = PauliOperator(n_q);
            have = true;
        } else if (p.n_qubits() != n_q) {
            throw ParseError(where + ": string length " +
                             std::to_string(p.n_qubits()) + " differs from " +
                             std::to_string(n_q));
        }
        op.add(g, p);
    }
    if (!have) {
        throw ParseError(source + ": no operator terms");
    }
    return op;
}

inline PauliOperator parse_operator(const std::string &text) {
    std::istringstream in(text);
    return parse_operator(in);
}

inline PauliOperator read_operator_file(const std::string &path) {
    auto in = detail::open(path);
    return parse_operator(in, path);
}

inline void write_operator(std::ostream &out, const PauliOperator &op) {
    char buf[64];
    for (const auto &t : op.terms()) {
        std::snprintf(buf, sizeof buf, "%.17g", t.coeff);
        out << buf << ' ' << t.string.without_phase().to_string() << '\n';
    }
}

inline std::string format_operator(const PauliOperator &op) {
    std::ostringstream s;
    write_operator(s, op);
    return s.str();
}

/**
 * Keys: name, S (4 values, row-major), d (2), omega_g (2), omega_e (2),
 * mu (3: c_I c_0 c_1), n_levels (optional, default 16). S, d, omega_g,
 * omega_e and mu are required.
 */
inline DuschinskyModel parse_model(std::istream &in,
                                   const std::string &source = "<model>") {
    DuschinskyModel m;
    std::string line;
    std::size_t lineno = 0;
    unsigned seen = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = detail::content(line);
        if (body.empty()) {
            continue;
        }
        const auto where = detail::location(source, lineno);
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(where + ": expected 'key = values'");
        }
        const std::string key(detail::trim(body.substr(0, eq)));
        const auto rest = detail::trim(body.substr(eq + 1));
        if (key == "name") {
            m.name = std::string(rest);
            continue;
        }
        std::vector<double> v;
        for (auto t : detail::split_ws(rest)) {
            v.push_back(detail::parse_double(t, where));
        }
        auto need = [&](std::size_t n) {
            if (v.size() != n) {
                throw ParseError(where + ": key '" + key + "' takes " +
                                 std::to_string(n) + " values, got " +
                                 std::to_string(v.size()));
            }
        };
        if (key == "S") {
            need(4);
            m.S << v[0], v[1], v[2], v[3];
            seen |= 1U;
        } else if (key == "d") {
            need(2);
            m.d << v[0], v[1];
            seen |= 2U;
        } else if (key == "omega_g") {
            need(2);
            m.omega_g << v[0], v[1];
            seen |= 4U;
        } else if (key == "omega_e") {
            need(2);
            m.omega_e << v[0], v[1];
            seen |= 8U;
        } else if (key == "mu") {
            need(3);
            m.mu_coeffs = {v[0], v[1], v[2]};
            seen |= 16U;
        } else if (key == "n_levels") {
            need(1);
            m.n_levels = static_cast<std::size_t>(v[0]);
        } else {
            throw ParseError(where + ": unknown key '" + key + "'");
        }
    }
    if (seen != 31U) {
        throw ParseError(source + ": model needs S, d, omega_g, omega_e and mu");
    }
    return validated(m);
}

inline DuschinskyModel read_model_file(const std::string &path) {
    auto in = detail::open(path);
    return parse_model(in, path);
}

inline void write_model(std::ostream &out, const DuschinskyModel &m) {
    char buf[256];
    out << "name = " << m.name << '\n';
    std::snprintf(buf, sizeof buf, "S = %.17g %.17g %.17g %.17g\n", m.S(0, 0),
                  m.S(0, 1), m.S(1, 0), m.S(1, 1));
    out << buf;
    std::snprintf(buf, sizeof buf, "d = %.17g %.17g\n", m.d(0), m.d(1));
    out << buf;
    std::snprintf(buf, sizeof buf, "omega_g = %.17g %.17g\n", m.omega_g(0),
                  m.omega_g(1));
    out << buf;
    std::snprintf(buf, sizeof buf, "omega_e = %.17g %.17g\n", m.omega_e(0),
                  m.omega_e(1));
    out << buf;
    std::snprintf(buf, sizeof buf, "mu = %.17g %.17g %.17g\n", m.mu_coeffs[0],
                  m.mu_coeffs[1], m.mu_coeffs[2]);
    out << buf;
    out << "n_levels = " << m.n_levels << '\n';
}

/// One amplitude per line, `re` or `re im`; must already be normalized.
inline StateVector parse_amplitudes(std::istream &in,
                                    const std::string &source = "<amplitudes>") {
    Amplitudes v;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = detail::content(line);
        if (body.empty()) {
            continue;
        }
        const auto where = detail::location(source, lineno);
        const auto tok = detail::split_ws(body);
        if (tok.empty() || tok.size() > 2) {
            throw ParseError(where + ": expected 're [im]'");
        }
        const double re = detail::parse_double(tok[0], where);
        const double im = tok.size() == 2 ? detail::parse_double(tok[1], where)
                                          : 0.0;
        v.emplace_back(re, im);
    }
    if (v.empty() || !std::has_single_bit(v.size())) {
        throw ParseError(source + ": amplitude count " +
                         std::to_string(v.size()) + " is not a power of two");
    }
    const auto n = static_cast<std::size_t>(std::countr_zero(v.size()));
    try {
        return StateVector(n, std::move(v));
    } catch (const Error &e) {
        throw ParseError(source + ": " + e.what());
    }
}

inline StateVector read_amplitude_file(const std::string &path) {
    auto in = detail::open(path);
    return parse_amplitudes(in, path);
}

inline void write_amplitudes(std::ostream &out, const StateVector &s) {
    char buf[96];
    for (const auto &c : s.amplitudes()) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", c.real(), c.imag());
        out << buf;
    }
}

} // namespace notrap::io
