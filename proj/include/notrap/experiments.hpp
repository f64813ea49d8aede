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
 * Experiment drivers behind the command-line tool. Each driver returns
 * typed records plus a Table view with a fixed CSV header; every row carries
 * (seed, config_hash, version). Drivers are single-threaded and emit rows in
 * a fixed nested-loop order, so equal configs give byte-identical CSV.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "notrap/apps.hpp"
#include "notrap/error.hpp"
#include "notrap/estimators.hpp"
#include "notrap/io.hpp"
#include "notrap/resources.hpp"
#include "notrap/version.hpp"

namespace notrap::experiments {

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline std::string fmt(double v) {
    if (std::isnan(v)) {
        return "";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt(std::optional<double> v) { return v ? fmt(*v) : ""; }

inline std::string fmt(std::uint64_t v) { return std::to_string(v); }
inline std::string fmt(std::int64_t v) { return std::to_string(v); }
inline std::string fmt(int v) { return std::to_string(v); }
inline std::string fmt(bool v) { return v ? "1" : "0"; }
inline std::string fmt(const std::string &v) { return v; }
inline std::string fmt(const char *v) { return v; }

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string config_hash(const std::string &canonical) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(canonical)));
    return buf;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write(std::ostream &out) const {
        auto line = [&out](const std::vector<std::string> &cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i > 0) {
                    out << ',';
                }
                out << cells[i];
            }
            out << '\n';
        };
        line(header);
        for (const auto &r : rows) {
            line(r);
        }
    }

    [[nodiscard]] std::string str() const {
        std::ostringstream s;
        write(s);
        return s.str();
    }
};

inline double median(std::vector<double> v) {
    if (v.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline double rel_error(double est, double exact) {
    return std::abs(est - exact) / std::abs(exact);
}

/// Operators small enough for the dense oracle column.
inline constexpr std::size_t kOracleQubits = 10;

namespace detail {
inline std::string join(const std::vector<double> &v) {
    std::string s;
    for (double x : v) {
        s += (s.empty() ? "" : " ") + fmt(x);
    }
    return s;
}
template <class T> inline std::string join_int(const std::vector<T> &v) {
    std::string s;
    for (const auto &x : v) {
        s += (s.empty() ? "" : " ") + std::to_string(x);
    }
    return s;
}
inline ExpMode parse_mode(const std::string &m) {
    if (m == "exact") {
        return ExpMode::Exact;
    }
    if (m == "trotter1") {
        return ExpMode::Trotter1;
    }
    throw InvalidArgument("unknown mode '" + m + "' (expected exact or trotter1)");
}
} // namespace detail

// ---------------------------------------------------------------------------
// estimate
// ---------------------------------------------------------------------------

struct EstimateConfig {
    /// aloc | anonloc | random | file
    std::string op = "aloc";
    std::string op_file;
    std::size_t n_q = 4;
    /// Term count for op = random.
    std::size_t n_p = 4;
    /// haar (independent a, b) | zero (a = |0..0>, Haar b) | same (a = b) |
    /// fig4 | file
    std::string states = "haar";
    std::string a_file;
    std::string b_file;
    std::string method = "sd";
    std::optional<std::size_t> n_tau;
    std::optional<std::size_t> n_g;
    std::optional<double> tau1;
    /// default (tau1-based) | paper (centred on 1/|A|)
    std::string grid = "default";
    std::string mode = "exact";
    /// Shots per circuit; 0 means infinite.
    std::uint64_t shots = 0;
    /// Absolute error budget for hd; shots are then allocated by the budget.
    std::optional<double> eps;
    std::uint64_t seed = 1;
    std::size_t instances = 1;

    [[nodiscard]] std::string canonical() const {
        std::ostringstream s;
        s << "estimate;op=" << op << ";op_file=" << op_file << ";nq=" << n_q
          << ";np=" << n_p << ";states=" << states << ";a=" << a_file
          << ";b=" << b_file << ";method=" << method
          << ";ntau=" << (n_tau ? std::to_string(*n_tau) : "")
          << ";ng=" << (n_g ? std::to_string(*n_g) : "")
          << ";tau1=" << fmt(tau1) << ";grid=" << grid << ";mode=" << mode
          << ";shots=" << shots << ";eps=" << fmt(eps) << ";seed=" << seed
          << ";instances=" << instances;
        return s.str();
    }

    /// Throws InvalidArgument with an actionable message.
    void validate() const {
        const Method m = parse_method(method);
        if (m != Method::T && n_g) {
            throw InvalidArgument("--ng applies only to --method t");
        }
        if (m == Method::SD && (n_tau || tau1 || grid != "default" ||
                                mode != "exact")) {
            throw InvalidArgument("--ntau, --tau1, --grid and --mode apply "
                                  "only to --method hd or t");
        }
        if (eps && m != Method::HD) {
            throw InvalidArgument("--eps applies only to --method hd");
        }
        if (eps && shots != 0) {
            throw InvalidArgument("--eps and --shots are mutually exclusive");
        }
        if (eps && !(*eps > 0.0)) {
            throw InvalidArgument("--eps must be positive");
        }
        if (grid != "default" && grid != "paper") {
            throw InvalidArgument("--grid must be default or paper");
        }
        if (grid == "paper" && tau1) {
            throw InvalidArgument("--tau1 cannot be combined with --grid paper");
        }
        if (tau1 && !(*tau1 > 0.0)) {
            throw InvalidArgument("--tau1 must be positive");
        }
        if (n_tau && *n_tau < 2) {
            throw InvalidArgument("--ntau must be >= 2");
        }
        (void)detail::parse_mode(mode);
        if (op != "aloc" && op != "anonloc" && op != "random" && op != "file") {
            throw InvalidArgument("--op must be aloc, anonloc, random or file");
        }
        if (op == "file" && op_file.empty()) {
            throw InvalidArgument("--op file needs --op-file");
        }
        if (states != "haar" && states != "zero" && states != "same" &&
            states != "fig4" && states != "file") {
            throw InvalidArgument(
                "--states must be haar, zero, same, fig4 or file");
        }
        if (states == "file" && (a_file.empty() || b_file.empty())) {
            throw InvalidArgument("--states file needs --a-file and --b-file");
        }
        if (states == "fig4" && op != "anonloc") {
            throw InvalidArgument("--states fig4 is defined for --op anonloc");
        }
        if (op != "file" && states != "file" && (n_q < 1 || n_q > 24)) {
            throw InvalidArgument("--nq must lie in [1, 24]");
        }
        if (instances < 1) {
            throw InvalidArgument("--instances must be >= 1");
        }
    }
};

struct EstimateRecord {
    std::uint64_t seed = 0;
    std::size_t instance = 0;
    std::string method;
    std::size_t n_q = 0;
    std::size_t n_p = 0;
    std::optional<double> n_tau;
    std::optional<double> n_g;
    std::optional<double> tau1;
    std::optional<double> shots;
    double estimate = 0.0;
    std::optional<double> oracle;
    std::uint64_t circuit_count = 0;
    std::int64_t depth = 0;
};

struct EstimateResult {
    std::vector<EstimateRecord> records;
    Table table;
};

inline EstimateResult run_estimate(const EstimateConfig &cfg) {
    cfg.validate();
    const Method method = parse_method(cfg.method);
    const ExpMode mode = detail::parse_mode(cfg.mode);
    const std::string hash = config_hash(cfg.canonical());
    EstimateResult res;
    res.table.header = {"seed",      "instance", "method",        "n_q",
                        "n_p",       "n_tau",    "n_g",           "tau1",
                        "shots",     "estimate", "oracle",        "abs_error",
                        "rel_error", "circuit_count", "depth",    "config_hash",
                        "version"};
    for (std::size_t inst = 0; inst < cfg.instances; ++inst) {
        const std::uint64_t iseed = derive_seed(cfg.seed, inst);
        PauliOperator op;
        if (cfg.op == "aloc") {
            op = build_a_loc(cfg.n_q);
        } else if (cfg.op == "anonloc") {
            op = build_a_nonloc(cfg.n_q);
        } else if (cfg.op == "random") {
            op = random_pauli_operator(cfg.n_q, cfg.n_p, derive_seed(iseed, 0));
        } else {
            op = io::read_operator_file(cfg.op_file);
        }
        const std::size_t nq = op.n_qubits();
        std::optional<StatePair> st;
        if (cfg.states == "fig4") {
            st = fig4_states(nq);
        } else if (cfg.states == "file") {
            st = StatePair{io::read_amplitude_file(cfg.a_file),
                           io::read_amplitude_file(cfg.b_file)};
        } else {
            StateVector b = haar_state(nq, derive_seed(iseed, 2));
            StateVector a = cfg.states == "zero"   ? StateVector::basis(nq, 0)
                            : cfg.states == "same" ? b
                                  : haar_state(nq, derive_seed(iseed, 1));
            st = StatePair{std::move(a), std::move(b)};
        }
        if (st->a.n_qubits() != nq || st->b.n_qubits() != nq) {
            throw InvalidArgument("states and operator act on different "
                                  "qubit counts");
        }

        EstimateRecord r;
        r.seed = iseed;
        r.instance = inst;
        r.method = cfg.method;
        r.n_q = nq;
        r.n_p = op.size();
        if (nq <= kOracleQubits) {
            r.oracle = transition_probability_dense(st->a, st->b, op);
        } else if (cfg.states == "fig4") {
            r.oracle = 0.5;
        }
        std::optional<ShotPlan> shots;
        if (cfg.shots > 0) {
            shots = ShotPlan{cfg.shots, derive_seed(iseed, 3)};
            r.shots = static_cast<double>(cfg.shots);
        }

        if (method == Method::SD) {
            const Estimate e = sd_estimate(st->a, st->b, op, shots);
            r.estimate = e.value;
            r.circuit_count = e.circuits;
            r.depth = depth_ibe(locality(op));
        } else {
            const std::size_t nt = cfg.n_tau.value_or(3);
            std::vector<double> taus;
            if (cfg.grid == "paper") {
                taus = centered_tau_grid(nt, spectral_norm(op));
            } else {
                taus = default_tau_grid(
                    nt, cfg.tau1 ? *cfg.tau1 : 0.2 / spectral_norm(op));
            }
            r.n_tau = static_cast<double>(nt);
            r.tau1 = *std::max_element(taus.begin(), taus.end());
            const OrthogonalizedProblem prob = orthogonalize(st->a, st->b, op);
            if (method == Method::HD && cfg.eps) {
                if (!r.oracle) {
                    throw InvalidArgument("--eps needs a reference value: use "
                                          "n_q <= 10 or --states fig4");
                }
                const auto samples =
                    hd_estimate_orthogonalized(prob, taus, mode).samples;
                const HDShotBudget budget =
                    evaluate_hd_budget(samples, *cfg.eps, *r.oracle);
                if (!budget.feasible) {
                    throw InfeasibleBudget(
                        "extrapolation error " + fmt(budget.eps_extrap) +
                            " already exceeds --eps " + fmt(*cfg.eps) +
                            "; lower --tau1 or raise --ntau",
                        budget.eps_extrap);
                }
                std::vector<double> f(taus.size(), 0.0);
                std::uint64_t circuit = 0;
                for (const auto &al : budget.allocations) {
                    f[al.tau_index] +=
                        sample(al.probability, al.shots,
                               derive_seed(derive_seed(iseed, 3), circuit++))
                            .estimate;
                }
                r.estimate = richardson_solve(taus, f).q_prime;
                r.shots = budget.n_total;
                r.circuit_count = count_circuits_hd(nt);
                r.depth = depth_trotter_template(op);
            } else if (method == Method::HD) {
                const HDEstimate e =
                    hd_estimate_orthogonalized(prob, taus, mode, shots);
                r.estimate = e.value;
                r.circuit_count = e.circuits;
                r.depth = depth_trotter_template(op);
            } else {
                const std::size_t ng = cfg.n_g.value_or(1);
                if (ng > op.size()) {
                    throw InvalidArgument("--ng exceeds the operator's term "
                                          "count " + std::to_string(op.size()));
                }
                const TermGrouping g = group_terms(prob.op_dot, ng);
                const TEstimate e = t_estimate_orthogonalized(prob, g, taus, shots);
                r.n_g = static_cast<double>(ng);
                r.estimate = e.value;
                r.circuit_count = e.circuits;
                r.depth = depth_grouped(op, group_terms(op, ng));
            }
        }

        std::optional<double> abs_err;
        std::optional<double> rel_err;
        if (r.oracle) {
            abs_err = std::abs(r.estimate - *r.oracle);
            if (*r.oracle != 0.0) {
                rel_err = *abs_err / std::abs(*r.oracle);
            }
        }
        res.table.rows.push_back(
            {fmt(r.seed), fmt(static_cast<std::uint64_t>(r.instance)), r.method,
             fmt(static_cast<std::uint64_t>(r.n_q)),
             fmt(static_cast<std::uint64_t>(r.n_p)), fmt(r.n_tau), fmt(r.n_g),
             fmt(r.tau1), fmt(r.shots), fmt(r.estimate), fmt(r.oracle),
             fmt(abs_err), fmt(rel_err), fmt(r.circuit_count), fmt(r.depth),
             hash, kVersion});
        res.records.push_back(std::move(r));
    }
    return res;
}

// ---------------------------------------------------------------------------
// fig3: extrapolation error against n_tau
// ---------------------------------------------------------------------------

struct Fig3Config {
    std::vector<std::string> families{"aloc", "nap", "phe"};
    std::vector<std::size_t> n_q{4, 6, 8, 10};
    std::size_t seeds = 20;
    std::size_t n_tau_min = 2;
    std::size_t n_tau_max = 5;
    std::vector<std::string> modes{"exact", "trotter1"};
    /// Excited-state indices for the vibronic families.
    std::vector<std::size_t> levels{0, 1, 2, 3, 4, 5, 6, 7};
    std::string nap_file;
    std::string phe_file;
    std::uint64_t seed = 3;

    [[nodiscard]] std::string canonical() const {
        std::ostringstream s;
        s << "fig3;families=";
        for (const auto &f : families) {
            s << f << ' ';
        }
        s << ";nq=" << detail::join_int(n_q) << ";seeds=" << seeds
          << ";ntau=" << n_tau_min << '-' << n_tau_max << ";modes=";
        for (const auto &m : modes) {
            s << m << ' ';
        }
        s << ";levels=" << detail::join_int(levels) << ";nap=" << nap_file
          << ";phe=" << phe_file << ";seed=" << seed;
        return s.str();
    }
};

struct Fig3Record {
    std::string family;
    std::size_t n_q = 0;
    /// Seed index (aloc) or excited-state index (vibronic).
    std::size_t instance = 0;
    std::uint64_t seed = 0;
    std::string mode;
    std::size_t n_tau = 0;
    double tau_min = 0.0;
    double tau_max = 0.0;
    double estimate = 0.0;
    double oracle = 0.0;
    double rel_error = 0.0;
};

struct Fig3Result {
    std::vector<Fig3Record> records;
    Table table;
    /// Truncation warnings for the vibronic families.
    std::vector<std::string> warnings;

    /// Median relative error of one (family, n_q, mode, n_tau) cell; n_q = 0
    /// pools all qubit counts.
    [[nodiscard]] double median_error(const std::string &family, std::size_t n_q,
                                      const std::string &mode,
                                      std::size_t n_tau) const {
        std::vector<double> e;
        for (const auto &r : records) {
            if (r.family == family && (n_q == 0 || r.n_q == n_q) &&
                r.mode == mode && r.n_tau == n_tau) {
                e.push_back(r.rel_error);
            }
        }
        return median(e);
    }
};

namespace detail {
struct Fig3Instance {
    StateVector a;
    StateVector b;
    double oracle;
    std::size_t index;
    std::uint64_t seed;
};

inline void fig3_family(const Fig3Config &cfg, const std::string &family,
                        std::size_t n_q, const PauliOperator &op,
                        const std::vector<Fig3Instance> &instances,
                        std::vector<Fig3Record> &out) {
    const double norm = spectral_norm(op);
    std::optional<SpectralPropagator> prop;
    for (const auto &m : cfg.modes) {
        const ExpMode mode = parse_mode(m);
        for (const auto &inst : instances) {
            const OrthogonalizedProblem prob = orthogonalize(inst.a, inst.b, op);
            if (mode == ExpMode::Exact && !prop &&
                prob.n_qubits() <= kSpectralQubits) {
                prop.emplace(prob.op_dot);
            }
            for (std::size_t nt = cfg.n_tau_min; nt <= cfg.n_tau_max; ++nt) {
                const auto taus = centered_tau_grid(nt, norm);
                const HDEstimate e = hd_estimate_orthogonalized(
                    prob, taus, mode, std::nullopt,
                    mode == ExpMode::Exact && prop ? &*prop : nullptr);
                out.push_back({family, n_q, inst.index, inst.seed, m, nt,
                               taus.front(), taus.back(), e.value, inst.oracle,
                               rel_error(e.value, inst.oracle)});
            }
        }
    }
}
} // namespace detail

/**
 * aloc: <0..0| A_loc |psi_R> with Haar psi_R; nap/phe: <psi_0| mu |psi'_N>.
 * Grid: n_tau points centred on 1/|A| with spacing 0.1/|A|.
 */
inline Fig3Result run_fig3(const Fig3Config &cfg) {
    if (cfg.n_tau_min < 2 || cfg.n_tau_max < cfg.n_tau_min) {
        throw InvalidArgument("fig3: need 2 <= ntau-min <= ntau-max");
    }
    if (cfg.seeds < 1) {
        throw InvalidArgument("fig3: --seeds must be >= 1");
    }
    const std::string hash = config_hash(cfg.canonical());
    Fig3Result res;
    for (const auto &fam : cfg.families) {
        if (fam == "aloc") {
            for (std::size_t nq : cfg.n_q) {
                if (nq < 1 || nq > 16) {
                    throw InvalidArgument("fig3: n_q must lie in [1, 16]");
                }
                const PauliOperator op = build_a_loc(nq);
                std::vector<detail::Fig3Instance> inst;
                for (std::size_t s = 0; s < cfg.seeds; ++s) {
                    const std::uint64_t seed = derive_seed(cfg.seed, nq * 1000 + s);
                    StateVector a = StateVector::basis(nq, 0);
                    StateVector b = haar_state(nq, seed);
                    const double q = std::norm(transition_amplitude(a, b, op));
                    inst.push_back({std::move(a), std::move(b), q, s, seed});
                }
                detail::fig3_family(cfg, fam, nq, op, inst, res.records);
            }
        } else if (fam == "nap" || fam == "phe") {
            const std::string &file = fam == "nap" ? cfg.nap_file : cfg.phe_file;
            const DuschinskyModel model =
                !file.empty() ? io::read_model_file(file)
                              : (fam == "nap" ? naphthalene() : phenanthrene());
            const VibronicSystem sys = build_vibronic(model);
            std::vector<detail::Fig3Instance> inst;
            for (std::size_t n : cfg.levels) {
                if (n >= sys.dim()) {
                    throw InvalidArgument("fig3: level index out of range");
                }
                if (sys.leaks(n)) {
                    res.warnings.push_back(fam + "{" + std::to_string(n) +
                                           "}: truncation leakage " +
                                           fmt(sys.leakage(n)));
                }
                inst.push_back({sys.ground_state(0), sys.excited_state(n),
                                sys.transition(n), n, cfg.seed});
            }
            detail::fig3_family(cfg, fam, sys.n_qubits, sys.mu_op, inst,
                                res.records);
        } else {
            throw InvalidArgument("fig3: unknown family '" + fam +
                                  "' (expected aloc, nap or phe)");
        }
    }
    res.table.header = {"family",   "n_q",     "instance", "seed",
                        "mode",     "n_tau",   "tau_min",  "tau_max",
                        "estimate", "oracle",  "rel_error", "config_hash",
                        "version"};
    for (const auto &r : res.records) {
        res.table.rows.push_back(
            {r.family, fmt(static_cast<std::uint64_t>(r.n_q)),
             fmt(static_cast<std::uint64_t>(r.instance)), fmt(r.seed), r.mode,
             fmt(static_cast<std::uint64_t>(r.n_tau)), fmt(r.tau_min),
             fmt(r.tau_max), fmt(r.estimate), fmt(r.oracle), fmt(r.rel_error),
             hash, kVersion});
    }
    return res;
}

// ---------------------------------------------------------------------------
// fig4: shot counts
// ---------------------------------------------------------------------------

struct Fig4Config {
    std::size_t n_q_left = 16;
    double tau_lo = 0.10;
    double tau_hi = 0.60;
    double tau_step = 0.01;
    std::size_t n_q_min = 10;
    std::size_t n_q_max = 21;
    std::vector<double> tau1_right{0.25, 0.30, 0.35};
    /// Total error budget relative to Q (Q = 1/2 for these states).
    double eps_rel = 0.01;
    bool left = true;
    bool right = true;

    [[nodiscard]] std::string canonical() const {
        std::ostringstream s;
        s << "fig4;left_nq=" << n_q_left << ";tau=" << fmt(tau_lo) << ':'
          << fmt(tau_step) << ':' << fmt(tau_hi) << ";nq=" << n_q_min << '-'
          << n_q_max << ";tau1=" << detail::join(tau1_right)
          << ";eps_rel=" << fmt(eps_rel) << ";panels=" << left << right;
        return s.str();
    }
};

struct Fig4Record {
    std::string panel;
    std::size_t n_q = 0;
    /// Empty for sd rows of the left panel (none are emitted there).
    std::optional<double> tau1;
    /// hd | sd
    std::string method;
    /// bernoulli (p(1-p)) | bound (Var = 1; for sd the closed form)
    std::string variance;
    double eps_target = 0.0;
    std::optional<double> eps_extrap;
    std::optional<double> eps_meas;
    std::optional<double> n_total;
    bool feasible = true;
};

struct Fig4Result {
    std::vector<Fig4Record> records;
    Table table;

    /// tau1 minimizing feasible left-panel n_total for one variance model.
    [[nodiscard]] std::optional<double>
    argmin_tau1(const std::string &variance = "bernoulli") const {
        std::optional<double> best_tau;
        double best = std::numeric_limits<double>::infinity();
        for (const auto &r : records) {
            if (r.panel == "left" && r.method == "hd" && r.variance == variance &&
                r.feasible && *r.n_total < best) {
                best = *r.n_total;
                best_tau = r.tau1;
            }
        }
        return best_tau;
    }

    /// Smallest right-panel n_q where hd needs fewer shots than sd.
    [[nodiscard]] std::optional<std::size_t>
    crossover(double tau1, const std::string &variance = "bernoulli") const {
        for (std::size_t n = 0; n < 64; ++n) {
            std::optional<double> hd;
            std::optional<double> sd;
            for (const auto &r : records) {
                if (r.panel != "right" || r.n_q != n || r.variance != variance ||
                    !r.tau1 || std::abs(*r.tau1 - tau1) > 1e-9) {
                    continue;
                }
                if (r.method == "hd" && r.feasible) {
                    hd = r.n_total;
                } else if (r.method == "sd") {
                    sd = r.n_total;
                }
            }
            if (hd && sd && *hd < *sd) {
                return n;
            }
        }
        return std::nullopt;
    }
};

namespace detail {
inline std::vector<double> tau_range(double lo, double hi, double step) {
    if (!(step > 0.0) || !(lo > 0.0) || hi < lo) {
        throw InvalidArgument("fig4: need 0 < tau-lo <= tau-hi and step > 0");
    }
    std::vector<double> out;
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) {
        // Round to 1e-12 so the grid prints cleanly.
        out.push_back(std::round((lo + static_cast<double>(i) * step) * 1e12) /
                      1e12);
    }
    return out;
}

inline Fig4Record hd_row(const std::string &panel, std::size_t n_q,
                         double tau1, const OverlapMoments &m, double eps,
                         VarianceModel vm) {
    const auto taus = default_tau_grid(2, tau1);
    std::vector<FSample> s;
    for (double t : taus) {
        s.push_back({t, m.probability(t, +1), m.probability(t, -1)});
    }
    const HDShotBudget b = evaluate_hd_budget(s, eps, 0.5, vm);
    Fig4Record r{panel, n_q, tau1, "hd",
                 vm == VarianceModel::Bernoulli ? "bernoulli" : "bound",
                 eps, b.eps_extrap, std::nullopt, std::nullopt, b.feasible};
    if (b.feasible) {
        r.eps_meas = b.eps_meas;
        r.n_total = b.n_total;
    }
    return r;
}
} // namespace detail

/**
 * A_nonloc with the Q = 1/2 states, n_tau = 2 at {tau1/sqrt2, tau1}, total
 * budget eps = eps_rel * Q. HD rows split eps into the exact extrapolation
 * error and measurement error; SD rows put all of eps into measurement.
 */
inline Fig4Result run_fig4(const Fig4Config &cfg) {
    if (cfg.n_q_min < 3 || cfg.n_q_max > 21 || cfg.n_q_min > cfg.n_q_max ||
        cfg.n_q_left < 3 || cfg.n_q_left > 21) {
        throw InvalidArgument("fig4: qubit counts must lie in [3, 21]");
    }
    if (!(cfg.eps_rel > 0.0)) {
        throw InvalidArgument("fig4: --eps-rel must be positive");
    }
    const double eps = cfg.eps_rel * 0.5;
    const std::string hash = config_hash(cfg.canonical());
    Fig4Result res;

    if (cfg.left) {
        const auto grid = detail::tau_range(cfg.tau_lo, cfg.tau_hi, cfg.tau_step);
        const auto [a, b] = fig4_states(cfg.n_q_left);
        const auto prob = orthogonalize(a, b, build_a_nonloc(cfg.n_q_left));
        const OverlapMoments m(prob.a_dot, prob.b_dot, prob.op_dot, grid.back());
        for (auto vm : {VarianceModel::Bernoulli, VarianceModel::UpperBound}) {
            for (double t : grid) {
                res.records.push_back(
                    detail::hd_row("left", cfg.n_q_left, t, m, eps, vm));
            }
        }
    }
    if (cfg.right) {
        if (cfg.tau1_right.empty()) {
            throw InvalidArgument("fig4: need at least one --tau1 value");
        }
        const double tmax =
            *std::max_element(cfg.tau1_right.begin(), cfg.tau1_right.end());
        for (std::size_t n = cfg.n_q_min; n <= cfg.n_q_max; ++n) {
            const auto [a, b] = fig4_states(n);
            const auto prob = orthogonalize(a, b, build_a_nonloc(n));
            const OverlapMoments m(prob.a_dot, prob.b_dot, prob.op_dot, tmax);
            const SDTermSet w = sd_w_terms(prob);
            const auto g = prob.op_dot.coefficients();
            const double sd_b = shots_sd_from_terms(w, g, eps);
            const double sd_cf = shots_sd(g, eps);
            for (double t : cfg.tau1_right) {
                for (auto vm : {VarianceModel::Bernoulli, VarianceModel::UpperBound}) {
                    res.records.push_back(detail::hd_row("right", n, t, m, eps, vm));
                }
                res.records.push_back({"right", n, t, "sd", "bernoulli", eps, 0.0,
                                       eps, sd_b, true});
                res.records.push_back({"right", n, t, "sd", "bound", eps, 0.0,
                                       eps, sd_cf, true});
            }
        }
    }
    res.table.header = {"panel",      "n_q",      "tau1",     "method",
                        "variance",   "eps_target", "eps_extrap", "eps_meas",
                        "n_total",    "feasible", "seed",     "config_hash",
                        "version"};
    for (const auto &r : res.records) {
        res.table.rows.push_back(
            {r.panel, fmt(static_cast<std::uint64_t>(r.n_q)), fmt(r.tau1),
             r.method, r.variance, fmt(r.eps_target), fmt(r.eps_extrap),
             fmt(r.eps_meas), fmt(r.n_total), fmt(r.feasible), "0", hash,
             kVersion});
    }
    return res;
}

// ---------------------------------------------------------------------------
// fig5: tensor-train linear-systems objective
// ---------------------------------------------------------------------------

struct TrainShape {
    std::size_t d_local;
    std::size_t n_train;
};

struct Fig5Config {
    std::vector<TrainShape> shapes{{2, 2}, {2, 4}, {2, 6}, {2, 8},
                                   {4, 2}, {4, 3}, {4, 4}, {8, 2}};
    std::size_t seeds = 20;
    std::size_t n_tau_min = 2;
    std::size_t n_tau_max = 5;
    std::uint64_t seed = 5;

    [[nodiscard]] std::string canonical() const {
        std::ostringstream s;
        s << "fig5;shapes=";
        for (const auto &t : shapes) {
            s << t.d_local << 'x' << t.n_train << ' ';
        }
        s << ";seeds=" << seeds << ";ntau=" << n_tau_min << '-' << n_tau_max
          << ";seed=" << seed;
        return s.str();
    }
};

struct Fig5Record {
    std::size_t d_local = 0;
    std::size_t n_train = 0;
    std::size_t n_q = 0;
    std::size_t instance = 0;
    std::uint64_t seed = 0;
    std::size_t n_tau = 0;
    double estimate = 0.0;
    double oracle = 0.0;
    double rel_error = 0.0;
};

struct Fig5Result {
    std::vector<Fig5Record> records;
    Table table;

    [[nodiscard]] double median_error(std::size_t d, std::size_t n_train,
                                      std::size_t n_tau) const {
        std::vector<double> e;
        for (const auto &r : records) {
            if (r.d_local == d && r.n_train == n_train && r.n_tau == n_tau) {
                e.push_back(r.rel_error);
            }
        }
        return median(e);
    }
};

/// |<x|A|0..0>|^2 for Haar x, paper grid centred on 1/|A|.
inline Fig5Result run_fig5(const Fig5Config &cfg) {
    if (cfg.n_tau_min < 2 || cfg.n_tau_max < cfg.n_tau_min) {
        throw InvalidArgument("fig5: need 2 <= ntau-min <= ntau-max");
    }
    const std::string hash = config_hash(cfg.canonical());
    Fig5Result res;
    for (const auto &sh : cfg.shapes) {
        const std::uint64_t op_seed =
            derive_seed(cfg.seed, sh.d_local * 1000 + sh.n_train);
        const TensorTrainMatrix tt =
            build_tensor_train(op_seed, sh.n_train, sh.d_local);
        const std::size_t nq = tt.n_qubits();
        if (nq > 8) {
            throw InvalidArgument("fig5: shapes are limited to 8 qubits");
        }
        const double norm = spectral_norm(tt.op);
        const StateVector b = StateVector::basis(nq, 0);
        const SpectralPropagator prop(orthogonalize(b, b, tt.op).op_dot);
        for (std::size_t s = 0; s < cfg.seeds; ++s) {
            const std::uint64_t xs = derive_seed(op_seed, s + 1);
            const StateVector x = haar_state(nq, xs);
            const double q = transition_probability_dense(x, b, tt.op);
            const auto prob = orthogonalize(x, b, tt.op);
            for (std::size_t nt = cfg.n_tau_min; nt <= cfg.n_tau_max; ++nt) {
                const HDEstimate e = hd_estimate_orthogonalized(
                    prob, centered_tau_grid(nt, norm), ExpMode::Exact,
                    std::nullopt, &prop);
                res.records.push_back({sh.d_local, sh.n_train, nq, s, xs, nt,
                                       e.value, q, rel_error(e.value, q)});
            }
        }
    }
    res.table.header = {"d_local", "n_train", "n_q",       "instance",
                        "seed",    "n_tau",   "estimate",  "oracle",
                        "rel_error", "config_hash", "version"};
    for (const auto &r : res.records) {
        res.table.rows.push_back(
            {fmt(static_cast<std::uint64_t>(r.d_local)),
             fmt(static_cast<std::uint64_t>(r.n_train)),
             fmt(static_cast<std::uint64_t>(r.n_q)),
             fmt(static_cast<std::uint64_t>(r.instance)), fmt(r.seed),
             fmt(static_cast<std::uint64_t>(r.n_tau)), fmt(r.estimate),
             fmt(r.oracle), fmt(r.rel_error), hash, kVersion});
    }
    return res;
}

// ---------------------------------------------------------------------------
// pareto and resources
// ---------------------------------------------------------------------------

struct ParetoConfig {
    std::vector<std::string> ops{"aloc", "anonloc"};
    std::size_t n_q = 10;
    std::vector<std::uint64_t> n_taus{2, 3};

    [[nodiscard]] std::string canonical() const {
        std::ostringstream s;
        s << "pareto;ops=";
        for (const auto &o : ops) {
            s << o << ' ';
        }
        s << ";nq=" << n_q << ";ntau=" << detail::join_int(n_taus);
        return s.str();
    }
};

inline PauliOperator builtin_operator(const std::string &name, std::size_t n_q) {
    if (name == "aloc") {
        return build_a_loc(n_q);
    }
    if (name == "anonloc") {
        return build_a_nonloc(n_q);
    }
    throw InvalidArgument("unknown operator '" + name +
                          "' (expected aloc or anonloc)");
}

struct ParetoRecord {
    std::string op;
    std::size_t n_q = 0;
    ParetoPoint point;
};

struct ParetoResult {
    std::vector<ParetoRecord> records;
    Table table;
};

inline ParetoResult run_pareto(const ParetoConfig &cfg) {
    if (cfg.n_q < 2) {
        throw InvalidArgument("pareto: --nq must be >= 2");
    }
    const std::string hash = config_hash(cfg.canonical());
    ParetoResult res;
    for (const auto &name : cfg.ops) {
        const PauliOperator op = builtin_operator(name, cfg.n_q);
        for (const auto &p : pareto_front(op, cfg.n_taus)) {
            res.records.push_back({name, cfg.n_q, p});
        }
    }
    res.table.header = {"operator", "n_q",   "method",        "n_tau", "n_g",
                        "depth",    "circuit_count", "seed",  "config_hash",
                        "version"};
    for (const auto &r : res.records) {
        const auto &p = r.point;
        res.table.rows.push_back(
            {r.op, fmt(static_cast<std::uint64_t>(r.n_q)), p.method,
             p.n_tau ? fmt(p.n_tau) : "", p.n_g ? fmt(p.n_g) : "", fmt(p.depth),
             fmt(p.circuit_count), "0", hash, kVersion});
    }
    return res;
}

struct ResourcesConfig {
    std::vector<std::string> ops{"aloc", "anonloc"};
    std::vector<std::size_t> n_q{4, 8, 12, 16, 20};
    double eps = 0.01;
    std::uint64_t n_tau = 2;
    std::optional<std::uint64_t> n_g;

    [[nodiscard]] std::string canonical() const {
        std::ostringstream s;
        s << "resources;ops=";
        for (const auto &o : ops) {
            s << o << ' ';
        }
        s << ";nq=" << detail::join_int(n_q) << ";eps=" << fmt(eps)
          << ";ntau=" << n_tau << ";ng=" << (n_g ? std::to_string(*n_g) : "");
        return s.str();
    }
};

/**
 * One row per (operator, n_q, method). |A| is measured (dense up to 10
 * qubits, power iteration above) and reported as norm_sq next to eta.
 */
inline Table run_resources(const ResourcesConfig &cfg) {
    if (!(cfg.eps > 0.0)) {
        throw InvalidArgument("resources: --eps must be positive");
    }
    const std::string hash = config_hash(cfg.canonical());
    Table t;
    t.header = {"operator", "n_q",      "n_p",       "method",  "depth",
                "depth_quoted", "circuit_count", "eps_q", "shots_total",
                "norm_sq",  "eta",      "seed",      "config_hash", "version"};
    for (const auto &name : cfg.ops) {
        for (std::size_t nq : cfg.n_q) {
            if (nq < 2 || nq > 24) {
                throw InvalidArgument("resources: n_q must lie in [2, 24]");
            }
            const PauliOperator op = builtin_operator(name, nq);
            const double norm = spectral_norm(op);
            const std::uint64_t ng = std::min<std::uint64_t>(
                cfg.n_g.value_or(2), op.size());
            for (const auto &r :
                 resource_reports(op, cfg.eps, norm, cfg.n_tau, ng,
                                  name == "aloc")) {
                t.rows.push_back(
                    {name, fmt(static_cast<std::uint64_t>(nq)),
                     fmt(static_cast<std::uint64_t>(op.size())), r.method,
                     fmt(r.depth), fmt(r.depth_quoted), fmt(r.circuit_count),
                     fmt(r.eps_q), fmt(r.shots_total), fmt(r.norm_sq),
                     fmt(r.eta), "0", hash, kVersion});
            }
        }
    }
    return t;
}

} // namespace notrap::experiments
