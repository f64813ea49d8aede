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

// Command-line front end: estimate, fig3, fig4, fig5, pareto, resources.
//
// Exit codes: 0 success, 1 internal error, 2 configuration error,
// 3 infeasible shot budget.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "notrap/notrap.hpp"

namespace {

namespace ex = notrap::experiments;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

constexpr const char *kOutputDirEnv = "NOTRAP_OUTPUT_DIR";

/// `key = value` lines become `--key value...` tokens. Keys may use '_' or '-'.
std::vector<std::pair<std::string, std::vector<std::string>>>
read_flat_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw notrap::ParseError("cannot open config file '" + path + "'");
    }
    std::vector<std::pair<std::string, std::vector<std::string>>> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = notrap::io::detail::content(line);
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw notrap::ParseError(path + ":" + std::to_string(lineno) +
                                     ": expected 'key = value'");
        }
        std::string key(notrap::io::detail::trim(body.substr(0, eq)));
        for (auto &c : key) {
            if (c == '_') {
                c = '-';
            }
        }
        std::vector<std::string> vals;
        for (auto t : notrap::io::detail::split_ws(
                 notrap::io::detail::trim(body.substr(eq + 1)))) {
            vals.emplace_back(t);
        }
        out.emplace_back(std::move(key), std::move(vals));
    }
    return out;
}

/**
 * Splices `--config FILE` entries into argv right after the subcommand name,
 * skipping keys that also appear as flags, so flags override the file.
 */
std::vector<std::string> expand_config(const std::vector<std::string> &args) {
    std::optional<std::string> file;
    std::vector<std::string> rest;
    std::set<std::string> given;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string &a = args[i];
        if (a == "--config" && i + 1 < args.size()) {
            file = args[++i];
            continue;
        }
        if (a.rfind("--config=", 0) == 0) {
            file = a.substr(9);
            continue;
        }
        if (a.rfind("--", 0) == 0) {
            given.insert(a.substr(2, a.find('=') - 2));
        }
        rest.push_back(a);
    }
    if (!file || rest.size() < 2) {
        return rest;
    }
    std::vector<std::string> out{rest[0], rest[1]};
    for (const auto &[key, vals] : read_flat_config(*file)) {
        if (given.count(key) != 0) {
            continue;
        }
        if (vals.size() == 1 && (vals[0] == "true" || vals[0] == "false")) {
            if (vals[0] == "true") {
                out.push_back("--" + key);
            }
            continue;
        }
        out.push_back("--" + key);
        out.insert(out.end(), vals.begin(), vals.end());
    }
    out.insert(out.end(), rest.begin() + 2, rest.end());
    return out;
}

void emit(const ex::Table &t, const std::string &out, const std::string &name) {
    std::string path = out;
    if (path.empty()) {
        if (const char *dir = std::getenv(kOutputDirEnv); dir && *dir) {
            path = std::string(dir) + "/" + name + ".csv";
        }
    }
    if (path.empty() || path == "-") {
        t.write(std::cout);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw notrap::InvalidArgument("cannot write '" + path + "'");
    }
    t.write(f);
    std::cerr << "wrote " << t.rows.size() << " rows to " << path << "\n";
}

void add_out(CLI::App *sub, std::string &out) {
    sub->add_option("--out", out,
                    "CSV path ('-' for stdout; default $NOTRAP_OUTPUT_DIR/"
                    "<command>.csv, else stdout)");
    sub->add_option("--config", "flat key = value file mirroring the flags");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Transition-probability estimators and experiment drivers"};
    app.set_version_flag("--version", std::string(notrap::kVersion));
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    std::string out;

    // estimate
    ex::EstimateConfig ec;
    auto *est = app.add_subcommand("estimate", "Estimate |<a|A|b>|^2 for "
                                               "one or more instances");
    est->add_option("--op", ec.op, "aloc | anonloc | random | file");
    est->add_option("--op-file", ec.op_file, "operator file ('<coeff> <string>' per line)");
    est->add_option("--nq", ec.n_q, "qubit count for built-in operators");
    est->add_option("--np", ec.n_p, "term count for --op random");
    est->add_option("--states", ec.states, "haar | zero | same | fig4 | file");
    est->add_option("--a-file", ec.a_file, "amplitudes of |a>");
    est->add_option("--b-file", ec.b_file, "amplitudes of |b>");
    est->add_option("--method", ec.method, "sd | hd | t");
    est->add_option("--ntau", ec.n_tau, "extrapolation points (hd, t; default 3)");
    est->add_option("--ng", ec.n_g, "group count (t only; default 1)");
    est->add_option("--tau1", ec.tau1, "largest tau (default 0.2/|A|)");
    est->add_option("--grid", ec.grid, "default | paper (centred on 1/|A|)");
    est->add_option("--mode", ec.mode, "exact | trotter1");
    est->add_option("--shots", ec.shots, "shots per circuit (0 = infinite)");
    est->add_option("--eps", ec.eps, "absolute error budget (hd): allocate shots");
    est->add_option("--seed", ec.seed, "experiment seed");
    est->add_option("--instances", ec.instances, "number of instances");
    add_out(est, out);

    // fig3
    ex::Fig3Config f3;
    auto *fig3 = app.add_subcommand("fig3", "Extrapolation error against n_tau");
    fig3->add_option("--families", f3.families, "aloc nap phe");
    fig3->add_option("--nq", f3.n_q, "qubit counts for aloc");
    fig3->add_option("--seeds", f3.seeds, "Haar states per qubit count");
    fig3->add_option("--ntau-min", f3.n_tau_min);
    fig3->add_option("--ntau-max", f3.n_tau_max);
    fig3->add_option("--modes", f3.modes, "exact trotter1");
    fig3->add_option("--levels", f3.levels, "excited-state indices N");
    fig3->add_option("--nap-model", f3.nap_file, "model file replacing the built-in nap");
    fig3->add_option("--phe-model", f3.phe_file, "model file replacing the built-in phe");
    fig3->add_option("--seed", f3.seed);
    add_out(fig3, out);

    // fig4
    ex::Fig4Config f4;
    std::string panel = "both";
    auto *fig4 = app.add_subcommand("fig4", "Shot counts for A_nonloc at Q = 1/2");
    fig4->add_option("--nq-left", f4.n_q_left, "qubit count of the tau1 sweep");
    fig4->add_option("--tau-lo", f4.tau_lo);
    fig4->add_option("--tau-hi", f4.tau_hi);
    fig4->add_option("--tau-step", f4.tau_step);
    fig4->add_option("--nq-min", f4.n_q_min);
    fig4->add_option("--nq-max", f4.n_q_max);
    fig4->add_option("--tau1", f4.tau1_right, "tau1 values of the qubit sweep");
    fig4->add_option("--eps-rel", f4.eps_rel, "total error budget relative to Q");
    fig4->add_option("--panel", panel, "left | right | both");
    add_out(fig4, out);

    // fig5
    ex::Fig5Config f5;
    std::vector<std::string> shapes;
    auto *fig5 = app.add_subcommand("fig5", "Tensor-train objective error against n_tau");
    fig5->add_option("--shapes", shapes, "d x n_train pairs, e.g. 2x4 4x2 8x2");
    fig5->add_option("--seeds", f5.seeds, "random x per shape");
    fig5->add_option("--ntau-min", f5.n_tau_min);
    fig5->add_option("--ntau-max", f5.n_tau_max);
    fig5->add_option("--seed", f5.seed);
    add_out(fig5, out);

    // pareto
    ex::ParetoConfig pc;
    auto *par = app.add_subcommand("pareto", "Depth against distinct circuits");
    par->add_option("--ops", pc.ops, "aloc anonloc");
    par->add_option("--nq", pc.n_q);
    par->add_option("--ntau", pc.n_taus);
    add_out(par, out);

    // resources
    ex::ResourcesConfig rc;
    auto *res = app.add_subcommand("resources", "Analytic depth, circuit and shot counts");
    res->add_option("--ops", rc.ops, "aloc anonloc");
    res->add_option("--nq", rc.n_q);
    res->add_option("--eps", rc.eps, "absolute error eps_Q");
    res->add_option("--ntau", rc.n_tau);
    res->add_option("--ng", rc.n_g, "group count for the t row (default 2)");
    add_out(res, out);

    try {
        std::vector<std::string> args(argv, argv + argc);
        args = expand_config(args);
        std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
        app.parse(rev);
    } catch (const CLI::ParseError &e) {
        const int rc_ = app.exit(e);
        return rc_ == 0 ? kExitOk : kExitConfig;
    } catch (const notrap::Error &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (est->parsed()) {
            emit(ex::run_estimate(ec).table, out, "estimate");
        } else if (fig3->parsed()) {
            const auto r = ex::run_fig3(f3);
            for (const auto &w : r.warnings) {
                std::cerr << "warning: " << w << "\n";
            }
            for (const auto &fam : f3.families) {
                for (const auto &m : f3.modes) {
                    std::cerr << fam << " " << m << " median rel error:";
                    for (std::size_t nt = f3.n_tau_min; nt <= f3.n_tau_max; ++nt) {
                        std::cerr << " " << r.median_error(fam, 0, m, nt);
                    }
                    std::cerr << "\n";
                }
            }
            emit(r.table, out, "fig3");
        } else if (fig4->parsed()) {
            if (panel != "left" && panel != "right" && panel != "both") {
                throw notrap::InvalidArgument("--panel must be left, right or both");
            }
            f4.left = panel != "right";
            f4.right = panel != "left";
            const auto r = ex::run_fig4(f4);
            if (f4.left) {
                const auto t = r.argmin_tau1();
                std::cerr << "left panel argmin tau1 (bernoulli): "
                          << (t ? ex::fmt(*t) : "none feasible") << "\n";
            }
            if (f4.right) {
                for (double t : f4.tau1_right) {
                    const auto n = r.crossover(t);
                    std::cerr << "crossover at tau1=" << t << ": "
                              << (n ? std::to_string(*n) : "none") << "\n";
                }
            }
            emit(r.table, out, "fig4");
        } else if (fig5->parsed()) {
            if (!shapes.empty()) {
                f5.shapes.clear();
                for (const auto &s : shapes) {
                    const auto x = s.find('x');
                    if (x == std::string::npos) {
                        throw notrap::InvalidArgument("--shapes entries look like 4x3");
                    }
                    f5.shapes.push_back({std::stoul(s.substr(0, x)),
                                         std::stoul(s.substr(x + 1))});
                }
            }
            emit(ex::run_fig5(f5).table, out, "fig5");
        } else if (par->parsed()) {
            emit(ex::run_pareto(pc).table, out, "pareto");
        } else if (res->parsed()) {
            emit(ex::run_resources(rc), out, "resources");
        }
    } catch (const notrap::InfeasibleBudget &e) {
        std::cerr << "infeasible budget: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const notrap::InvalidArgument &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const notrap::ParseError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const notrap::SizeMismatch &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}
