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
 * Analytic resource models under a CNOT + arbitrary single-qubit gate set:
 * circuit depths, distinct-circuit counts, and total shot counts.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "notrap/error.hpp"
#include "notrap/estimators.hpp"
#include "notrap/pauli.hpp"

namespace notrap {

struct DepthConstants {
    static constexpr int d_toff = 11;
    static constexpr int d_cr = 4;
};

/// Published constants for the 1-local operator, which do not follow from
/// the general formulas at k = 1 (those give 5 and 16).
inline constexpr int kQuotedIbeDepthLocal = 8;
inline constexpr int kQuotedVqlsDepthLocal = 8;

/// Modified Ibe (short-depth) circuit: 5 + 4(k - 1).
inline std::int64_t depth_ibe(std::int64_t k) {
    detail::require(k >= 1, "depth_ibe: locality must be >= 1");
    return 4 * k + 1;
}

/// Hadamard-test VQLS circuit: 4(k-1) Toffolis plus 4k controlled rotations.
inline std::int64_t depth_vqls(std::int64_t k) {
    detail::require(k >= 1, "depth_vqls: locality must be >= 1");
    return 4 * (k - 1) * DepthConstants::d_toff + 4 * k * DepthConstants::d_cr;
}

/// One product-formula step: a CNOT ladder template of depth 4w per term.
inline std::int64_t depth_trotter_template(const PauliOperator &op) {
    std::int64_t d = 0;
    for (const auto &t : op.terms()) {
        d += 4 * static_cast<std::int64_t>(weight(t.string));
    }
    return d;
}

inline std::int64_t locality(const PauliOperator &op) {
    return static_cast<std::int64_t>(op.max_weight());
}

inline std::uint64_t count_circuits_sd(std::uint64_t n_p) {
    detail::require(n_p >= 1, "count_circuits_sd: n_p must be >= 1");
    return (3 * n_p * n_p - n_p) / 2;
}

inline std::uint64_t count_circuits_hd(std::uint64_t n_tau) {
    detail::require(n_tau >= 1, "count_circuits_hd: n_tau must be >= 1");
    return 2 * n_tau;
}

inline std::uint64_t count_circuits_t(std::uint64_t n_g, std::uint64_t n_tau) {
    detail::require(n_g >= 1 && n_tau >= 1,
                    "count_circuits_t: arguments must be >= 1");
    return n_tau * (n_g * n_g + n_g);
}

/// Number of distinct W terms, N_P + 3/2 (N_P - 1) N_P, as a real.
inline double n_w_sd(double n_p) { return n_p + 1.5 * (n_p - 1.0) * n_p; }

/// N_P + (N_P - 1) N_P / 2 for the Hadamard-test objective.
inline double n_w_vqls(double n_p) { return n_p + 0.5 * (n_p - 1.0) * n_p; }

/**
 * Closed-form total shots for the short-depth method with Var = 1:
 * N_W / eps^2 * (sum_k (2g_k^2 - sum_{l<k} g_k g_l)^2
 *               + sum_k sum_{l<k} 9 g_k^2 g_l^2).
 */
inline double shots_sd(std::span<const double> g, double eps_q) {
    detail::require(eps_q > 0.0, "shots_sd: eps_q must be positive");
    double s = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        double c = 2.0 * g[k] * g[k];
        double cross = 0.0;
        for (std::size_t l = 0; l < k; ++l) {
            c -= g[k] * g[l];
            cross += 9.0 * g[k] * g[k] * g[l] * g[l];
        }
        s += c * c + cross;
    }
    return n_w_sd(static_cast<double>(g.size())) * s / (eps_q * eps_q);
}

/// Equal-weight (g = 1) polynomial form of shots_sd.
inline double shots_sd_equal_weights(std::uint64_t n_p, double eps_q) {
    detail::require(eps_q > 0.0, "shots_sd: eps_q must be positive");
    const double n = static_cast<double>(n_p);
    const double bracket = n * (2.0 * n * n - 15.0 * n + 37.0) / 6.0 +
                           4.5 * n * (n - 1.0);
    return n_w_sd(n) * bracket / (eps_q * eps_q);
}

inline double shots_vqls(std::span<const double> g, double eps_q) {
    detail::require(eps_q > 0.0, "shots_vqls: eps_q must be positive");
    double s = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        s += std::pow(g[k], 4);
        for (std::size_t l = 0; l < k; ++l) {
            s += 2.0 * g[k] * g[k] * g[l] * g[l];
        }
    }
    return n_w_vqls(static_cast<double>(g.size())) * s / (eps_q * eps_q);
}

/**
 * Short-depth shots from actual W probabilities: every W term gets an equal
 * share eps^2 / N_W of the variance budget, so
 * n_i = N_W (dQ/dW_i)^2 Var_i / eps^2, rounded up (min 1). The derivatives
 * follow the pairwise reconstruction.
 */
inline double shots_sd_from_terms(const SDTermSet &w, std::span<const double> g,
                                  double eps_q,
                                  VarianceModel variance =
                                      VarianceModel::Bernoulli) {
    detail::require(eps_q > 0.0, "shots_sd: eps_q must be positive");
    if (g.size() != w.n_terms) {
        throw SizeMismatch("shots_sd_from_terms: coefficient count does not "
                           "match term count");
    }
    const double n_w = static_cast<double>(w.circuit_count());
    const double scale = n_w / (eps_q * eps_q);
    auto var_of = [variance](double p) {
        return variance == VarianceModel::UpperBound ? 1.0 : p * (1.0 - p);
    };
    auto shots = [&](double deriv, double p) {
        return std::max(1.0, std::ceil(scale * deriv * deriv * var_of(p)));
    };
    double total_g = 0.0;
    for (double x : g) {
        total_g += x;
    }
    double n = 0.0;
    for (std::size_t k = 0; k < w.n_terms; ++k) {
        // g_k^2 - g_k sum_{l != k} g_l
        const double d1 = g[k] * g[k] - g[k] * (total_g - g[k]);
        n += shots(d1, w.w1[k]);
        for (std::size_t l = 0; l < k; ++l) {
            const std::size_t p = SDTermSet::pair(k, l);
            const double gg = g[k] * g[l];
            n += shots(2.0 * gg, w.w2[p]);
            n += shots(2.0 * gg, w.w3[p]);
            n += shots(gg, w.w4[p]);
        }
    }
    return n;
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InvalidArgument("loglog_slope: need matching samples, at least 2");
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// Depth of one grouped circuit: the deepest pair of group templates.
inline std::int64_t depth_grouped(const PauliOperator &op,
                                  const TermGrouping &grouping) {
    std::vector<std::int64_t> d;
    for (const auto &s : grouping.groups) {
        d.push_back(depth_trotter_template(op.subset(s)));
    }
    std::sort(d.rbegin(), d.rend());
    return d.size() == 1 ? d[0] : d[0] + d[1];
}

struct ResourceReport {
    std::string method;
    std::int64_t depth = 0;
    /// Published constant where one exists, otherwise equal to depth.
    std::int64_t depth_quoted = 0;
    std::uint64_t circuit_count = 0;
    /// NaN when no closed form exists (HD and T need a simulated budget).
    double shots_total = std::numeric_limits<double>::quiet_NaN();
    double eps_q = 0.0;
    /// eps_q / |A|^2, an order-of-magnitude relative error.
    double eta = 0.0;
    double norm_sq = 0.0;
};

/**
 * Reports for the short-depth, Hadamard-test, exponentiation and grouped
 * methods on one operator. Depths use the operator's own locality (the
 * orthogonalization ancilla is not counted).
 */
inline std::vector<ResourceReport>
resource_reports(const PauliOperator &op, double eps_q, double norm,
                 std::uint64_t n_tau, std::uint64_t n_g,
                 bool quoted_local_constants) {
    const std::vector<double> g = op.coefficients();
    const auto n_p = static_cast<std::uint64_t>(op.size());
    const std::int64_t k = locality(op);
    const double nsq = norm * norm;
    std::vector<ResourceReport> out;

    ResourceReport sd{"sd", depth_ibe(k), depth_ibe(k), count_circuits_sd(n_p),
                      shots_sd(g, eps_q), eps_q, eps_q / nsq, nsq};
    ResourceReport vq{"vqls", depth_vqls(k), depth_vqls(k),
                      n_p + n_p * (n_p - 1) / 2, shots_vqls(g, eps_q), eps_q,
                      eps_q / nsq, nsq};
    if (quoted_local_constants) {
        sd.depth_quoted = kQuotedIbeDepthLocal;
        vq.depth_quoted = kQuotedVqlsDepthLocal;
    }
    out.push_back(sd);
    out.push_back(vq);

    ResourceReport hd;
    hd.method = "hd";
    hd.depth = hd.depth_quoted = depth_trotter_template(op);
    hd.circuit_count = count_circuits_hd(n_tau);
    hd.eps_q = eps_q;
    hd.eta = eps_q / nsq;
    hd.norm_sq = nsq;
    out.push_back(hd);

    ResourceReport t = hd;
    t.method = "t";
    t.depth = t.depth_quoted = depth_grouped(op, group_terms(op, n_g));
    t.circuit_count = count_circuits_t(n_g, n_tau);
    out.push_back(t);
    return out;
}

struct ParetoPoint {
    std::string method;
    std::uint64_t n_tau = 0;
    std::uint64_t n_g = 0;
    std::int64_t depth = 0;
    std::uint64_t circuit_count = 0;
};

/**
 * (depth, distinct circuits) for the short-depth method, the exponentiation
 * method at each n_tau, and the grouped method with N_G swept from N_P down
 * to 1 at each n_tau.
 */
inline std::vector<ParetoPoint> pareto_front(const PauliOperator &op,
                                             std::span<const std::uint64_t> n_taus) {
    std::vector<ParetoPoint> out;
    const auto n_p = static_cast<std::uint64_t>(op.size());
    out.push_back({"sd", 0, 0, depth_ibe(locality(op)), count_circuits_sd(n_p)});
    for (std::uint64_t nt : n_taus) {
        out.push_back({"hd", nt, 0, depth_trotter_template(op),
                       count_circuits_hd(nt)});
        for (std::uint64_t ng = n_p; ng >= 1; --ng) {
            out.push_back({"t", nt, ng, depth_grouped(op, group_terms(op, ng)),
                           count_circuits_t(ng, nt)});
        }
    }
    return out;
}

} // namespace notrap
