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
 * Richardson extrapolation of an even function f(tau) = sum_j K_{2j} tau^{2j}
 * (no constant term) from samples on a tau grid.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "notrap/error.hpp"

namespace notrap {

/**
 * Vandermonde system T c = f with T_ij = tau_i^{2(j+1)} and V = T^{-1}.
 * After a solve, coefficients = (K_2, K_4, ...) and q_prime = K_2 / 2.
 */
struct ExtrapolationPlan {
    std::vector<double> taus;
    Eigen::MatrixXd T;
    Eigen::MatrixXd V;
    double condition = 0.0;
    std::vector<double> coefficients;
    double q_prime = 0.0;

    [[nodiscard]] std::size_t n_tau() const noexcept { return taus.size(); }
};

inline constexpr double kMaxCondition = 1e13;

/// Builds T and V for a grid; no samples needed.
inline ExtrapolationPlan make_plan(std::span<const double> taus) {
    const auto n = static_cast<Eigen::Index>(taus.size());
    if (n < 2) {
        throw InvalidArgument("richardson: need at least 2 tau values");
    }
    std::vector<double> sorted(taus.begin(), taus.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (!(sorted[i] > 0.0)) {
            throw InvalidArgument("richardson: tau values must be positive");
        }
        if (i > 0 && sorted[i] == sorted[i - 1]) {
            throw InvalidArgument("richardson: tau values must be distinct");
        }
    }
    ExtrapolationPlan plan;
    plan.taus.assign(taus.begin(), taus.end());
    // Columns scaled by tau_max^{2(j+1)} for conditioning.
    const double tmax = sorted.back();
    Eigen::MatrixXd ts(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double s2 = (taus[static_cast<std::size_t>(i)] / tmax) *
                          (taus[static_cast<std::size_t>(i)] / tmax);
        double pw = s2;
        for (Eigen::Index j = 0; j < n; ++j) {
            ts(i, j) = pw;
            pw *= s2;
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(ts);
    const auto &sv = svd.singularValues();
    plan.condition = sv(0) / sv(n - 1);
    if (!std::isfinite(plan.condition) || plan.condition > kMaxCondition) {
        throw SingularSystem("richardson: Vandermonde system is singular or "
                             "ill-conditioned (condition estimate " +
                                 std::to_string(plan.condition) + ")",
                             plan.condition);
    }
    const Eigen::MatrixXd vs = ts.fullPivLu().inverse();
    plan.T.resize(n, n);
    plan.V.resize(n, n);
    const double t2 = tmax * tmax;
    double colscale = t2;
    for (Eigen::Index j = 0; j < n; ++j) {
        plan.T.col(j) = ts.col(j) * colscale;
        plan.V.row(j) = vs.row(j) / colscale;
        colscale *= t2;
    }
    return plan;
}

/** Solves for (K_2, ..., K_{2 n_tau}) and Q' = K_2 / 2. */
inline ExtrapolationPlan richardson_solve(std::span<const double> taus,
                                          std::span<const double> f_values) {
    if (taus.size() != f_values.size()) {
        throw SizeMismatch("richardson: " + std::to_string(taus.size()) +
                           " taus but " + std::to_string(f_values.size()) +
                           " samples");
    }
    ExtrapolationPlan plan = make_plan(taus);
    const auto n = static_cast<Eigen::Index>(taus.size());
    const Eigen::Map<const Eigen::VectorXd> f(f_values.data(), n);
    const Eigen::VectorXd c = plan.V * f;
    plan.coefficients.assign(c.data(), c.data() + n);
    plan.q_prime = plan.coefficients[0] / 2.0;
    return plan;
}

/// n = 2: {tau1/sqrt2, tau1}; n > 2: geometric from tau1/2 to tau1.
inline std::vector<double> default_tau_grid(std::size_t n_tau, double tau1) {
    if (n_tau < 2) {
        throw InvalidArgument("tau grid: n_tau must be >= 2");
    }
    if (!(tau1 > 0.0)) {
        throw InvalidArgument("tau grid: tau1 must be positive");
    }
    if (n_tau == 2) {
        return {tau1 / std::sqrt(2.0), tau1};
    }
    std::vector<double> g(n_tau);
    for (std::size_t i = 0; i < n_tau; ++i) {
        const double e = static_cast<double>(n_tau - 1 - i) /
                         static_cast<double>(n_tau - 1);
        g[i] = tau1 * std::pow(0.5, e);
    }
    return g;
}

/// Arithmetic grid centred on 1/|A| with spacing 0.1/|A|.
inline std::vector<double> centered_tau_grid(std::size_t n_tau,
                                             double op_norm) {
    if (n_tau < 2) {
        throw InvalidArgument("tau grid: n_tau must be >= 2");
    }
    if (!(op_norm > 0.0)) {
        throw InvalidArgument("tau grid: operator norm must be positive");
    }
    std::vector<double> g(n_tau);
    const double mid = 0.5 * static_cast<double>(n_tau - 1);
    for (std::size_t i = 0; i < n_tau; ++i) {
        g[i] = (1.0 + 0.1 * (static_cast<double>(i) - mid)) / op_norm;
    }
    return g;
}

} // namespace notrap
