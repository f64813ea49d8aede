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
 * Transition-probability estimators |<a|A|b>|^2 for arbitrary, possibly
 * non-orthogonal, states:
 *
 *  - orthogonalize: ancilla trick making the two input states orthogonal
 *    while preserving <a|A|b>.
 *  - sd_*: short-depth reconstruction from W-term overlap probabilities.
 *  - hd_*: exponentiate the operator at several tau and Richardson-extrapolate
 *    the tau^2 coefficient of f(tau).
 *  - t_*: grouped variant that trades depth for circuit count.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "notrap/error.hpp"
#include "notrap/extrapolation.hpp"
#include "notrap/pauli.hpp"
#include "notrap/sampling.hpp"
#include "notrap/simulator.hpp"
#include "notrap/statevector.hpp"

namespace notrap {

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

/// |<a|A|b>|^2 through the dense matrix (n_q <= 12).
inline double transition_probability_dense(const StateVector &a,
                                           const StateVector &b,
                                           const PauliOperator &op) {
    if (a.n_qubits() != b.n_qubits() || op.n_qubits() != a.n_qubits()) {
        throw SizeMismatch("transition_probability_dense: size mismatch");
    }
    const Eigen::MatrixXcd m = to_dense(op);
    const auto dim = static_cast<Eigen::Index>(a.dim());
    const Eigen::Map<const Eigen::VectorXcd> va(a.amplitudes().data(), dim);
    const Eigen::Map<const Eigen::VectorXcd> vb(b.amplitudes().data(), dim);
    const cplx amp = va.dot(m * vb);
    return std::norm(amp);
}

/// <a|A|b> matrix-free.
inline cplx transition_amplitude(const StateVector &a, const StateVector &b,
                                 const PauliOperator &op) {
    if (a.n_qubits() != b.n_qubits() || op.n_qubits() != a.n_qubits()) {
        throw SizeMismatch("transition_amplitude: size mismatch");
    }
    Amplitudes ab(b.dim());
    kernels::apply_operator(b.span(), ab, op);
    return inner(a.span(), std::span<const cplx>(ab));
}

// ---------------------------------------------------------------------------
// Orthogonalization
// ---------------------------------------------------------------------------

/** |0>|a>, |1>|b> and X (x) A on one extra leading ancilla qubit. */
struct OrthogonalizedProblem {
    StateVector a_dot;
    StateVector b_dot;
    PauliOperator op_dot;

    [[nodiscard]] std::size_t n_qubits() const noexcept {
        return a_dot.n_qubits();
    }
};

inline OrthogonalizedProblem orthogonalize(const StateVector &a,
                                           const StateVector &b,
                                           const PauliOperator &op) {
    if (a.n_qubits() != b.n_qubits() || op.n_qubits() != a.n_qubits()) {
        throw SizeMismatch("orthogonalize: states on " +
                           std::to_string(a.n_qubits()) + " and " +
                           std::to_string(b.n_qubits()) +
                           " qubits, operator on " +
                           std::to_string(op.n_qubits()));
    }
    return {prepend_qubit(a, 0), prepend_qubit(b, 1),
            op.tensor_left(PauliString::from_string("X"))};
}

namespace detail {

/// Probability of one circuit, optionally replaced by a finite-shot estimate.
inline double measure(double p, const std::optional<ShotPlan> &shots,
                      std::uint64_t circuit_index) {
    p = std::clamp(p, 0.0, 1.0);
    if (!shots) {
        return p;
    }
    return sample(p, shots->shots_per_circuit,
                  derive_seed(shots->seed, circuit_index))
        .estimate;
}

/// Packed index of the pair (k, l), l < k.
inline std::size_t pair_index(std::size_t k, std::size_t l) {
    return k * (k - 1) / 2 + l;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Short-depth method
// ---------------------------------------------------------------------------

/**
 * W1_k = |<a|P_k|b>|^2, and for l < k
 * W2_kl = |<a| (I+iP_k)(I+iP_l)/2 |b>|^2, W3_kl with -i, W4_kl = |<a|P_k P_l|b>|^2.
 * Pair quantities are stored packed, see pair().
 */
struct SDTermSet {
    std::size_t n_terms = 0;
    std::vector<double> w1;
    std::vector<double> w2;
    std::vector<double> w3;
    std::vector<double> w4;

    [[nodiscard]] static std::size_t pair(std::size_t k, std::size_t l) {
        return detail::pair_index(k, l);
    }
    [[nodiscard]] std::uint64_t circuit_count() const noexcept {
        return n_terms + 3 * (n_terms * (n_terms - 1) / 2);
    }
};

/**
 * Evaluates every W term as an overlap probability on the orthogonalized
 * problem. (I + iP)/sqrt2 is realized as exp(i pi/4 P). Circuit seeds: W1_k
 * uses index k; pair p = pair(k, l) uses N + 3p, N + 3p + 1, N + 3p + 2 for
 * W2, W3, W4.
 */
inline SDTermSet sd_w_terms(const OrthogonalizedProblem &prob,
                            const std::optional<ShotPlan> &shots = {}) {
    const auto &terms = prob.op_dot.terms();
    const std::size_t n = terms.size();
    SDTermSet w;
    w.n_terms = n;
    w.w1.resize(n);
    const std::size_t n_pairs = n * (n - 1) / 2;
    w.w2.resize(n_pairs);
    w.w3.resize(n_pairs);
    w.w4.resize(n_pairs);
    constexpr double quarter_pi = std::numbers::pi / 4.0;

    for (std::size_t k = 0; k < n; ++k) {
        const StateVector pb = apply_pauli(prob.b_dot, terms[k].string);
        w.w1[k] = detail::measure(overlap_probability(prob.a_dot, pb), shots,
                                  k);
    }
    for (std::size_t k = 0; k < n; ++k) {
        const PauliString &pk = terms[k].string;
        for (std::size_t l = 0; l < k; ++l) {
            const PauliString &pl = terms[l].string;
            const std::size_t p = SDTermSet::pair(k, l);
            const std::uint64_t base = n + 3 * p;
            // exp(-i theta P) with theta = -pi/4 is (I + iP)/sqrt2.
            StateVector v2 = apply_pauli_exponential(prob.b_dot, pl, -quarter_pi);
            v2 = apply_pauli_exponential(std::move(v2), pk, -quarter_pi);
            StateVector v3 = apply_pauli_exponential(prob.b_dot, pl, quarter_pi);
            v3 = apply_pauli_exponential(std::move(v3), pk, quarter_pi);
            const StateVector v4 = apply_pauli(apply_pauli(prob.b_dot, pl), pk);
            w.w2[p] = detail::measure(overlap_probability(prob.a_dot, v2),
                                      shots, base);
            w.w3[p] = detail::measure(overlap_probability(prob.a_dot, v3),
                                      shots, base + 1);
            w.w4[p] = detail::measure(overlap_probability(prob.a_dot, v4),
                                      shots, base + 2);
        }
    }
    return w;
}

enum class SDFormula {
    /// sum_k g_k^2 W1_k + sum_{l<k} g_k g_l (2W2 + 2W3 - W1_k - W1_l - W4).
    Pairwise,
    /**
     * sum_k (g_k^2 - 2 sum_{l<k} g_k g_l) W1_k + sum_{l<k} g_k g_l
     * (2W2 + 2W3 - W4). Agrees with Pairwise only when the W1 cross terms
     * are symmetric (for example equal W1 and equal coefficients).
     */
    Rearranged,
};

inline double sd_reconstruct(const SDTermSet &w, std::span<const double> g,
                             SDFormula formula = SDFormula::Pairwise) {
    if (g.size() != w.n_terms) {
        throw SizeMismatch("sd_reconstruct: coefficient count does not match "
                           "term count");
    }
    double q = 0.0;
    for (std::size_t k = 0; k < w.n_terms; ++k) {
        double c1 = g[k] * g[k];
        if (formula == SDFormula::Rearranged) {
            for (std::size_t l = 0; l < k; ++l) {
                c1 -= 2.0 * g[k] * g[l];
            }
        }
        q += c1 * w.w1[k];
        for (std::size_t l = 0; l < k; ++l) {
            const std::size_t p = SDTermSet::pair(k, l);
            double cross = 2.0 * w.w2[p] + 2.0 * w.w3[p] - w.w4[p];
            if (formula == SDFormula::Pairwise) {
                cross -= w.w1[k] + w.w1[l];
            }
            q += g[k] * g[l] * cross;
        }
    }
    return q;
}

struct Estimate {
    double value = 0.0;
    std::uint64_t circuits = 0;
};

inline Estimate sd_estimate(const StateVector &a, const StateVector &b,
                            const PauliOperator &op,
                            const std::optional<ShotPlan> &shots = {},
                            SDFormula formula = SDFormula::Pairwise) {
    const OrthogonalizedProblem prob = orthogonalize(a, b, op);
    const SDTermSet w = sd_w_terms(prob, shots);
    const std::vector<double> g = prob.op_dot.coefficients();
    return {sd_reconstruct(w, g, formula), w.circuit_count()};
}

// ---------------------------------------------------------------------------
// Exponentiation + extrapolation method
// ---------------------------------------------------------------------------

enum class ExpMode {
    Exact,
    /// One first-order product-formula step.
    Trotter1,
};

/// f(tau) = f_minus + f_plus with f_minus using exp(-i tau A).
struct FSample {
    double tau = 0.0;
    double f_minus = 0.0;
    double f_plus = 0.0;
    [[nodiscard]] double f() const noexcept { return f_minus + f_plus; }
};

namespace detail {
inline StateVector evolve(const StateVector &s, const PauliOperator &a,
                          double tau, int sign, ExpMode mode) {
    return mode == ExpMode::Exact ? exact_exponential(s, a, tau, sign)
                                  : trotter_step(s, a, tau, sign);
}
} // namespace detail

/**
 * Both overlap probabilities |<a|exp(-+i tau A)|b>|^2 on the orthogonalized
 * problem. Circuit seeds: 2 * circuit_base (minus), 2 * circuit_base + 1.
 */
inline FSample hd_f(const OrthogonalizedProblem &prob, double tau,
                    ExpMode mode = ExpMode::Exact,
                    const std::optional<ShotPlan> &shots = {},
                    std::uint64_t circuit_base = 0) {
    if (!(tau > 0.0)) {
        throw InvalidArgument("hd_f: tau must be positive");
    }
    FSample s;
    s.tau = tau;
    s.f_minus = detail::measure(
        overlap_probability(prob.a_dot,
                            detail::evolve(prob.b_dot, prob.op_dot, tau, +1,
                                           mode)),
        shots, 2 * circuit_base);
    s.f_plus = detail::measure(
        overlap_probability(prob.a_dot,
                            detail::evolve(prob.b_dot, prob.op_dot, tau, -1,
                                           mode)),
        shots, 2 * circuit_base + 1);
    return s;
}

struct HDEstimate {
    double value = 0.0;
    std::uint64_t circuits = 0;
    std::vector<FSample> samples;
    ExtrapolationPlan plan;
};

/// Registers at or below this size share one eigendecomposition across tau.
inline constexpr std::size_t kSpectralQubits = 9;

namespace detail {
inline std::vector<FSample> hd_samples(const OrthogonalizedProblem &prob,
                                       std::span<const double> taus,
                                       ExpMode mode,
                                       const std::optional<ShotPlan> &shots,
                                       const SpectralPropagator *cache) {
    std::vector<FSample> out;
    if (mode == ExpMode::Exact &&
        (cache != nullptr || prob.n_qubits() <= kSpectralQubits)) {
        const SpectralOverlap so =
            cache != nullptr
                ? SpectralOverlap(prob.a_dot, prob.b_dot, *cache)
                : SpectralOverlap(prob.a_dot, prob.b_dot, prob.op_dot);
        for (std::size_t i = 0; i < taus.size(); ++i) {
            if (!(taus[i] > 0.0)) {
                throw InvalidArgument("hd_f: tau must be positive");
            }
            out.push_back({taus[i],
                           measure(so.probability(taus[i], +1), shots, 2 * i),
                           measure(so.probability(taus[i], -1), shots,
                                   2 * i + 1)});
        }
        return out;
    }
    for (std::size_t i = 0; i < taus.size(); ++i) {
        out.push_back(hd_f(prob, taus[i], mode, shots, i));
    }
    return out;
}
} // namespace detail

/**
 * `cache`, if given, must be the propagator of prob.op_dot; it replaces the
 * per-call eigendecomposition in exact mode.
 */
inline HDEstimate hd_estimate_orthogonalized(
    const OrthogonalizedProblem &prob, std::span<const double> taus,
    ExpMode mode = ExpMode::Exact, const std::optional<ShotPlan> &shots = {},
    const SpectralPropagator *cache = nullptr) {
    HDEstimate out;
    out.samples = detail::hd_samples(prob, taus, mode, shots, cache);
    std::vector<double> f;
    for (const auto &s : out.samples) {
        f.push_back(s.f());
    }
    out.plan = richardson_solve(taus, f);
    out.value = out.plan.q_prime;
    out.circuits = 2 * taus.size();
    return out;
}

inline HDEstimate hd_estimate(const StateVector &a, const StateVector &b,
                              const PauliOperator &op,
                              std::span<const double> taus,
                              ExpMode mode = ExpMode::Exact,
                              const std::optional<ShotPlan> &shots = {}) {
    return hd_estimate_orthogonalized(orthogonalize(a, b, op), taus, mode,
                                      shots);
}

// ---------------------------------------------------------------------------
// Shot budget for the extrapolation method
// ---------------------------------------------------------------------------

enum class VarianceModel {
    /// Var = p(1 - p) from the infinite-shot probability.
    Bernoulli,
    /// Var = 1, the analytic upper bound.
    UpperBound,
};

struct ShotAllocation {
    std::size_t tau_index = 0;
    int sign = +1; // +1: exp(-i tau A), -1: exp(+i tau A)
    double probability = 0.0;
    std::uint64_t shots = 0;
};

/**
 * Split of an error budget eps_target between extrapolation error (known
 * exactly from the reference value) and measurement error, with per-circuit
 * shots N proportional to V_{0i}^2.
 */
struct HDShotBudget {
    std::vector<double> taus;
    double eps_target = 0.0;
    double q_reference = 0.0;
    double q_prime = 0.0;
    double eps_extrap = 0.0;
    double eps_meas = 0.0;
    /// Measurement error the rounded allocations actually achieve.
    double eps_meas_achieved = 0.0;
    bool feasible = false;
    std::vector<ShotAllocation> allocations;
    double n_total = 0.0;

    [[nodiscard]] double tau1() const { return taus.back(); }
    [[nodiscard]] double tau0() const { return taus.front(); }
};

/**
 * Budget from infinite-shot samples. eps_meas^2 = 1/4 sum_i V_0i^2
 * (Var_i^+ / N_i^+ + Var_i^- / N_i^-) with N = c V_0i^2 gives
 * c = sum Var / (4 eps_meas^2). Allocations are rounded up, minimum 1.
 * Infeasible (feasible = false, no allocations) if eps_extrap >= eps_target.
 */
inline HDShotBudget
evaluate_hd_budget(std::span<const FSample> samples, double eps_target,
                   double q_reference,
                   VarianceModel variance = VarianceModel::Bernoulli) {
    if (!(eps_target > 0.0)) {
        throw InvalidArgument("hd_shot_budget: eps_target must be positive");
    }
    HDShotBudget b;
    std::vector<double> f;
    for (const auto &s : samples) {
        b.taus.push_back(s.tau);
        f.push_back(s.f());
    }
    const ExtrapolationPlan plan = richardson_solve(b.taus, f);
    b.eps_target = eps_target;
    b.q_reference = q_reference;
    b.q_prime = plan.q_prime;
    b.eps_extrap = std::abs(q_reference - plan.q_prime);
    if (b.eps_extrap >= eps_target) {
        b.feasible = false;
        return b;
    }
    b.feasible = true;
    b.eps_meas = eps_target - b.eps_extrap;

    auto var_of = [variance](double p) {
        return variance == VarianceModel::UpperBound ? 1.0 : p * (1.0 - p);
    };
    double var_sum = 0.0;
    for (const auto &s : samples) {
        var_sum += var_of(s.f_minus) + var_of(s.f_plus);
    }
    const double c = var_sum / (4.0 * b.eps_meas * b.eps_meas);
    double achieved = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double v0 = plan.V(0, static_cast<Eigen::Index>(i));
        for (int sign : {+1, -1}) {
            const double p = sign > 0 ? samples[i].f_minus : samples[i].f_plus;
            const double want = std::ceil(c * v0 * v0);
            const auto n = static_cast<std::uint64_t>(std::max(1.0, want));
            b.allocations.push_back({i, sign, p, n});
            b.n_total += static_cast<double>(n);
            achieved += v0 * v0 * var_of(p) / static_cast<double>(n);
        }
    }
    b.eps_meas_achieved = 0.5 * std::sqrt(achieved);
    return b;
}

/// Throws InfeasibleBudget when extrapolation error exhausts the budget.
inline HDShotBudget hd_shot_budget(const OrthogonalizedProblem &prob,
                                   std::span<const double> taus,
                                   double eps_target, double q_reference,
                                   VarianceModel variance =
                                       VarianceModel::Bernoulli) {
    const std::vector<FSample> samples =
        detail::hd_samples(prob, taus, ExpMode::Exact, std::nullopt,
                           nullptr);
    HDShotBudget b = evaluate_hd_budget(samples, eps_target, q_reference,
                                        variance);
    if (!b.feasible) {
        throw InfeasibleBudget("hd_shot_budget: extrapolation error " +
                                   std::to_string(b.eps_extrap) +
                                   " already exceeds budget " +
                                   std::to_string(eps_target),
                               b.eps_extrap);
    }
    return b;
}

/// Two-point form with tau0 = tau1 / sqrt2.
inline HDShotBudget hd_shot_budget(const OrthogonalizedProblem &prob,
                                   double tau1, double eps_target,
                                   double q_reference,
                                   VarianceModel variance =
                                       VarianceModel::Bernoulli) {
    const auto taus = default_tau_grid(2, tau1);
    return hd_shot_budget(prob, taus, eps_target, q_reference, variance);
}

// ---------------------------------------------------------------------------
// Tunable grouped method
// ---------------------------------------------------------------------------

/**
 * S terms at one tau, following the sign labels
 *   S+_u  = |<a|e^{-i tau G_u}|b>|^2,            S-_u with e^{+i tau},
 *   S-_uv = |<a|e^{-i tau G_u} e^{-i tau G_v}|b>|^2, S+_uv with e^{+i tau},
 * with each group exponential done as one first-order product step. Pairs
 * (u, v), v < u, are stored packed.
 */
struct TTermSet {
    double tau = 0.0;
    std::size_t n_groups = 0;
    std::vector<double> s_plus_u;
    std::vector<double> s_minus_u;
    std::vector<double> s_plus_uv;
    std::vector<double> s_minus_uv;

    [[nodiscard]] std::uint64_t circuit_count() const noexcept {
        return n_groups * n_groups + n_groups;
    }
};

inline TTermSet t_terms(const OrthogonalizedProblem &prob,
                        const TermGrouping &grouping, double tau,
                        const std::optional<ShotPlan> &shots = {},
                        std::uint64_t circuit_base = 0) {
    if (!(tau > 0.0)) {
        throw InvalidArgument("t_terms: tau must be positive");
    }
    if (!is_valid_grouping(grouping, prob.op_dot.size())) {
        throw InvalidArgument("t_terms: grouping does not partition the "
                              "operator terms");
    }
    const std::size_t ng = grouping.n_groups();
    std::vector<PauliOperator> groups;
    groups.reserve(ng);
    for (const auto &s : grouping.groups) {
        groups.push_back(prob.op_dot.subset(s));
    }
    TTermSet t;
    t.tau = tau;
    t.n_groups = ng;
    t.s_plus_u.resize(ng);
    t.s_minus_u.resize(ng);
    const std::size_t n_pairs = ng * (ng - 1) / 2;
    t.s_plus_uv.resize(n_pairs);
    t.s_minus_uv.resize(n_pairs);
    std::uint64_t idx = circuit_base;
    for (std::size_t u = 0; u < ng; ++u) {
        t.s_plus_u[u] = detail::measure(
            overlap_probability(prob.a_dot,
                                trotter_step(prob.b_dot, groups[u], tau, +1)),
            shots, idx++);
        t.s_minus_u[u] = detail::measure(
            overlap_probability(prob.a_dot,
                                trotter_step(prob.b_dot, groups[u], tau, -1)),
            shots, idx++);
    }
    for (std::size_t u = 0; u < ng; ++u) {
        for (std::size_t v = 0; v < u; ++v) {
            const std::size_t p = detail::pair_index(u, v);
            const StateVector m =
                trotter_step(trotter_step(prob.b_dot, groups[v], tau, +1),
                             groups[u], tau, +1);
            const StateVector pl =
                trotter_step(trotter_step(prob.b_dot, groups[v], tau, -1),
                             groups[u], tau, -1);
            t.s_minus_uv[p] =
                detail::measure(overlap_probability(prob.a_dot, m), shots,
                                idx++);
            t.s_plus_uv[p] =
                detail::measure(overlap_probability(prob.a_dot, pl), shots,
                                idx++);
        }
    }
    return t;
}

/**
 * Q(tau) = sum_{v<u} (S+_uv + S-_uv) / 2tau^2
 *        - (N_G - 2) sum_u (S+_u + S-_u) / 2tau^2,
 * which equals |<a|A|b>|^2 + O(tau^2).
 */
inline double t_reconstruct(const TTermSet &t) {
    const double inv = 1.0 / (2.0 * t.tau * t.tau);
    double pairs = 0.0;
    for (std::size_t p = 0; p < t.s_plus_uv.size(); ++p) {
        pairs += t.s_plus_uv[p] + t.s_minus_uv[p];
    }
    double singles = 0.0;
    for (std::size_t u = 0; u < t.n_groups; ++u) {
        singles += t.s_plus_u[u] + t.s_minus_u[u];
    }
    const double ng = static_cast<double>(t.n_groups);
    return (pairs - (ng - 2.0) * singles) * inv;
}

struct TEstimate {
    double value = 0.0;
    std::uint64_t circuits = 0;
    /// Q(tau_i) before extrapolation.
    std::vector<double> q_tau;
    ExtrapolationPlan plan;
};

/**
 * Reconstructs Q(tau) on every grid point and extrapolates the ansatz
 * Q(tau) = Q + c_1 tau^2 + ... to tau = 0 (as the tau^2 coefficient of
 * 2 tau^2 Q(tau)).
 */
inline TEstimate t_estimate_orthogonalized(
    const OrthogonalizedProblem &prob, const TermGrouping &grouping,
    std::span<const double> taus, const std::optional<ShotPlan> &shots = {}) {
    TEstimate out;
    std::vector<double> scaled;
    std::uint64_t base = 0;
    for (double tau : taus) {
        const TTermSet t = t_terms(prob, grouping, tau, shots, base);
        base += t.circuit_count();
        out.circuits += t.circuit_count();
        const double q = t_reconstruct(t);
        out.q_tau.push_back(q);
        scaled.push_back(2.0 * tau * tau * q);
    }
    out.plan = richardson_solve(taus, scaled);
    out.value = out.plan.q_prime;
    return out;
}

inline TEstimate t_estimate(const StateVector &a, const StateVector &b,
                            const PauliOperator &op, std::size_t n_groups,
                            std::span<const double> taus,
                            const std::optional<ShotPlan> &shots = {},
                            GroupingStrategy strategy =
                                GroupingStrategy::Contiguous) {
    const OrthogonalizedProblem prob = orthogonalize(a, b, op);
    const TermGrouping grouping = group_terms(prob.op_dot, n_groups, strategy);
    return t_estimate_orthogonalized(prob, grouping, taus, shots);
}

// ---------------------------------------------------------------------------
// Method dispatch
// ---------------------------------------------------------------------------

enum class Method { SD, HD, T };

inline std::string to_string(Method m) {
    switch (m) {
    case Method::SD:
        return "sd";
    case Method::HD:
        return "hd";
    case Method::T:
        return "t";
    }
    return "?";
}

inline Method parse_method(const std::string &s) {
    if (s == "sd") {
        return Method::SD;
    }
    if (s == "hd") {
        return Method::HD;
    }
    if (s == "t") {
        return Method::T;
    }
    throw InvalidArgument("unknown method '" + s + "' (expected sd, hd or t)");
}

/// Everything an estimator needs besides the problem itself.
struct EstimatorConfig {
    Method method = Method::HD;
    /// Used by HD and T.
    std::vector<double> taus;
    ExpMode mode = ExpMode::Exact;
    /// Used by T only.
    std::size_t n_groups = 1;
    GroupingStrategy strategy = GroupingStrategy::Contiguous;
    std::optional<ShotPlan> shots;
    SDFormula sd_formula = SDFormula::Pairwise;
};

inline Estimate estimate(const StateVector &a, const StateVector &b,
                         const PauliOperator &op, const EstimatorConfig &cfg) {
    switch (cfg.method) {
    case Method::SD:
        return sd_estimate(a, b, op, cfg.shots, cfg.sd_formula);
    case Method::HD: {
        const HDEstimate e = hd_estimate(a, b, op, cfg.taus, cfg.mode, cfg.shots);
        return {e.value, e.circuits};
    }
    case Method::T: {
        const TEstimate e = t_estimate(a, b, op, cfg.n_groups, cfg.taus,
                                       cfg.shots, cfg.strategy);
        return {e.value, e.circuits};
    }
    }
    throw InvalidArgument("estimate: unknown method");
}

} // namespace notrap
