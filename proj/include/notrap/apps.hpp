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
 * Problem generators: spin test operators and states, two-mode Duschinsky
 * vibronic models, d-level binary encoding, and random tensor-train matrices.
 */
#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include <Eigen/Dense>

#include "notrap/error.hpp"
#include "notrap/estimators.hpp"
#include "notrap/pauli.hpp"
#include "notrap/statevector.hpp"

namespace notrap {

// ---------------------------------------------------------------------------
// Spin operators
// ---------------------------------------------------------------------------

/// sum_i X_i / sqrt(n).
inline PauliOperator build_a_loc(std::size_t n_q) {
    detail::require(n_q >= 1, "build_a_loc: n_q must be >= 1");
    PauliOperator op(n_q);
    const double g = 1.0 / std::sqrt(static_cast<double>(n_q));
    for (std::size_t i = 0; i < n_q; ++i) {
        PauliString p(n_q);
        p.set(i, 'X');
        op.add(g, p);
    }
    return op;
}

/// sum_i X^{(x) i} I_i X^{(x) n-i-1} / sqrt(n): every term has weight n - 1.
inline PauliOperator build_a_nonloc(std::size_t n_q) {
    detail::require(n_q >= 2, "build_a_nonloc: n_q must be >= 2");
    PauliOperator op(n_q);
    const double g = 1.0 / std::sqrt(static_cast<double>(n_q));
    for (std::size_t i = 0; i < n_q; ++i) {
        PauliString p(n_q);
        for (std::size_t j = 0; j < n_q; ++j) {
            if (j != i) {
                p.set(j, 'X');
            }
        }
        op.add(g, p);
    }
    return op;
}

struct StatePair {
    StateVector a;
    StateVector b;
};

/**
 * a = |0...0>, b = (|0...0> + A_nonloc|0...0>)/sqrt2. A_nonloc|0...0> is a
 * unit vector orthogonal to |0...0>, so |<a|A|b>|^2 = 1/2 and <a|b> = 1/sqrt2.
 */
inline StatePair fig4_states(std::size_t n_q) {
    detail::require(n_q >= 3, "fig4_states: n_q must be >= 3");
    const PauliOperator op = build_a_nonloc(n_q);
    StateVector a = StateVector::basis(n_q, 0);
    Amplitudes ab(a.dim());
    kernels::apply_operator(a.span(), ab, op);
    const double r = 1.0 / std::sqrt(2.0);
    for (auto &c : ab) {
        c *= r;
    }
    ab[0] += r;
    return {std::move(a), StateVector(n_q, std::move(ab))};
}

/// Normalized complex Gaussian amplitudes (Haar-distributed state).
inline StateVector haar_state(std::size_t n_q, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Amplitudes v(std::size_t{1} << n_q);
    for (auto &c : v) {
        const double re = normal(rng);
        const double im = normal(rng);
        c = {re, im};
    }
    return StateVector::normalized(std::move(v));
}

/// n_p distinct random strings with coefficients uniform in [-g_max, g_max].
inline PauliOperator random_pauli_operator(std::size_t n_q, std::size_t n_p,
                                           std::uint64_t seed,
                                           double g_max = 1.0) {
    detail::require(n_q >= 1 && n_q <= 30,
                    "random_pauli_operator: n_q out of range");
    const double space = std::pow(4.0, static_cast<double>(n_q));
    detail::require(static_cast<double>(n_p) <= space,
                    "random_pauli_operator: more terms than distinct strings");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coeff(-g_max, g_max);
    const std::uint64_t mask = PauliString::full_mask(n_q);
    PauliOperator op(n_q);
    std::unordered_set<std::uint64_t> seen;
    while (op.size() < n_p) {
        const std::uint64_t x = rng() & mask;
        const std::uint64_t z = rng() & mask;
        const double g = coeff(rng);
        if (g == 0.0 || !seen.insert((x << 32) ^ z).second) {
            continue;
        }
        op.add(g, PauliString(n_q, x, z));
    }
    return op;
}

// ---------------------------------------------------------------------------
// d-level encoding
// ---------------------------------------------------------------------------

/// Smallest k with 2^k >= d.
inline std::size_t qubits_for_levels(std::size_t d) {
    detail::require(d >= 1, "encode_dlevel: need at least one level");
    return static_cast<std::size_t>(std::bit_width(d - 1));
}

/**
 * Hermitian d x d matrix to a PauliOperator on ceil(log2 d) qubits by
 * zero-padding and exact Pauli projection (standard binary level labels).
 */
inline PauliOperator encode_dlevel(const Eigen::MatrixXcd &m, double tol = 1e-14) {
    if (m.rows() != m.cols()) {
        throw InvalidArgument("encode_dlevel: matrix is not square");
    }
    const auto d = static_cast<std::size_t>(m.rows());
    const std::size_t k = std::max<std::size_t>(1, qubits_for_levels(d));
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << k);
    Eigen::MatrixXcd padded = Eigen::MatrixXcd::Zero(dim, dim);
    padded.topLeftCorner(m.rows(), m.cols()) = m;
    return to_pauli_operator(padded, tol);
}

// ---------------------------------------------------------------------------
// Vibronic models
// ---------------------------------------------------------------------------

/**
 * Two-mode displaced, distorted and rotated harmonic surfaces, q' = S q + d,
 * with transition operator mu = c_I + c_0 q_0 + c_1 q_1 in ground coordinates.
 * Frequencies are in cm^-1; d is dimensionless in excited-surface units.
 */
struct DuschinskyModel {
    std::string name;
    Eigen::Matrix2d S = Eigen::Matrix2d::Identity();
    Eigen::Vector2d d = Eigen::Vector2d::Zero();
    Eigen::Vector2d omega_g = Eigen::Vector2d::Ones();
    Eigen::Vector2d omega_e = Eigen::Vector2d::Ones();
    std::array<double, 3> mu_coeffs{1.0, 0.0, 0.0};
    std::size_t n_levels = 16;
};

/// Published rotation matrices are orthogonal only to about 1e-3.
inline constexpr double kDuschinskyOrthoTolerance = 1e-3;

/// |S^T S - I|_max.
inline double orthogonality_defect(const Eigen::Matrix2d &s) {
    return (s.transpose() * s - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
}

/**
 * Checks the model and replaces S by its nearest orthogonal matrix (polar
 * factor). Throws if S is further than kDuschinskyOrthoTolerance from
 * orthogonal or a frequency is not positive.
 */
inline DuschinskyModel validated(DuschinskyModel m) {
    if (!(m.omega_g.minCoeff() > 0.0 && m.omega_e.minCoeff() > 0.0)) {
        throw InvalidArgument("Duschinsky model '" + m.name +
                              "': frequencies must be positive");
    }
    detail::require(m.n_levels >= 2 && std::has_single_bit(m.n_levels),
                    "Duschinsky model: n_levels must be a power of two");
    const double defect = orthogonality_defect(m.S);
    if (!(defect < kDuschinskyOrthoTolerance)) {
        throw InvalidArgument("Duschinsky model '" + m.name +
                              "': S is not orthogonal (|S^T S - I| = " +
                              std::to_string(defect) + ")");
    }
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(m.S, Eigen::ComputeFullU |
                                                   Eigen::ComputeFullV);
    m.S = svd.matrixU() * svd.matrixV().transpose();
    return m;
}

inline DuschinskyModel naphthalene() {
    DuschinskyModel m;
    m.name = "nap";
    m.S << 0.98, -0.20, 0.20, 0.98;
    m.omega_g << 509.0, 938.0;
    m.omega_e << 438.0, 912.0;
    m.d << 0.0, 0.0;
    m.mu_coeffs = {1.0, 1.0, -1.0};
    return m;
}

inline DuschinskyModel phenanthrene() {
    DuschinskyModel m;
    m.name = "phe";
    m.S << 0.9055, -0.4240, 0.4240, 0.9055;
    m.omega_g << 700.0, 800.0;
    m.omega_e << 679.0, 796.0;
    m.d << 0.1650, 0.0780;
    m.mu_coeffs = {1.0, 1.5, -0.5};
    return m;
}

/// Weight above which an eigenstate is flagged as truncation-limited.
inline constexpr double kLeakageThreshold = 1e-4;

/**
 * Dense vibronic problem on n_levels^2 states, mode 0 on the leading qubits
 * (basis index n_0 * n_levels + n_1).
 */
struct VibronicSystem {
    DuschinskyModel model;
    std::size_t n_qubits = 0;
    /// Basis index of the N-th ground eigenstate (H_g is diagonal).
    std::vector<std::size_t> ground_order;
    Eigen::VectorXd ground_energies;
    /// Columns are excited eigenstates, ascending energy.
    Eigen::MatrixXd excited;
    Eigen::VectorXd excited_energies;
    Eigen::MatrixXd mu;
    PauliOperator mu_op;

    [[nodiscard]] std::size_t dim() const noexcept {
        return static_cast<std::size_t>(mu.rows());
    }

    [[nodiscard]] StateVector ground_state(std::size_t n) const {
        return StateVector::basis(n_qubits, ground_order.at(n));
    }

    [[nodiscard]] StateVector excited_state(std::size_t n) const {
        detail::require(n < dim(), "excited_state: index out of range");
        Amplitudes v(dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            v[i] = excited(static_cast<Eigen::Index>(i),
                           static_cast<Eigen::Index>(n));
        }
        return StateVector(n_qubits, std::move(v));
    }

    /// Weight of excited state n in the top two levels of either mode.
    [[nodiscard]] double leakage(std::size_t n) const {
        const std::size_t L = model.n_levels;
        double w = 0.0;
        for (std::size_t i = 0; i < dim(); ++i) {
            if (i / L >= L - 2 || i % L >= L - 2) {
                const double c = excited(static_cast<Eigen::Index>(i),
                                         static_cast<Eigen::Index>(n));
                w += c * c;
            }
        }
        return w;
    }

    [[nodiscard]] bool leaks(std::size_t n) const {
        return leakage(n) > kLeakageThreshold;
    }

    /// Dense |<psi_0|mu|psi'_n>|^2.
    [[nodiscard]] double transition(std::size_t n) const {
        const auto g = static_cast<Eigen::Index>(ground_order.at(0));
        const double amp =
            mu.row(g).dot(excited.col(static_cast<Eigen::Index>(n)));
        return amp * amp;
    }
};

namespace detail {
inline Eigen::MatrixXd kron(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b) {
    Eigen::MatrixXd r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return r;
}
} // namespace detail

/**
 * Builds both surfaces on truncated ladders. With mass-weighted Q_j =
 * q_j / sqrt(w_g,j) and Q' = S Q, the excited coordinates in ground ones are
 *   q'_i = sum_j S_ij sqrt(w_e,i / w_g,j) q_j + d_i,
 *   p'_i = sum_j S_ij sqrt(w_g,j / w_e,i) p_j,
 * and H_e = sum_i w_e,i (q'_i^2 + p'_i^2) / 2 is diagonalized densely.
 * Eigenvector signs are fixed so the largest-magnitude entry is positive.
 */
inline VibronicSystem build_vibronic(const DuschinskyModel &raw) {
    const DuschinskyModel m = validated(raw);
    const auto L = static_cast<Eigen::Index>(m.n_levels);
    Eigen::MatrixXd ann = Eigen::MatrixXd::Zero(L, L);
    for (Eigen::Index n = 1; n < L; ++n) {
        ann(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    const double r2 = std::sqrt(2.0);
    const Eigen::MatrixXd q1 = (ann + ann.transpose()) / r2;
    // p = i * pr with pr real antisymmetric.
    const Eigen::MatrixXd pr1 = (ann.transpose() - ann) / r2;
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(L, L);
    const std::array<Eigen::MatrixXd, 2> q{detail::kron(q1, id),
                                           detail::kron(id, q1)};
    const std::array<Eigen::MatrixXd, 2> pr{detail::kron(pr1, id),
                                            detail::kron(id, pr1)};
    const Eigen::Index dim = L * L;
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(dim, dim);

    VibronicSystem sys;
    sys.model = m;
    sys.n_qubits = 2 * static_cast<std::size_t>(std::countr_zero(m.n_levels));

    // Ground surface: diagonal in the number basis.
    sys.ground_energies.resize(dim);
    std::vector<double> eg(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) {
        eg[static_cast<std::size_t>(i)] =
            m.omega_g(0) * (static_cast<double>(i / L) + 0.5) +
            m.omega_g(1) * (static_cast<double>(i % L) + 0.5);
    }
    sys.ground_order.resize(static_cast<std::size_t>(dim));
    std::iota(sys.ground_order.begin(), sys.ground_order.end(), 0);
    std::stable_sort(sys.ground_order.begin(), sys.ground_order.end(),
                     [&](std::size_t x, std::size_t y) { return eg[x] < eg[y]; });
    for (Eigen::Index n = 0; n < dim; ++n) {
        sys.ground_energies(n) = eg[sys.ground_order[static_cast<std::size_t>(n)]];
    }

    // Excited surface.
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < 2; ++i) {
        Eigen::MatrixXd qp = m.d(i) * eye;
        Eigen::MatrixXd pp = Eigen::MatrixXd::Zero(dim, dim);
        for (int j = 0; j < 2; ++j) {
            qp += m.S(i, j) * std::sqrt(m.omega_e(i) / m.omega_g(j)) * q[j];
            pp += m.S(i, j) * std::sqrt(m.omega_g(j) / m.omega_e(i)) * pr[j];
        }
        // p'^2 = (i pp)^2 = -pp^2
        h += 0.5 * m.omega_e(i) * (qp * qp - pp * pp);
    }
    h = 0.5 * (h + h.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success) {
        throw ConvergenceError("build_vibronic: eigensolver failed");
    }
    sys.excited_energies = es.eigenvalues();
    sys.excited = es.eigenvectors();
    for (Eigen::Index n = 0; n < dim; ++n) {
        Eigen::Index imax = 0;
        sys.excited.col(n).cwiseAbs().maxCoeff(&imax);
        if (sys.excited(imax, n) < 0.0) {
            sys.excited.col(n) *= -1.0;
        }
    }

    sys.mu = m.mu_coeffs[0] * eye + m.mu_coeffs[1] * q[0] + m.mu_coeffs[2] * q[1];
    sys.mu_op = to_pauli_operator(sys.mu.cast<cplx>(), 1e-14);
    return sys;
}

// ---------------------------------------------------------------------------
// Tensor trains
// ---------------------------------------------------------------------------

/**
 * A = sum_{i=0}^{n-2} I..I (x) R_i (x) R'_{i+1} (x) I..I with standard
 * normal real factors, symmetrized to (A + A^T)/2.
 */
struct TensorTrainMatrix {
    std::size_t n_train = 0;
    std::size_t d_local = 0;
    std::uint64_t seed = 0;
    /// (R_i, R'_{i+1}) per neighbour pair.
    std::vector<std::pair<Eigen::MatrixXd, Eigen::MatrixXd>> factors;
    Eigen::MatrixXd dense;
    PauliOperator op;

    [[nodiscard]] std::size_t n_qubits() const noexcept {
        return n_train * static_cast<std::size_t>(std::countr_zero(d_local));
    }
};

inline TensorTrainMatrix build_tensor_train(std::uint64_t seed,
                                            std::size_t n_train,
                                            std::size_t d_local) {
    detail::require(d_local == 2 || d_local == 4 || d_local == 8,
                    "build_tensor_train: d_local must be 2, 4 or 8");
    detail::require(n_train >= 2, "build_tensor_train: n_train must be >= 2");
    TensorTrainMatrix tt;
    tt.n_train = n_train;
    tt.d_local = d_local;
    tt.seed = seed;
    detail::require_dense_guard(tt.n_qubits(), "build_tensor_train");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto d = static_cast<Eigen::Index>(d_local);
    auto draw = [&] {
        Eigen::MatrixXd r(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            for (Eigen::Index j = 0; j < d; ++j) {
                r(i, j) = normal(rng);
            }
        }
        return r;
    };
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
    Eigen::Index dim = 1;
    for (std::size_t i = 0; i < n_train; ++i) {
        dim *= d;
    }
    tt.dense = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t i = 0; i + 1 < n_train; ++i) {
        Eigen::MatrixXd r = draw();
        Eigen::MatrixXd rp = draw();
        Eigen::MatrixXd term = Eigen::MatrixXd::Ones(1, 1);
        for (std::size_t s = 0; s < n_train; ++s) {
            const Eigen::MatrixXd &f = s == i ? r : (s == i + 1 ? rp : id);
            term = detail::kron(term, f);
        }
        tt.dense += term;
        tt.factors.emplace_back(std::move(r), std::move(rp));
    }
    tt.dense = 0.5 * (tt.dense + tt.dense.transpose()).eval();
    tt.op = to_pauli_operator(tt.dense.cast<cplx>(), 1e-13);
    return tt;
}

// ---------------------------------------------------------------------------
// Linear-systems objective
// ---------------------------------------------------------------------------

/// |<x|A|b>|^2 through the configured estimator.
inline Estimate vqls_objective(const StateVector &x, const PauliOperator &a,
                               const StateVector &b, const EstimatorConfig &cfg) {
    return estimate(x, b, a, cfg);
}

/// Overload with |b> = |0...0>.
inline Estimate vqls_objective(const StateVector &x, const PauliOperator &a,
                               const EstimatorConfig &cfg) {
    return estimate(x, StateVector::basis(x.n_qubits(), 0), a, cfg);
}

} // namespace notrap
