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
 * Unitary evolution on state vectors: Pauli application, single-string
 * exponentials, first-order product formulas and exact operator
 * exponentials, plus the overlap-probability primitive.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "notrap/error.hpp"
#include "notrap/pauli.hpp"
#include "notrap/statevector.hpp"

namespace notrap {

inline StateVector apply_pauli(const StateVector &s, const PauliString &p) {
    Amplitudes out(s.dim());
    kernels::apply_pauli(s.span(), out, p);
    return StateVector(s.n_qubits(), std::move(out));
}

/// exp(-i theta P) |s>.
inline StateVector apply_pauli_exponential(StateVector s, const PauliString &p,
                                           double theta) {
    kernels::apply_pauli_exponential(s.mutable_amplitudes(), p, theta);
    return s;
}

/**
 * One first-order product-formula step prod_k exp(-i sign tau g_k P_k).
 * Term 0 acts first.
 */
inline StateVector trotter_step(StateVector s, const PauliOperator &a,
                                double tau, int sign = +1) {
    if (a.n_qubits() != s.n_qubits()) {
        throw SizeMismatch("trotter_step: operator on " +
                           std::to_string(a.n_qubits()) +
                           " qubits, state on " +
                           std::to_string(s.n_qubits()));
    }
    detail::require(sign == 1 || sign == -1, "trotter_step: sign must be +-1");
    for (const auto &t : a.terms()) {
        kernels::apply_pauli_exponential(s.mutable_amplitudes(), t.string,
                                         sign * tau * t.coeff);
    }
    return s;
}

enum class ExpMethod {
    /// Matrix-free Taylor series with sub-stepping; any qubit count.
    Taylor,
    /// Dense eigendecomposition; n_q <= 12.
    Dense,
};

namespace detail {

/**
 * v <- exp(factor * A) v by sub-stepped Taylor series. Each sub-step has
 * |h| * sum|g_k| <= 1 and is summed until the last term is below
 * `rel_tol` of the partial sum.
 */
inline void taylor_expm_apply(Amplitudes &v, const PauliOperator &a,
                              cplx factor, double rel_tol = 1e-16,
                              int max_terms = 60) {
    const double bound = std::abs(factor) * a.one_norm();
    if (bound == 0.0) {
        return;
    }
    const auto steps = static_cast<int>(std::ceil(bound));
    const cplx h = factor / static_cast<double>(steps);
    Amplitudes term(v.size());
    Amplitudes next(v.size());
    for (int s = 0; s < steps; ++s) {
        term = v;
        bool converged = false;
        for (int k = 1; k <= max_terms; ++k) {
            kernels::apply_operator(term, next, a);
            const cplx scale = h / static_cast<double>(k);
            double term_norm = 0.0;
            double sum_norm = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) {
                term[i] = scale * next[i];
                v[i] += term[i];
                term_norm += std::norm(term[i]);
                sum_norm += std::norm(v[i]);
            }
            if (term_norm <= rel_tol * rel_tol * sum_norm) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            throw ConvergenceError("exact_exponential: Taylor series did not "
                                   "converge within " +
                                   std::to_string(max_terms) + " terms");
        }
    }
}

inline Amplitudes dense_expm_apply(const Amplitudes &v, const PauliOperator &a,
                                   cplx factor) {
    const Eigen::MatrixXcd m = to_dense(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    if (es.info() != Eigen::Success) {
        throw ConvergenceError("exact_exponential: eigensolver failed");
    }
    const Eigen::Map<const Eigen::VectorXcd> x(v.data(),
                                               static_cast<Eigen::Index>(
                                                   v.size()));
    Eigen::VectorXcd y = es.eigenvectors().adjoint() * x;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        y(i) *= std::exp(factor * es.eigenvalues()(i));
    }
    const Eigen::VectorXcd r = es.eigenvectors() * y;
    return Amplitudes(r.data(), r.data() + r.size());
}

} // namespace detail

/** exp(-i sign tau A) |s>, exact to ~1e-15. */
inline StateVector exact_exponential(const StateVector &s,
                                     const PauliOperator &a, double tau,
                                     int sign = +1,
                                     ExpMethod method = ExpMethod::Taylor) {
    if (a.n_qubits() != s.n_qubits()) {
        throw SizeMismatch("exact_exponential: operator on " +
                           std::to_string(a.n_qubits()) +
                           " qubits, state on " +
                           std::to_string(s.n_qubits()));
    }
    detail::require(sign == 1 || sign == -1,
                    "exact_exponential: sign must be +-1");
    const cplx factor{0.0, -static_cast<double>(sign) * tau};
    Amplitudes out;
    if (method == ExpMethod::Dense) {
        out = detail::dense_expm_apply(s.amplitudes(), a, factor);
    } else {
        out = s.amplitudes();
        detail::taylor_expm_apply(out, a, factor);
    }
    return StateVector(s.n_qubits(), std::move(out));
}

/// |<a|b>|^2, clamped to [0, 1] against rounding.
inline double overlap_probability(const StateVector &a, const StateVector &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw SizeMismatch("overlap_probability: states on " +
                           std::to_string(a.n_qubits()) + " and " +
                           std::to_string(b.n_qubits()) + " qubits");
    }
    const double p = std::norm(inner(a, b));
    return std::clamp(p, 0.0, 1.0);
}

/**
 * Power series of <a| exp(-i sign tau A) |b> in tau, built from the moments
 * m_k = <a|A^k|b>. Evaluating many (tau, sign) pairs then costs no further
 * state-vector work; the result equals exact_exponential followed by an inner
 * product.
 */
class OverlapMoments {
  public:
    OverlapMoments(const StateVector &a, const StateVector &b,
                   const PauliOperator &op, double tau_max,
                   double tol = 1e-18)
        : norm_bound_(op.one_norm()), tau_max_(tau_max) {
        if (a.n_qubits() != b.n_qubits() || op.n_qubits() != a.n_qubits()) {
            throw SizeMismatch("OverlapMoments: size mismatch");
        }
        // Smallest K with (tau_max * |A|_1)^K / K! below tol.
        const double x = tau_max * norm_bound_;
        double bound = 1.0;
        std::size_t k_max = 0;
        while (k_max < 400 && (bound > tol || static_cast<double>(k_max) < x)) {
            ++k_max;
            bound *= x / static_cast<double>(k_max);
        }
        if (k_max >= 400) {
            throw ConvergenceError("OverlapMoments: tau_max * |A| too large");
        }
        Amplitudes v = b.amplitudes();
        Amplitudes w(v.size());
        moments_.push_back(inner(a.span(), std::span<const cplx>(v)));
        for (std::size_t k = 1; k <= k_max; ++k) {
            kernels::apply_operator(v, w, op);
            std::swap(v, w);
            moments_.push_back(inner(a.span(), std::span<const cplx>(v)));
        }
    }

    [[nodiscard]] cplx amplitude(double tau, int sign) const {
        if (std::abs(tau) > tau_max_ * (1.0 + 1e-12)) {
            throw InvalidArgument("OverlapMoments: tau beyond tau_max");
        }
        const cplx step{0.0, -static_cast<double>(sign) * tau};
        cplx coeff{1.0, 0.0};
        cplx sum{0.0, 0.0};
        for (std::size_t k = 0; k < moments_.size(); ++k) {
            if (k > 0) {
                coeff *= step / static_cast<double>(k);
            }
            sum += coeff * moments_[k];
        }
        return sum;
    }

    [[nodiscard]] double probability(double tau, int sign) const {
        return std::clamp(std::norm(amplitude(tau, sign)), 0.0, 1.0);
    }

    [[nodiscard]] std::size_t order() const noexcept {
        return moments_.size() - 1;
    }

  private:
    double norm_bound_;
    double tau_max_;
    std::vector<cplx> moments_;
};

/** Dense eigendecomposition of an operator, reusable across states and tau. */
class SpectralPropagator {
  public:
    explicit SpectralPropagator(const PauliOperator &op) : n_(op.n_qubits()) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_dense(op));
        if (es.info() != Eigen::Success) {
            throw ConvergenceError("SpectralPropagator: eigensolver failed");
        }
        vectors_ = es.eigenvectors();
        values_ = es.eigenvalues();
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_; }
    [[nodiscard]] const Eigen::MatrixXcd &eigenvectors() const noexcept {
        return vectors_;
    }
    [[nodiscard]] const Eigen::VectorXd &eigenvalues() const noexcept {
        return values_;
    }

    /// exp(-i sign tau A)|s>.
    [[nodiscard]] StateVector apply(const StateVector &s, double tau,
                                    int sign = +1) const {
        if (s.n_qubits() != n_) {
            throw SizeMismatch("SpectralPropagator: size mismatch");
        }
        const auto dim = static_cast<Eigen::Index>(s.dim());
        const Eigen::Map<const Eigen::VectorXcd> v(s.amplitudes().data(), dim);
        Eigen::VectorXcd y = vectors_.adjoint() * v;
        for (Eigen::Index j = 0; j < dim; ++j) {
            y(j) *= std::exp(cplx{0.0, -static_cast<double>(sign) * tau *
                                           values_(j)});
        }
        const Eigen::VectorXcd r = vectors_ * y;
        return StateVector(n_, Amplitudes(r.data(), r.data() + r.size()));
    }

  private:
    std::size_t n_;
    Eigen::MatrixXcd vectors_;
    Eigen::VectorXd values_;
};

/**
 * <a| exp(-i sign tau A) |b> as a sum over eigenvalues, for repeated
 * evaluation at many tau on small registers (n_q <= 12).
 */
class SpectralOverlap {
  public:
    SpectralOverlap(const StateVector &a, const StateVector &b,
                    const SpectralPropagator &prop) {
        if (a.n_qubits() != b.n_qubits() || prop.n_qubits() != a.n_qubits()) {
            throw SizeMismatch("SpectralOverlap: size mismatch");
        }
        const auto dim = static_cast<Eigen::Index>(a.dim());
        const Eigen::Map<const Eigen::VectorXcd> va(a.amplitudes().data(), dim);
        const Eigen::Map<const Eigen::VectorXcd> vb(b.amplitudes().data(), dim);
        const Eigen::VectorXcd pa = prop.eigenvectors().adjoint() * va;
        const Eigen::VectorXcd pb = prop.eigenvectors().adjoint() * vb;
        weights_.resize(static_cast<std::size_t>(dim));
        eigenvalues_.resize(static_cast<std::size_t>(dim));
        for (Eigen::Index j = 0; j < dim; ++j) {
            weights_[static_cast<std::size_t>(j)] = std::conj(pa(j)) * pb(j);
            eigenvalues_[static_cast<std::size_t>(j)] = prop.eigenvalues()(j);
        }
    }

    SpectralOverlap(const StateVector &a, const StateVector &b,
                    const PauliOperator &op)
        : SpectralOverlap(a, b, SpectralPropagator(op)) {}

    [[nodiscard]] cplx amplitude(double tau, int sign) const {
        cplx sum{0.0, 0.0};
        for (std::size_t j = 0; j < weights_.size(); ++j) {
            const double phi = -static_cast<double>(sign) * tau * eigenvalues_[j];
            sum += weights_[j] * cplx{std::cos(phi), std::sin(phi)};
        }
        return sum;
    }

    [[nodiscard]] double probability(double tau, int sign) const {
        return std::clamp(std::norm(amplitude(tau, sign)), 0.0, 1.0);
    }

  private:
    std::vector<cplx> weights_;
    std::vector<double> eigenvalues_;
};

// ---------------------------------------------------------------------------
// Spectral norm
// ---------------------------------------------------------------------------

enum class NormMethod {
    /// Dense for n_q <= 10, power iteration above.
    Auto,
    Dense,
    Power,
};

inline double spectral_norm(const PauliOperator &a,
                            NormMethod method = NormMethod::Auto,
                            int max_iterations = 100000) {
    if (a.empty()) {
        return 0.0;
    }
    if (method == NormMethod::Auto) {
        method = a.n_qubits() <= 10 ? NormMethod::Dense : NormMethod::Power;
    }
    if (method == NormMethod::Dense) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            to_dense(a), Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) {
            throw ConvergenceError("spectral_norm: eigensolver failed");
        }
        return es.eigenvalues().cwiseAbs().maxCoeff();
    }
    // Power iteration on A^2; the Rayleigh quotient |A v|^2 converges to
    // |A|^2 from below.
    const std::size_t dim = std::size_t{1} << a.n_qubits();
    std::mt19937_64 rng(0x5eed5eedULL);
    std::normal_distribution<double> gauss;
    Amplitudes v(dim);
    for (auto &c : v) {
        c = {gauss(rng), gauss(rng)};
    }
    Amplitudes av(dim);
    Amplitudes w(dim);
    auto normalize = [](Amplitudes &x) {
        double s = 0.0;
        for (const auto &c : x) {
            s += std::norm(c);
        }
        const double inv = 1.0 / std::sqrt(s);
        for (auto &c : x) {
            c *= inv;
        }
    };
    normalize(v);
    double prev = 0.0;
    int stable = 0;
    for (int it = 0; it < max_iterations; ++it) {
        kernels::apply_operator(v, av, a);
        double rq = 0.0;
        for (const auto &c : av) {
            rq += std::norm(c);
        }
        if (it > 0 && std::abs(rq - prev) <= 1e-15 * rq) {
            if (++stable >= 3) {
                return std::sqrt(rq);
            }
        } else {
            stable = 0;
        }
        prev = rq;
        kernels::apply_operator(av, w, a);
        std::swap(v, w);
        normalize(v);
    }
    throw ConvergenceError("spectral_norm: power iteration did not converge "
                           "within " +
                           std::to_string(max_iterations) + " iterations");
}

} // namespace notrap
