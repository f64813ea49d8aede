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

// Shared helpers for the unit tests.
#pragma once

#include <complex>
#include <random>

#include <Eigen/Dense>

#include "notrap/notrap.hpp"

namespace notrap::testing {

inline Eigen::VectorXcd as_vector(const StateVector &s) {
    return Eigen::Map<const Eigen::VectorXcd>(
        s.amplitudes().data(), static_cast<Eigen::Index>(s.dim()));
}

/// exp(-i t M) by dense eigendecomposition.
inline Eigen::MatrixXcd dense_expm(const Eigen::MatrixXcd &m, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    Eigen::VectorXcd ph(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ph(i) = std::exp(cplx{0.0, -t * es.eigenvalues()(i)});
    }
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

inline double distance(const StateVector &a, const StateVector &b) {
    return (as_vector(a) - as_vector(b)).norm();
}

/// Random instance in the style of the oracle suites.
struct Instance {
    StateVector a;
    StateVector b;
    PauliOperator op;
};

inline Instance random_instance(std::uint64_t seed, std::size_t max_qubits = 5,
                                std::size_t max_terms = 6) {
    std::mt19937_64 rng(seed);
    const std::size_t nq = 1 + rng() % max_qubits;
    const std::size_t cap =
        std::min<std::size_t>(max_terms, std::size_t{1} << (2 * nq));
    const std::size_t np = 1 + rng() % cap;
    PauliOperator op = random_pauli_operator(nq, np, rng());
    StateVector b = haar_state(nq, rng());
    StateVector a = seed % 5 == 0 ? b : haar_state(nq, rng());
    return {std::move(a), std::move(b), std::move(op)};
}

} // namespace notrap::testing
