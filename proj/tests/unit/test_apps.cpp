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

#include <catch_amalgamated.hpp>

#include <cmath>

#include "support.hpp"

using namespace notrap;
using namespace notrap::testing;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("spin operators", "[apps]") {
    const double r = 1.0 / std::sqrt(2.0);
    const PauliOperator loc = build_a_loc(2);
    REQUIRE(loc.size() == 2);
    CHECK(loc[0].string.to_string() == "XI");
    CHECK(loc[1].string.to_string() == "IX");
    CHECK_THAT(loc[0].coeff, WithinAbs(r, 1e-15));

    const PauliOperator non = build_a_nonloc(3);
    REQUIRE(non.size() == 3);
    CHECK(non[0].string.to_string() == "IXX");
    CHECK(non[1].string.to_string() == "XIX");
    CHECK(non[2].string.to_string() == "XXI");

    const PauliOperator non2 = build_a_nonloc(2);
    CHECK((to_dense(non2) - to_dense(loc)).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(build_a_nonloc(1), InvalidArgument);
    CHECK_THROWS_AS(build_a_loc(0), InvalidArgument);
}

TEST_CASE("fig4 states", "[apps]") {
    for (std::size_t n = 3; n <= 8; ++n) {
        const auto st = fig4_states(n);
        const PauliOperator op = build_a_nonloc(n);
        CHECK_THAT(transition_probability_dense(st.a, st.b, op), WithinAbs(0.5, 1e-12));
        CHECK_THAT(std::abs(inner(st.a, st.b)), WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
    }
    CHECK_THAT(std::norm(transition_amplitude(fig4_states(18).a, fig4_states(18).b,
                                              build_a_nonloc(18))),
               WithinAbs(0.5, 1e-12));
}

TEST_CASE("haar states are normalized and seeded", "[apps]") {
    const auto a = haar_state(5, 3);
    CHECK_THAT(a.norm_squared(), WithinAbs(1.0, 1e-12));
    CHECK(distance(a, haar_state(5, 3)) == 0.0);
    CHECK(distance(a, haar_state(5, 4)) > 0.1);
}

TEST_CASE("random_pauli_operator", "[apps]") {
    const auto op = random_pauli_operator(3, 10, 1, 0.5);
    CHECK(op.size() == 10);
    for (const auto &t : op.terms()) {
        CHECK(std::abs(t.coeff) <= 0.5);
        CHECK(t.coeff != 0.0);
    }
    CHECK(random_pauli_operator(1, 4, 2).size() == 4);
    CHECK_THROWS_AS(random_pauli_operator(1, 5, 2), InvalidArgument);
}

TEST_CASE("encode_dlevel", "[apps]") {
    Eigen::MatrixXcd n(2, 2);
    n << 0, 0, 0, 1;
    const auto op = encode_dlevel(n);
    REQUIRE(op.size() == 2);
    for (const auto &t : op.terms()) {
        const auto s = t.string.to_string();
        CHECK((s == "I" || s == "Z"));
        CHECK_THAT(t.coeff, WithinAbs(s == "I" ? 0.5 : -0.5, 1e-15));
    }

    const auto id = encode_dlevel(Eigen::MatrixXcd::Identity(4, 4));
    REQUIRE(id.size() == 1);
    CHECK(id[0].string.to_string() == "II");
    CHECK_THAT(id[0].coeff, WithinAbs(1.0, 1e-15));

    CHECK(qubits_for_levels(1) == 0);
    CHECK(qubits_for_levels(2) == 1);
    CHECK(qubits_for_levels(5) == 3);
    CHECK(qubits_for_levels(16) == 4);
}

TEST_CASE("encode_dlevel round-trips", "[apps][property]") {
    for (Eigen::Index d : {3, 4, 5, 7, 16}) {
        Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(d, d);
        for (Eigen::Index k = 1; k < d; ++k) {
            q(k - 1, k) = q(k, k - 1) = std::sqrt(static_cast<double>(k) / 2.0);
        }
        const auto op = encode_dlevel(q);
        const Eigen::MatrixXcd back = to_dense(op);
        CHECK((back.topLeftCorner(d, d) - q).cwiseAbs().maxCoeff() < 1e-12);
        const Eigen::Index pad = back.rows();
        CHECK(pad == (Eigen::Index{1} << qubits_for_levels(static_cast<std::size_t>(d))));
        if (pad > d) {
            CHECK(back.bottomRows(pad - d).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("Duschinsky validation", "[apps]") {
    CHECK(orthogonality_defect(naphthalene().S) < kDuschinskyOrthoTolerance);
    CHECK(orthogonality_defect(phenanthrene().S) < kDuschinskyOrthoTolerance);
    CHECK(orthogonality_defect(validated(naphthalene()).S) < 1e-12);
    DuschinskyModel bad = naphthalene();
    bad.S << 1.0, 0.1, 0.0, 1.0;
    CHECK_THROWS_AS(validated(bad), InvalidArgument);
    DuschinskyModel neg = naphthalene();
    neg.omega_e(0) = -1.0;
    CHECK_THROWS_AS(validated(neg), InvalidArgument);
}

TEST_CASE("identical surfaces give a single bright state", "[apps]") {
    DuschinskyModel m;
    m.name = "identity";
    m.omega_g << 500.0, 900.0;
    m.omega_e = m.omega_g;
    const VibronicSystem sys = build_vibronic(m);
    CHECK(sys.n_qubits == 8);
    CHECK_THAT(sys.transition(0), WithinAbs(1.0, 1e-12));
    for (std::size_t n = 1; n < 20; ++n) {
        CHECK_THAT(sys.transition(n), WithinAbs(0.0, 1e-12));
    }
    CHECK(sys.mu_op.size() == 1);
}

TEST_CASE("vibronic models", "[apps]") {
    for (const auto &model : {naphthalene(), phenanthrene()}) {
        const VibronicSystem sys = build_vibronic(model);
        CAPTURE(model.name);
        CHECK(sys.n_qubits == 8);
        // Completeness over the excited eigenbasis.
        double sum = 0.0;
        for (std::size_t n = 0; n < sys.dim(); ++n) {
            sum += sys.transition(n);
        }
        const auto g = static_cast<Eigen::Index>(sys.ground_order[0]);
        const double want = sys.mu.row(g).squaredNorm();
        CHECK_THAT(sum, WithinAbs(want, 1e-6));
        // Non-orthogonal surfaces.
        CHECK(std::abs(inner(sys.ground_state(0), sys.excited_state(0))) > 0.1);
        // The Pauli form reproduces the dense transition.
        for (std::size_t n = 0; n < 8; ++n) {
            CHECK_THAT(std::norm(transition_amplitude(sys.ground_state(0),
                                                      sys.excited_state(n), sys.mu_op)),
                       WithinAbs(sys.transition(n), 1e-12));
            CHECK_FALSE(sys.leaks(n));
        }
        CHECK(std::is_sorted(sys.excited_energies.begin(), sys.excited_energies.end()));
    }
}

TEST_CASE("tensor trains", "[apps]") {
    const auto t22 = build_tensor_train(1, 2, 2);
    CHECK(t22.n_qubits() == 2);
    CHECK(t22.factors.size() == 1);
    CHECK(build_tensor_train(1, 3, 4).n_qubits() == 6);
    CHECK(build_tensor_train(1, 2, 8).n_qubits() == 6);
    for (std::size_t d : {2, 4, 8}) {
        for (std::size_t n : {2, 3}) {
            const auto tt = build_tensor_train(7 + d + n, n, d);
            CHECK((tt.dense - tt.dense.transpose()).cwiseAbs().maxCoeff() < 1e-12);
            const Eigen::MatrixXcd back = to_dense(tt.op);
            CHECK((back - tt.dense.cast<cplx>()).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
    // Neighbour structure of a three-site chain.
    const auto t3 = build_tensor_train(3, 3, 2);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);
    const auto &[r0, r1] = t3.factors[0];
    const auto &[s1, s2] = t3.factors[1];
    const Eigen::MatrixXd raw = notrap::detail::kron(notrap::detail::kron(r0, r1), id) +
                                notrap::detail::kron(id, notrap::detail::kron(s1, s2));
    CHECK((0.5 * (raw + raw.transpose()) - t3.dense).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THROWS_AS(build_tensor_train(1, 2, 3), InvalidArgument);
    CHECK_THROWS_AS(build_tensor_train(1, 1, 2), InvalidArgument);
}

TEST_CASE("vqls objective", "[apps]") {
    EstimatorConfig cfg;
    cfg.method = Method::SD;
    const PauliOperator z(1, {{1.0, "Z"}});
    CHECK_THAT(vqls_objective(StateVector::basis(1, 0), z, cfg).value,
               WithinAbs(1.0, 1e-14));
    // x orthogonal to A|b>.
    const PauliOperator x(1, {{1.0, "X"}});
    CHECK_THAT(vqls_objective(StateVector::basis(1, 0), x, cfg).value,
               WithinAbs(0.0, 1e-14));
    cfg.method = Method::HD;
    cfg.taus = default_tau_grid(3, 0.1);
    CHECK_THAT(vqls_objective(StateVector::basis(1, 1), x, cfg).value,
               WithinAbs(1.0, 1e-6));
}
