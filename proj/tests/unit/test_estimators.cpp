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
#include <numbers>

#include "support.hpp"

using namespace notrap;
using namespace notrap::testing;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const StateVector k0 = StateVector::basis(1, 0);
const StateVector k1 = StateVector::basis(1, 1);

double oracle(const Instance &in) {
    return transition_probability_dense(in.a, in.b, in.op);
}

} // namespace

TEST_CASE("orthogonalize examples", "[estimators]") {
    const PauliOperator z(1, {{1.0, "Z"}});
    const auto p = orthogonalize(k0, k0, z);
    CHECK(p.n_qubits() == 2);
    CHECK(std::abs(inner(p.a_dot, p.b_dot)) == 0.0);
    CHECK_THAT(std::abs(transition_amplitude(p.a_dot, p.b_dot, p.op_dot)),
               WithinAbs(1.0, 1e-15));

    const auto q = orthogonalize(k0, k1, PauliOperator(1, {{1.0, "X"}}));
    CHECK_THAT(std::abs(transition_amplitude(q.a_dot, q.b_dot, q.op_dot)),
               WithinAbs(1.0, 1e-15));
    CHECK(q.op_dot[0].string.to_string() == "XX");

    CHECK_THROWS_AS(orthogonalize(k0, StateVector::basis(2, 0), z), SizeMismatch);
}

TEST_CASE("orthogonalize preserves the amplitude", "[estimators][property]") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Instance in = random_instance(seed);
        const auto p = orthogonalize(in.a, in.b, in.op);
        REQUIRE(std::abs(inner(p.a_dot, p.b_dot)) == 0.0);
        REQUIRE(std::abs(transition_amplitude(p.a_dot, p.b_dot, p.op_dot) -
                         transition_amplitude(in.a, in.b, in.op)) < 1e-12);
    }
}

TEST_CASE("sd_w_terms examples", "[estimators]") {
    const auto x = sd_w_terms(orthogonalize(k0, k1, PauliOperator(1, {{1.0, "X"}})));
    CHECK_THAT(x.w1[0], WithinAbs(1.0, 1e-15));
    const auto z = sd_w_terms(orthogonalize(k0, k1, PauliOperator(1, {{1.0, "Z"}})));
    CHECK_THAT(z.w1[0], WithinAbs(0.0, 1e-15));

    const double r = 1.0 / std::sqrt(2.0);
    const PauliOperator xz(1, {{r, "X"}, {r, "Z"}});
    const auto prob = orthogonalize(k0, k1, xz);
    const auto w = sd_w_terms(prob);
    CHECK(w.w2.size() == 1);
    CHECK(w.circuit_count() == 5);
    CHECK_THAT(sd_reconstruct(w, prob.op_dot.coefficients()), WithinAbs(0.5, 1e-14));
}

TEST_CASE("W2 and W3 equal their defining matrix elements", "[estimators][property]") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Instance in = random_instance(seed + 300, 4, 5);
        const auto prob = orthogonalize(in.a, in.b, in.op);
        const auto w = sd_w_terms(prob);
        const Eigen::VectorXcd va = as_vector(prob.a_dot);
        const Eigen::VectorXcd vb = as_vector(prob.b_dot);
        const auto d = static_cast<Eigen::Index>(prob.a_dot.dim());
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
        const cplx i{0.0, 1.0};
        for (std::size_t k = 0; k < w.n_terms; ++k) {
            const Eigen::MatrixXcd pk = to_dense(prob.op_dot[k].string);
            CHECK_THAT(w.w1[k], WithinAbs(std::norm(va.dot(pk * vb)), 1e-12));
            for (std::size_t l = 0; l < k; ++l) {
                const Eigen::MatrixXcd pl = to_dense(prob.op_dot[l].string);
                const std::size_t p = SDTermSet::pair(k, l);
                const Eigen::MatrixXcd u2 = (id + i * pk) * (id + i * pl) / 2.0;
                const Eigen::MatrixXcd u3 = (id - i * pk) * (id - i * pl) / 2.0;
                CHECK_THAT(w.w2[p], WithinAbs(std::norm(va.dot(u2 * vb)), 1e-12));
                CHECK_THAT(w.w3[p], WithinAbs(std::norm(va.dot(u3 * vb)), 1e-12));
                CHECK_THAT(w.w4[p], WithinAbs(std::norm(va.dot(pk * pl * vb)), 1e-12));
            }
        }
    }
}

TEST_CASE("sd_estimate examples", "[estimators]") {
    CHECK_THAT(sd_estimate(k0, k0, PauliOperator(1, {{1.0, "Z"}})).value,
               WithinAbs(1.0, 1e-14));
    const double r = 1.0 / std::sqrt(2.0);
    const StateVector bell(2, {r, 0.0, 0.0, r});
    const auto e = sd_estimate(StateVector::basis(2, 0), bell,
                               PauliOperator(2, {{1.0, "XX"}}));
    CHECK_THAT(e.value, WithinAbs(0.5, 1e-14));
    CHECK(e.circuits == 1);
}

TEST_CASE("sd_estimate matches the dense oracle", "[estimators][property]") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Instance in = random_instance(seed);
        const auto e = sd_estimate(in.a, in.b, in.op);
        REQUIRE_THAT(e.value, WithinAbs(oracle(in), 1e-9));
        const std::uint64_t n = in.op.size();
        REQUIRE(e.circuits == (3 * n * n - n) / 2);
    }
}

TEST_CASE("sd_estimate is exact for a = b", "[estimators][property]") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Instance in = random_instance(seed + 50);
        const double want = transition_probability_dense(in.b, in.b, in.op);
        CHECK_THAT(sd_estimate(in.b, in.b, in.op).value, WithinAbs(want, 1e-10));
    }
}

TEST_CASE("rearranged SD formula", "[estimators]") {
    // Equal coefficients and equal W1: both forms agree.
    const PauliOperator op = build_a_loc(3);
    const StateVector a = StateVector::basis(3, 0);
    const StateVector b = haar_state(3, 1);
    const auto prob = orthogonalize(a, a, op);
    const auto w = sd_w_terms(prob);
    const auto g = prob.op_dot.coefficients();
    CHECK_THAT(sd_reconstruct(w, g, SDFormula::Rearranged),
               WithinAbs(sd_reconstruct(w, g, SDFormula::Pairwise), 1e-12));
    // A generic instance separates them; the pairwise form is the correct one.
    const auto e = sd_estimate(a, b, op);
    const auto r = sd_estimate(a, b, op, std::nullopt, SDFormula::Rearranged);
    CHECK_THAT(e.value, WithinAbs(transition_probability_dense(a, b, op), 1e-12));
    CHECK(std::abs(r.value - e.value) > 1e-6);
}

TEST_CASE("shot-noise SD estimates are reproducible", "[estimators][sampling]") {
    const Instance in = random_instance(4);
    const ShotPlan plan{2000, 77};
    const double a = sd_estimate(in.a, in.b, in.op, plan).value;
    const double b = sd_estimate(in.a, in.b, in.op, plan).value;
    CHECK(a == b);
    const double c = sd_estimate(in.a, in.b, in.op, ShotPlan{2000, 78}).value;
    CHECK(a != c);
}

TEST_CASE("hd_f two-level closed form", "[estimators]") {
    const auto prob = orthogonalize(k0, k1, PauliOperator(1, {{1.0, "X"}}));
    for (double tau : {0.05, 0.3, 1.1}) {
        const FSample s = hd_f(prob, tau);
        CHECK_THAT(s.f(), WithinAbs(2.0 * std::sin(tau) * std::sin(tau), 1e-14));
        CHECK_THAT(hd_f(prob, tau, ExpMode::Trotter1).f(),
                   WithinAbs(s.f(), 1e-14));
    }
    CHECK_THROWS_AS(hd_f(prob, 0.0), InvalidArgument);
    CHECK_THROWS_AS(hd_f(prob, -0.1), InvalidArgument);
}

TEST_CASE("hd_f is sign symmetric and has the right limit", "[estimators][property]") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Instance in = random_instance(seed + 400, 4, 6);
        const auto p = orthogonalize(in.a, in.b, in.op);
        const auto m = orthogonalize(in.a, in.b, in.op.scaled(-1.0));
        const double tau = 0.37;
        CHECK_THAT(hd_f(p, tau).f(), WithinAbs(hd_f(m, tau).f(), 1e-13));
        const double small = 1e-4;
        CHECK_THAT(hd_f(p, small).f() / (2 * small * small),
                   WithinAbs(oracle(in), 1e-6));
    }
}

TEST_CASE("richardson_solve examples", "[estimators][extrapolation]") {
    const std::vector<double> t2{0.0707107, 0.1};
    std::vector<double> f;
    for (double t : t2) {
        f.push_back(2 * 0.5 * t * t + t * t * t * t);
    }
    CHECK_THAT(richardson_solve(t2, f).q_prime, WithinAbs(0.5, 1e-12));

    const std::vector<double> t3{0.2, 0.5, 0.9};
    std::vector<double> g;
    for (double t : t3) {
        g.push_back(2 * t * t);
    }
    const auto plan = richardson_solve(t3, g);
    CHECK_THAT(plan.q_prime, WithinAbs(1.0, 1e-12));
    CHECK_THAT(plan.coefficients[1], WithinAbs(0.0, 1e-11));

    auto sin_err = [](const std::vector<double> &taus) {
        std::vector<double> v;
        for (double t : taus) {
            v.push_back(2 * std::sin(t) * std::sin(t));
        }
        return std::abs(richardson_solve(taus, v).q_prime - 1.0);
    };
    const double e2 = sin_err(default_tau_grid(2, 0.1));
    const double e3 = sin_err({0.05, 0.1 / std::sqrt(2.0), 0.1});
    CHECK(e2 < 1e-3);
    CHECK(e3 < e2);

    CHECK_THROWS_AS(richardson_solve(std::vector<double>{0.1}, std::vector<double>{0.1}),
                    InvalidArgument);
    CHECK_THROWS_AS(richardson_solve(std::vector<double>{0.1, 0.1},
                                     std::vector<double>{0.1, 0.2}),
                    InvalidArgument);
    CHECK_THROWS_AS(richardson_solve(t3, t2), SizeMismatch);
    CHECK_THROWS_AS(make_plan(std::vector<double>{1e-4, 1.0000001e-4, 0.5, 0.9}),
                    SingularSystem);
}

TEST_CASE("two-point V matches its closed form", "[estimators][extrapolation][property]") {
    for (double t1 : {0.05, 0.2, 0.31, 0.6}) {
        for (double t0 : {t1 / std::sqrt(2.0), t1 / 3.0}) {
            const std::vector<double> taus{t0, t1};
            const auto plan = make_plan(taus);
            const double a = t0 * t0;
            const double b = t1 * t1;
            const double s = 1.0 / (a - b);
            CHECK_THAT(plan.V(0, 0), WithinRel(s * -b / a, 1e-10));
            CHECK_THAT(plan.V(0, 1), WithinRel(s * a / b, 1e-10));
            CHECK_THAT(plan.V(1, 0), WithinRel(s / a, 1e-10));
            CHECK_THAT(plan.V(1, 1), WithinRel(-s / b, 1e-10));
        }
    }
}

TEST_CASE("tau grids", "[estimators][extrapolation]") {
    const auto g2 = default_tau_grid(2, 0.4);
    CHECK_THAT(g2[0], WithinAbs(0.4 / std::sqrt(2.0), 1e-15));
    CHECK(g2[1] == 0.4);
    const auto g4 = default_tau_grid(4, 0.4);
    CHECK_THAT(g4.front(), WithinAbs(0.2, 1e-15));
    CHECK(g4.back() == 0.4);
    const auto c3 = centered_tau_grid(3, 2.0);
    CHECK_THAT(c3[0], WithinAbs(0.45, 1e-15));
    CHECK_THAT(c3[1], WithinAbs(0.5, 1e-15));
    CHECK_THAT(c3[2], WithinAbs(0.55, 1e-15));
    CHECK_THROWS_AS(default_tau_grid(1, 0.4), InvalidArgument);
    CHECK_THROWS_AS(centered_tau_grid(3, 0.0), InvalidArgument);
}

TEST_CASE("hd_estimate examples", "[estimators]") {
    const PauliOperator z(1, {{1.0, "Z"}});
    double prev = 1.0;
    for (double t1 : {0.4, 0.2, 0.1}) {
        const double err =
            std::abs(hd_estimate(k0, k0, z, default_tau_grid(2, t1)).value - 1.0);
        CHECK(err < 1e-2);
        CHECK(err < prev);
        prev = err;
    }

    const PauliOperator op = build_a_loc(4);
    const double nrm = spectral_norm(op);
    const auto taus = centered_tau_grid(3, nrm);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const StateVector a = haar_state(4, 2 * seed);
        const StateVector b = haar_state(4, 2 * seed + 1);
        const double want = transition_probability_dense(a, b, op);
        const auto e = hd_estimate(a, b, op, taus);
        CHECK(e.circuits == 6);
        CHECK(std::abs(e.value - want) / want < 1e-2);
    }
}

TEST_CASE("hd_estimate converges to the oracle in both modes", "[estimators][property]") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Instance in = random_instance(seed + 500);
        const double nrm = spectral_norm(in.op);
        const double want = oracle(in);
        const auto taus = default_tau_grid(3, 0.2 / nrm);
        for (auto mode : {ExpMode::Exact, ExpMode::Trotter1}) {
            const double got = hd_estimate(in.a, in.b, in.op, taus, mode).value;
            REQUIRE_THAT(got, WithinAbs(want, 1e-4 * std::max(want, 1.0) + 1e-6));
        }
    }
}

TEST_CASE("spectral cache reproduces the uncached path", "[estimators]") {
    const Instance in = random_instance(8, 5, 6);
    const auto prob = orthogonalize(in.a, in.b, in.op);
    const SpectralPropagator prop(prob.op_dot);
    const auto taus = default_tau_grid(3, 0.3);
    const auto a = hd_estimate_orthogonalized(prob, taus);
    const auto b = hd_estimate_orthogonalized(prob, taus, ExpMode::Exact,
                                              std::nullopt, &prop);
    CHECK_THAT(a.value, WithinAbs(b.value, 1e-12));
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const FSample direct = hd_f(prob, taus[i]);
        CHECK_THAT(a.samples[i].f(), WithinAbs(direct.f(), 1e-12));
    }
}

TEST_CASE("shot budget", "[estimators][budget]") {
    const auto states = fig4_states(6);
    const PauliOperator op = build_a_nonloc(6);
    const auto prob = orthogonalize(states.a, states.b, op);

    SECTION("infeasible when extrapolation error exceeds the target") {
        CHECK_THROWS_AS(hd_shot_budget(prob, 1.5, 1e-3, 0.5), InfeasibleBudget);
    }
    SECTION("feasible budget splits the error") {
        const auto b = hd_shot_budget(prob, 0.3, 0.005, 0.5);
        CHECK(b.feasible);
        CHECK(b.allocations.size() == 4);
        CHECK_THAT(b.eps_extrap + b.eps_meas, WithinAbs(0.005, 1e-15));
        CHECK(b.eps_meas_achieved <= b.eps_meas * (1 + 1e-12));
        CHECK_THAT(b.tau0(), WithinAbs(0.3 / std::sqrt(2.0), 1e-15));
        double sum = 0.0;
        for (const auto &al : b.allocations) {
            CHECK(al.shots >= 1);
            sum += static_cast<double>(al.shots);
        }
        CHECK(sum == b.n_total);
        const auto ub = hd_shot_budget(prob, 0.3, 0.005, 0.5, VarianceModel::UpperBound);
        CHECK(ub.n_total > b.n_total);
    }
    SECTION("doubling the measurement budget quarters the shots") {
        const auto taus = default_tau_grid(2, 0.3);
        std::vector<FSample> samples;
        for (std::size_t i = 0; i < taus.size(); ++i) {
            samples.push_back(hd_f(prob, taus[i]));
        }
        const double q0 = evaluate_hd_budget(samples, 1.0, 0.0).q_prime;
        const auto b1 = evaluate_hd_budget(samples, 1e-4, q0);
        const auto b2 = evaluate_hd_budget(samples, 2e-4, q0);
        CHECK_THAT(b1.n_total / b2.n_total, WithinRel(4.0, 1e-4));
    }
}

TEST_CASE("t_terms examples", "[estimators][t]") {
    const Instance in = random_instance(21, 4, 6);
    const auto prob = orthogonalize(in.a, in.b, in.op);
    const double tau = 0.15;

    const auto one = t_terms(prob, group_terms(prob.op_dot, 1), tau);
    CHECK(one.circuit_count() == 2);
    CHECK_THAT(one.s_plus_u[0] + one.s_minus_u[0],
               WithinAbs(hd_f(prob, tau, ExpMode::Trotter1).f(), 1e-14));

    const std::size_t np = prob.op_dot.size();
    const auto single = group_terms(prob.op_dot, np);
    const double small = 1e-4;
    const auto t = t_terms(prob, single, small);
    const Eigen::VectorXcd va = as_vector(prob.a_dot);
    const Eigen::VectorXcd vb = as_vector(prob.b_dot);
    for (std::size_t u = 0; u < np; ++u) {
        const double g = prob.op_dot[u].coeff;
        const double want = g * g * std::norm(va.dot(to_dense(prob.op_dot[u].string) * vb));
        CHECK_THAT((t.s_plus_u[u] + t.s_minus_u[u]) / (2 * small * small),
                   WithinAbs(want, 1e-6));
    }

    if (np >= 2) {
        const auto two = t_terms(prob, group_terms(prob.op_dot, 2), small);
        CHECK_THAT((two.s_plus_uv[0] + two.s_minus_uv[0]) / (2 * small * small),
                   WithinAbs(oracle(in), 1e-6));
        CHECK(two.circuit_count() == 6);
    }
    TermGrouping bad;
    bad.groups = {{0}};
    if (np > 1) {
        CHECK_THROWS_AS(t_terms(prob, bad, tau), InvalidArgument);
    }
}

TEST_CASE("t_estimate examples", "[estimators][t]") {
    const double r = 1.0 / std::sqrt(2.0);
    const PauliOperator xz(1, {{r, "X"}, {r, "Z"}});
    const auto e = t_estimate(k0, k1, xz, 2, default_tau_grid(3, 0.2));
    CHECK_THAT(e.value, WithinAbs(0.5, 1e-3));
    CHECK(e.circuits == 3 * (4 + 2));
}

TEST_CASE("t_estimate agrees with the oracle for every N_G", "[estimators][t][property]") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Instance in = random_instance(seed + 700, 4, 6);
        const double want = oracle(in);
        const double nrm = spectral_norm(in.op);
        const auto taus = default_tau_grid(3, 0.2 / nrm);
        const std::size_t np = in.op.size();
        for (std::size_t ng = 1; ng <= np; ++ng) {
            const auto e = t_estimate(in.a, in.b, in.op, ng, taus);
            REQUIRE_THAT(e.value, WithinAbs(want, 1e-4 * std::max(want, 1.0) + 1e-6));
            REQUIRE(e.circuits == taus.size() * (ng * ng + ng));
        }
    }
}

TEST_CASE("halving tau quarters the T-method bias", "[estimators][t][property]") {
    const Instance in = random_instance(33, 4, 6);
    const auto prob = orthogonalize(in.a, in.b, in.op);
    const double want = oracle(in);
    const double nrm = spectral_norm(in.op);
    const std::size_t ng = std::min<std::size_t>(2, prob.op_dot.size());
    const auto grouping = group_terms(prob.op_dot, ng);
    const double tau = 0.1 / nrm;
    const double b1 = t_reconstruct(t_terms(prob, grouping, tau)) - want;
    const double b2 = t_reconstruct(t_terms(prob, grouping, tau / 2)) - want;
    CHECK_THAT(b1 / b2, WithinAbs(4.0, 0.2));
}

TEST_CASE("estimate dispatches by method", "[estimators]") {
    const Instance in = random_instance(12);
    EstimatorConfig cfg;
    cfg.taus = default_tau_grid(3, 0.1 / spectral_norm(in.op));
    cfg.method = Method::SD;
    CHECK_THAT(estimate(in.a, in.b, in.op, cfg).value, WithinAbs(oracle(in), 1e-9));
    cfg.method = Method::HD;
    CHECK(estimate(in.a, in.b, in.op, cfg).circuits == 6);
    cfg.method = Method::T;
    cfg.n_groups = 1;
    CHECK(estimate(in.a, in.b, in.op, cfg).circuits == 6);
    CHECK(parse_method("hd") == Method::HD);
    CHECK(to_string(Method::T) == "t");
    CHECK_THROWS_AS(parse_method("xx"), InvalidArgument);
}
