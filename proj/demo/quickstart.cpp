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

// Estimates one transition probability three ways and compares with the
// dense value.

#include <cstdio>

#include "notrap/notrap.hpp"

int main() {
    using namespace notrap;

    const std::size_t n_q = 4;
    const PauliOperator op = build_a_loc(n_q);
    const StateVector a = StateVector::basis(n_q, 0);
    const StateVector b = haar_state(n_q, 7);
    const double exact = transition_probability_dense(a, b, op);

    const Estimate sd = sd_estimate(a, b, op);
    const auto taus = default_tau_grid(3, 0.2 / spectral_norm(op));
    const HDEstimate hd = hd_estimate(a, b, op, taus);
    const TEstimate t = t_estimate(a, b, op, 2, taus);

    std::printf("exact       %.12f\n", exact);
    std::printf("short-depth %.12f  (%llu circuits)\n", sd.value,
                static_cast<unsigned long long>(sd.circuits));
    std::printf("high-depth  %.12f  (%llu circuits)\n", hd.value,
                static_cast<unsigned long long>(hd.circuits));
    std::printf("grouped     %.12f  (%llu circuits)\n", t.value,
                static_cast<unsigned long long>(t.circuits));

    // Same estimate with 10^5 shots per circuit.
    const Estimate noisy = sd_estimate(a, b, op, ShotPlan{100000, 11});
    std::printf("short-depth, 1e5 shots/circuit: %.6f\n", noisy.value);
    return 0;
}
