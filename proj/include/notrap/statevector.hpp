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
 * Normalized state vectors and matrix-free Pauli kernels.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "notrap/error.hpp"
#include "notrap/pauli.hpp"

namespace notrap {

using Amplitudes = std::vector<cplx>;

inline constexpr double kNormTolerance = 1e-10;

/** Normalized amplitude vector of length 2^n_qubits. */
class StateVector {
  public:
    StateVector() = default;

    /// Takes amplitudes that are already normalized (checked to 1e-10).
    StateVector(std::size_t n_qubits, Amplitudes amps)
        : n_(n_qubits), amps_(std::move(amps)) {
        detail::require(n_qubits <= 30, "StateVector: too many qubits");
        if (amps_.size() != (std::size_t{1} << n_qubits)) {
            throw SizeMismatch("StateVector: expected " +
                               std::to_string(std::size_t{1} << n_qubits) +
                               " amplitudes, got " +
                               std::to_string(amps_.size()));
        }
        const double nrm = norm_squared();
        if (std::abs(nrm - 1.0) > kNormTolerance) {
            throw InvalidArgument("StateVector: amplitudes not normalized "
                                  "(norm^2 = " +
                                  std::to_string(nrm) + ")");
        }
    }

    /// Rescales to unit norm; rejects the zero vector.
    static StateVector normalized(Amplitudes amps) {
        double s = 0.0;
        for (const auto &c : amps) {
            s += std::norm(c);
        }
        if (!(s > 0.0)) {
            throw InvalidArgument("StateVector: cannot normalize zero vector");
        }
        const double inv = 1.0 / std::sqrt(s);
        for (auto &c : amps) {
            c *= inv;
        }
        const auto dim = amps.size();
        if (dim == 0 || (dim & (dim - 1)) != 0) {
            throw InvalidArgument("StateVector: length is not a power of two");
        }
        return StateVector(static_cast<std::size_t>(std::countr_zero(dim)),
                           std::move(amps));
    }

    static StateVector basis(std::size_t n_qubits, std::uint64_t index = 0) {
        Amplitudes a(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
        detail::require(index < a.size(), "StateVector::basis: index out of "
                                          "range");
        a[index] = 1.0;
        return StateVector(n_qubits, std::move(a));
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_; }
    [[nodiscard]] std::size_t dim() const noexcept { return amps_.size(); }
    [[nodiscard]] const Amplitudes &amplitudes() const noexcept {
        return amps_;
    }
    [[nodiscard]] std::span<const cplx> span() const noexcept {
        return amps_;
    }
    [[nodiscard]] cplx operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] double norm_squared() const {
        double s = 0.0;
        for (const auto &c : amps_) {
            s += std::norm(c);
        }
        return s;
    }

    /// Mutable access for in-place unitary kernels.
    Amplitudes &mutable_amplitudes() noexcept { return amps_; }

  private:
    std::size_t n_ = 0;
    Amplitudes amps_;
};

/// |0> (x) |s> or |1> (x) |s>: one extra leading qubit.
inline StateVector prepend_qubit(const StateVector &s, unsigned bit) {
    detail::require(bit <= 1, "prepend_qubit: bit must be 0 or 1");
    Amplitudes a(2 * s.dim(), cplx{0.0, 0.0});
    std::copy(s.amplitudes().begin(), s.amplitudes().end(),
              a.begin() + static_cast<std::ptrdiff_t>(bit * s.dim()));
    return StateVector(s.n_qubits() + 1, std::move(a));
}

/// <a|b>, conjugate-linear in a.
inline cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) {
        throw SizeMismatch("inner: vectors have different lengths");
    }
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

inline cplx inner(const StateVector &a, const StateVector &b) {
    return inner(a.span(), b.span());
}

namespace kernels {

inline void check_size(std::size_t len, const PauliString &p) {
    if (len != (std::size_t{1} << p.n_qubits())) {
        throw SizeMismatch("Pauli on " + std::to_string(p.n_qubits()) +
                           " qubits applied to vector of length " +
                           std::to_string(len));
    }
}

/// out = sigma(p) in, out must not alias in.
inline void apply_pauli(std::span<const cplx> in, std::span<cplx> out,
                        const PauliString &p) {
    check_size(in.size(), p);
    const std::uint64_t x = p.x_mask();
    const std::uint64_t z = p.z_mask();
    const cplx base = i_pow(p.phase_exp() + p.y_count());
    for (std::uint64_t i = 0; i < in.size(); ++i) {
        const bool odd = (std::popcount(i & z) & 1) != 0;
        out[i ^ x] = odd ? -base * in[i] : base * in[i];
    }
}

/// out += coeff * sigma(p) in.
inline void accumulate_pauli(std::span<const cplx> in, std::span<cplx> out,
                             const PauliString &p, cplx coeff) {
    check_size(in.size(), p);
    const std::uint64_t x = p.x_mask();
    const std::uint64_t z = p.z_mask();
    const cplx base = coeff * i_pow(p.phase_exp() + p.y_count());
    for (std::uint64_t i = 0; i < in.size(); ++i) {
        const bool odd = (std::popcount(i & z) & 1) != 0;
        out[i ^ x] += odd ? -base * in[i] : base * in[i];
    }
}

/// v <- exp(-i theta P) v in place, for a Hermitian string P (P^2 = I).
inline void apply_pauli_exponential(std::span<cplx> v, const PauliString &p,
                                    double theta) {
    check_size(v.size(), p);
    if (p.phase_exp() != 0) {
        throw InvalidArgument("apply_pauli_exponential: string must carry no "
                              "stored phase");
    }
    const double c = std::cos(theta);
    const cplx ms{0.0, -std::sin(theta)};
    const std::uint64_t x = p.x_mask();
    const std::uint64_t z = p.z_mask();
    const cplx base = i_pow(p.y_count());
    auto phase = [&](std::uint64_t i) {
        return (std::popcount(i & z) & 1) != 0 ? -base : base;
    };
    if (x == 0) {
        for (std::uint64_t i = 0; i < v.size(); ++i) {
            v[i] = (c + ms * phase(i)) * v[i];
        }
        return;
    }
    // Pairs (i, j = i ^ x), visited once via the top set bit of x.
    const std::uint64_t pivot = std::uint64_t{1}
                                << (63 - std::countl_zero(x));
    for (std::uint64_t i = 0; i < v.size(); ++i) {
        if ((i & pivot) != 0) {
            continue;
        }
        const std::uint64_t j = i ^ x;
        const cplx vi = v[i];
        const cplx vj = v[j];
        // (P v)[j] = phase(i) v[i], (P v)[i] = phase(j) v[j]
        v[i] = c * vi + ms * phase(j) * vj;
        v[j] = c * vj + ms * phase(i) * vi;
    }
}

/// out = A in for a Pauli operator A. Result is generally not normalized.
inline void apply_operator(std::span<const cplx> in, std::span<cplx> out,
                           const PauliOperator &a) {
    if (in.size() != (std::size_t{1} << a.n_qubits()) ||
        out.size() != in.size()) {
        throw SizeMismatch("apply_operator: operator on " +
                           std::to_string(a.n_qubits()) +
                           " qubits applied to vector of length " +
                           std::to_string(in.size()));
    }
    std::fill(out.begin(), out.end(), cplx{0.0, 0.0});
    for (const auto &t : a.terms()) {
        accumulate_pauli(in, out, t.string, t.coeff);
    }
}

} // namespace kernels

} // namespace notrap
