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
 * Pauli strings in symplectic (x, z) form and real-coefficient Pauli
 * operators.
 *
 * Qubit 0 is the leftmost tensor factor and maps to the most significant bit
 * of a computational-basis index, so the string "XZ" is kron(X, Z). Masks are
 * stored in basis-index bit positions so that kernels can act on amplitudes
 * with plain integer arithmetic.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "notrap/error.hpp"

namespace notrap {

using cplx = std::complex<double>;

inline constexpr std::size_t kMaxQubits = 62;
inline constexpr std::size_t kDenseGuardQubits = 12;

/** i^k for k mod 4. */
inline cplx i_pow(unsigned k) {
    switch (k & 3U) {
    case 0:
        return {1.0, 0.0};
    case 1:
        return {0.0, 1.0};
    case 2:
        return {-1.0, 0.0};
    default:
        return {0.0, -1.0};
    }
}

/**
 * A Pauli string i^phase_exp * P_0 (x) P_1 (x) ... (x) P_{n-1}.
 *
 * Qubit j carries X iff only its x bit is set, Z iff only its z bit is set,
 * Y iff both are set.
 */
class PauliString {
  public:
    PauliString() = default;

    explicit PauliString(std::size_t n_qubits, std::uint64_t x_mask = 0,
                         std::uint64_t z_mask = 0, unsigned phase_exp = 0)
        : n_(n_qubits), x_(x_mask), z_(z_mask), phase_(phase_exp & 3U) {
        detail::require(n_qubits <= kMaxQubits,
                        "PauliString: too many qubits");
        const std::uint64_t full = full_mask(n_qubits);
        detail::require((x_mask & ~full) == 0 && (z_mask & ~full) == 0,
                        "PauliString: mask has bits beyond n_qubits");
    }

    static PauliString identity(std::size_t n_qubits) {
        return PauliString(n_qubits);
    }

    /// Parse a string over {I,X,Y,Z}; character j acts on qubit j.
    static PauliString from_string(std::string_view s) {
        PauliString p(s.size());
        for (std::size_t q = 0; q < s.size(); ++q) {
            p.set(q, s[q]);
        }
        return p;
    }

    /// Single-qubit Pauli `op` on `qubit`, identity elsewhere.
    static PauliString single(std::size_t n_qubits, std::size_t qubit,
                              char op) {
        PauliString p(n_qubits);
        p.set(qubit, op);
        return p;
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_; }
    [[nodiscard]] std::uint64_t x_mask() const noexcept { return x_; }
    [[nodiscard]] std::uint64_t z_mask() const noexcept { return z_; }
    [[nodiscard]] unsigned phase_exp() const noexcept { return phase_; }

    [[nodiscard]] std::uint64_t bit(std::size_t qubit) const {
        detail::require(qubit < n_, "PauliString: qubit out of range");
        return std::uint64_t{1} << (n_ - 1 - qubit);
    }

    [[nodiscard]] char at(std::size_t qubit) const {
        const std::uint64_t b = bit(qubit);
        const bool xb = (x_ & b) != 0;
        const bool zb = (z_ & b) != 0;
        if (xb && zb) {
            return 'Y';
        }
        if (xb) {
            return 'X';
        }
        return zb ? 'Z' : 'I';
    }

    void set(std::size_t qubit, char op) {
        const std::uint64_t b = bit(qubit);
        x_ &= ~b;
        z_ &= ~b;
        switch (op) {
        case 'I':
            break;
        case 'X':
            x_ |= b;
            break;
        case 'Y':
            x_ |= b;
            z_ |= b;
            break;
        case 'Z':
            z_ |= b;
            break;
        default:
            throw ParseError(std::string("invalid Pauli character '") + op +
                             "'");
        }
    }

    /// Letters only; the phase is not rendered.
    [[nodiscard]] std::string to_string() const {
        std::string s(n_, 'I');
        for (std::size_t q = 0; q < n_; ++q) {
            s[q] = at(q);
        }
        return s;
    }

    [[nodiscard]] PauliString without_phase() const {
        return PauliString(n_, x_, z_, 0);
    }

    [[nodiscard]] PauliString with_phase(unsigned phase_exp) const {
        return PauliString(n_, x_, z_, phase_exp);
    }

    /// Number of Y factors; sigma(x,z) = i^{y_count} X^x Z^z.
    [[nodiscard]] unsigned y_count() const noexcept {
        return static_cast<unsigned>(std::popcount(x_ & z_));
    }

    /// Hermitian iff the global phase is real.
    [[nodiscard]] bool is_hermitian() const noexcept {
        return (phase_ & 1U) == 0;
    }

    friend bool operator==(const PauliString &a, const PauliString &b) {
        return a.n_ == b.n_ && a.x_ == b.x_ && a.z_ == b.z_ &&
               a.phase_ == b.phase_;
    }

    static std::uint64_t full_mask(std::size_t n) {
        return n == 0 ? 0 : (n >= 64 ? ~std::uint64_t{0}
                                     : (std::uint64_t{1} << n) - 1);
    }

  private:
    std::size_t n_ = 0;
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
    unsigned phase_ = 0;
};

/** Matrix product sigma(p) * sigma(q), phase tracked exactly. */
inline PauliString multiply(const PauliString &p, const PauliString &q) {
    if (p.n_qubits() != q.n_qubits()) {
        throw SizeMismatch("multiply: Pauli strings act on different qubit "
                           "counts");
    }
    // i^{y1} X^{x1} Z^{z1} i^{y2} X^{x2} Z^{z2}
    //   = i^{y1+y2} (-1)^{|z1 & x2|} X^{x1^x2} Z^{z1^z2}
    const std::uint64_t x = p.x_mask() ^ q.x_mask();
    const std::uint64_t z = p.z_mask() ^ q.z_mask();
    const auto anti = static_cast<unsigned>(
        std::popcount(p.z_mask() & q.x_mask()));
    const auto y3 = static_cast<unsigned>(std::popcount(x & z));
    const unsigned phase = p.phase_exp() + q.phase_exp() + p.y_count() +
                           q.y_count() + 2 * anti + 4 * 64 - y3;
    return PauliString(p.n_qubits(), x, z, phase & 3U);
}

/// Number of non-identity factors.
inline std::size_t weight(const PauliString &p) {
    return static_cast<std::size_t>(std::popcount(p.x_mask() | p.z_mask()));
}

inline bool commutes(const PauliString &p, const PauliString &q) {
    const auto s = std::popcount(p.x_mask() & q.z_mask()) +
                   std::popcount(p.z_mask() & q.x_mask());
    return (s & 1) == 0;
}

/** p (x) q, with p on the leading qubits. */
inline PauliString tensor(const PauliString &p, const PauliString &q) {
    const std::size_t nq = q.n_qubits();
    return PauliString(p.n_qubits() + nq, (p.x_mask() << nq) | q.x_mask(),
                       (p.z_mask() << nq) | q.z_mask(),
                       p.phase_exp() + q.phase_exp());
}

struct PauliTerm {
    double coeff = 0.0;
    PauliString string;
};

/**
 * Real linear combination sum_k g_k P_k of phase-free Pauli strings.
 *
 * Terms keep first-insertion order (it fixes the Trotter product order).
 * Adding a string with phase -1 folds the sign into the coefficient; duplicate
 * strings are merged; prune() drops the zeros that merging can leave.
 */
class PauliOperator {
  public:
    PauliOperator() = default;
    explicit PauliOperator(std::size_t n_qubits) : n_(n_qubits) {}

    PauliOperator(std::size_t n_qubits,
                  const std::vector<std::pair<double, std::string>> &terms)
        : n_(n_qubits) {
        for (const auto &[g, s] : terms) {
            add(g, PauliString::from_string(s));
        }
    }

    void add(double coeff, const PauliString &p) {
        if (p.n_qubits() != n_) {
            throw SizeMismatch("PauliOperator: term acts on " +
                               std::to_string(p.n_qubits()) +
                               " qubits, operator on " + std::to_string(n_));
        }
        if (!p.is_hermitian()) {
            throw InvalidArgument(
                "PauliOperator: term has imaginary phase; coefficients must "
                "be real");
        }
        const double g = p.phase_exp() == 2 ? -coeff : coeff;
        const Key key{p.x_mask(), p.z_mask()};
        if (auto it = index_.find(key); it != index_.end()) {
            terms_[it->second].coeff += g;
        } else {
            index_.emplace(key, terms_.size());
            terms_.push_back({g, p.without_phase()});
        }
    }

    /// Drops terms with |g| <= tol (exact zeros by default) and reindexes.
    void prune(double tol = 0.0) {
        std::vector<PauliTerm> kept;
        kept.reserve(terms_.size());
        for (const auto &t : terms_) {
            if (std::abs(t.coeff) > tol) {
                kept.push_back(t);
            }
        }
        terms_ = std::move(kept);
        index_.clear();
        for (std::size_t k = 0; k < terms_.size(); ++k) {
            index_.emplace(Key{terms_[k].string.x_mask(),
                               terms_[k].string.z_mask()},
                           k);
        }
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
    [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }
    [[nodiscard]] const std::vector<PauliTerm> &terms() const noexcept {
        return terms_;
    }
    [[nodiscard]] const PauliTerm &operator[](std::size_t k) const {
        return terms_.at(k);
    }

    [[nodiscard]] std::vector<double> coefficients() const {
        std::vector<double> g;
        g.reserve(terms_.size());
        for (const auto &t : terms_) {
            g.push_back(t.coeff);
        }
        return g;
    }

    /// sum_k |g_k|, an upper bound on the spectral norm.
    [[nodiscard]] double one_norm() const {
        double s = 0.0;
        for (const auto &t : terms_) {
            s += std::abs(t.coeff);
        }
        return s;
    }

    [[nodiscard]] std::size_t max_weight() const {
        std::size_t k = 0;
        for (const auto &t : terms_) {
            k = std::max(k, weight(t.string));
        }
        return k;
    }

    [[nodiscard]] PauliOperator scaled(double factor) const {
        PauliOperator out(n_);
        for (const auto &t : terms_) {
            out.add(factor * t.coeff, t.string);
        }
        out.prune();
        return out;
    }

    /// Sub-operator made of the listed term indices, in the listed order.
    [[nodiscard]] PauliOperator subset(const std::vector<std::size_t> &idx) const {
        PauliOperator out(n_);
        for (std::size_t k : idx) {
            const auto &t = terms_.at(k);
            out.add(t.coeff, t.string);
        }
        return out;
    }

    /// prefix (x) this, applied term by term.
    [[nodiscard]] PauliOperator tensor_left(const PauliString &prefix) const {
        detail::require(prefix.is_hermitian(),
                        "tensor_left: prefix must have a real phase");
        PauliOperator out(prefix.n_qubits() + n_);
        for (const auto &t : terms_) {
            out.add(t.coeff, tensor(prefix, t.string));
        }
        return out;
    }

  private:
    struct Key {
        std::uint64_t x;
        std::uint64_t z;
        bool operator==(const Key &o) const { return x == o.x && z == o.z; }
    };
    struct KeyHash {
        std::size_t operator()(const Key &k) const noexcept {
            return std::hash<std::uint64_t>{}(k.x * 0x9E3779B97F4A7C15ULL ^
                                              (k.z + 0x632BE59BD9B4E019ULL));
        }
    };

    std::size_t n_ = 0;
    std::vector<PauliTerm> terms_;
    std::unordered_map<Key, std::size_t, KeyHash> index_;
};

/** Partition of operator term indices into groups S_u. */
struct TermGrouping {
    std::vector<std::vector<std::size_t>> groups;

    [[nodiscard]] std::size_t n_groups() const noexcept {
        return groups.size();
    }
};

enum class GroupingStrategy {
    /// Contiguous runs in term order, sizes differ by at most one.
    Contiguous,
    /// Term k goes to group k mod n_g.
    RoundRobin,
};

inline TermGrouping group_terms(const PauliOperator &op, std::size_t n_groups,
                                GroupingStrategy strategy =
                                    GroupingStrategy::Contiguous) {
    const std::size_t n_terms = op.size();
    if (n_groups < 1 || n_groups > n_terms) {
        throw InvalidArgument("group_terms: n_g must lie in [1, " +
                              std::to_string(n_terms) + "], got " +
                              std::to_string(n_groups));
    }
    TermGrouping g;
    g.groups.resize(n_groups);
    if (strategy == GroupingStrategy::RoundRobin) {
        for (std::size_t k = 0; k < n_terms; ++k) {
            g.groups[k % n_groups].push_back(k);
        }
        return g;
    }
    const std::size_t base = n_terms / n_groups;
    const std::size_t extra = n_terms % n_groups;
    std::size_t k = 0;
    for (std::size_t u = 0; u < n_groups; ++u) {
        const std::size_t len = base + (u < extra ? 1 : 0);
        for (std::size_t j = 0; j < len; ++j) {
            g.groups[u].push_back(k++);
        }
    }
    return g;
}

/// Disjoint, nonempty groups whose union is {0..n_terms-1}.
inline bool is_valid_grouping(const TermGrouping &g, std::size_t n_terms) {
    std::vector<char> seen(n_terms, 0);
    std::size_t total = 0;
    for (const auto &s : g.groups) {
        if (s.empty()) {
            return false;
        }
        for (std::size_t k : s) {
            if (k >= n_terms || seen[k]) {
                return false;
            }
            seen[k] = 1;
            ++total;
        }
    }
    return total == n_terms;
}

// ---------------------------------------------------------------------------
// Dense conversions (desk scale only)
// ---------------------------------------------------------------------------

namespace detail {
inline void require_dense_guard(std::size_t n_qubits, const char *who) {
    if (n_qubits > kDenseGuardQubits) {
        throw SizeGuardExceeded(std::string(who) + ": " +
                                std::to_string(n_qubits) +
                                " qubits exceeds dense guard of " +
                                std::to_string(kDenseGuardQubits));
    }
}

/// Amplitude factor of sigma(p)|i>, which equals that factor times |i ^ x>.
inline cplx basis_phase(const PauliString &p, std::uint64_t i) {
    const unsigned k = p.phase_exp() + p.y_count() +
                       2U * static_cast<unsigned>(
                                std::popcount(i & p.z_mask()));
    return i_pow(k);
}
} // namespace detail

inline Eigen::MatrixXcd to_dense(const PauliString &p) {
    detail::require_dense_guard(p.n_qubits(), "to_dense");
    const std::size_t dim = std::size_t{1} << p.n_qubits();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::uint64_t i = 0; i < dim; ++i) {
        m(static_cast<Eigen::Index>(i ^ p.x_mask()),
          static_cast<Eigen::Index>(i)) = detail::basis_phase(p, i);
    }
    return m;
}

inline Eigen::MatrixXcd to_dense(const PauliOperator &a) {
    detail::require_dense_guard(a.n_qubits(), "to_dense");
    const std::size_t dim = std::size_t{1} << a.n_qubits();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &t : a.terms()) {
        for (std::uint64_t i = 0; i < dim; ++i) {
            m(static_cast<Eigen::Index>(i ^ t.string.x_mask()),
              static_cast<Eigen::Index>(i)) +=
                t.coeff * detail::basis_phase(t.string, i);
        }
    }
    return m;
}

/// One complex coefficient per Pauli string.
struct ComplexPauliTerm {
    cplx coeff;
    PauliString string;
};

/**
 * Exact Pauli-basis projection c_P = Tr(P M) / 2^n of a square matrix whose
 * dimension is a power of two.
 *
 * For each x mask the coefficients over all z masks are one Walsh-Hadamard
 * transform of the diagonal band M(i, i ^ x), so the cost is O(n 4^n).
 * Coefficients with |c| <= tol are dropped.
 */
inline std::vector<ComplexPauliTerm>
pauli_decompose(const Eigen::MatrixXcd &m, double tol = 1e-14) {
    if (m.rows() != m.cols()) {
        throw InvalidArgument("pauli_decompose: matrix is not square");
    }
    const auto dim = static_cast<std::uint64_t>(m.rows());
    if (dim == 0 || !std::has_single_bit(dim)) {
        throw InvalidArgument("pauli_decompose: dimension " +
                              std::to_string(dim) + " is not a power of two");
    }
    const auto n = static_cast<std::size_t>(std::countr_zero(dim));
    detail::require_dense_guard(n, "pauli_decompose");

    std::vector<ComplexPauliTerm> out;
    std::vector<cplx> band(dim);
    for (std::uint64_t x = 0; x < dim; ++x) {
        // Tr(sigma(x,z) M) = i^{|x&z|} sum_i (-1)^{|i&z|} M(i, i^x)
        for (std::uint64_t i = 0; i < dim; ++i) {
            band[i] = m(static_cast<Eigen::Index>(i),
                        static_cast<Eigen::Index>(i ^ x));
        }
        for (std::uint64_t h = 1; h < dim; h <<= 1) {
            for (std::uint64_t i = 0; i < dim; i += h << 1) {
                for (std::uint64_t j = i; j < i + h; ++j) {
                    const cplx u = band[j];
                    const cplx v = band[j + h];
                    band[j] = u + v;
                    band[j + h] = u - v;
                }
            }
        }
        for (std::uint64_t z = 0; z < dim; ++z) {
            const cplx c = i_pow(static_cast<unsigned>(std::popcount(x & z))) *
                           band[z] / static_cast<double>(dim);
            if (std::abs(c) > tol) {
                out.push_back({c, PauliString(n, x, z)});
            }
        }
    }
    return out;
}

/**
 * Hermitian matrix to PauliOperator. Throws if any projection coefficient has
 * an imaginary part above `herm_tol`.
 */
inline PauliOperator to_pauli_operator(const Eigen::MatrixXcd &m,
                                       double tol = 1e-14,
                                       double herm_tol = 1e-10) {
    const auto terms = pauli_decompose(m, tol);
    const auto n = static_cast<std::size_t>(
        std::countr_zero(static_cast<std::uint64_t>(m.rows())));
    PauliOperator op(n);
    for (const auto &t : terms) {
        if (std::abs(t.coeff.imag()) > herm_tol) {
            throw InvalidArgument(
                "to_pauli_operator: matrix is not Hermitian (term " +
                t.string.to_string() + " has imaginary coefficient)");
        }
        if (std::abs(t.coeff.real()) > tol) {
            op.add(t.coeff.real(), t.string);
        }
    }
    return op;
}

/**
 * Embed a (possibly non-Hermitian) matrix A into a Hermitian operator on one
 * extra leading qubit: X (x) A_H + Y (x) (-i A_AH), with A_H = (A + A^dag)/2
 * and A_AH = (A - A^dag)/2. The result has A in its lower-left block and
 * A^dag in its upper-right block.
 */
inline PauliOperator hermitian_embed(const Eigen::MatrixXcd &a) {
    if (a.rows() != a.cols()) {
        throw InvalidArgument("hermitian_embed: matrix is not square");
    }
    const Eigen::MatrixXcd herm = (a + a.adjoint()) / 2.0;
    const Eigen::MatrixXcd anti = (a - a.adjoint()) / 2.0;
    const Eigen::MatrixXcd k = cplx(0.0, -1.0) * anti;
    const PauliOperator h_op = to_pauli_operator(herm);
    const PauliOperator k_op = to_pauli_operator(k);
    const std::size_t n = h_op.n_qubits();
    PauliOperator out(n + 1);
    for (const auto &t : h_op.terms()) {
        out.add(t.coeff, tensor(PauliString::from_string("X"), t.string));
    }
    for (const auto &t : k_op.terms()) {
        out.add(t.coeff, tensor(PauliString::from_string("Y"), t.string));
    }
    out.prune();
    return out;
}

/**
 * Pair form: A = H + iK with H, K Hermitian Pauli operators. Then A_H = H,
 * -i A_AH = K, and the embedding is X (x) H + Y (x) K.
 */
inline PauliOperator hermitian_embed(const PauliOperator &h,
                                     const PauliOperator &k) {
    if (h.n_qubits() != k.n_qubits()) {
        throw SizeMismatch("hermitian_embed: parts act on different qubit "
                           "counts");
    }
    PauliOperator out(h.n_qubits() + 1);
    for (const auto &t : h.terms()) {
        out.add(t.coeff, tensor(PauliString::from_string("X"), t.string));
    }
    for (const auto &t : k.terms()) {
        out.add(t.coeff, tensor(PauliString::from_string("Y"), t.string));
    }
    out.prune();
    return out;
}

} // namespace notrap
