// Copyright 2026 the qtrack developers.
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qtrack/errors.hpp"

namespace qtrack {

//! One sparse quadratic entry. Convention: i < j for couplings, i == j allowed
//! only where a diagonal is meaningful (QUBO linear terms).
struct Coupling {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    double value = 0.0;

    friend bool operator==(const Coupling&, const Coupling&) = default;
};

namespace detail {

//! Sorts entries by (i, j), merges duplicates by summing, drops exact zeros.
//! Off-diagonal keys are folded to i < j first.
inline std::vector<Coupling> normalize_couplings(std::vector<Coupling> entries,
                                                 std::size_t n, bool allow_diagonal) {
    for (auto& e : entries) {
        if (e.i > e.j) std::swap(e.i, e.j);
        if (!allow_diagonal && e.i == e.j)
            throw ContractViolation("self-coupling (" + std::to_string(e.i) + "," +
                                    std::to_string(e.j) + ") is not allowed");
        if (e.j >= n)
            throw ContractViolation("coupling index " + std::to_string(e.j) +
                                    " out of range for size " + std::to_string(n));
        if (!std::isfinite(e.value))
            throw ContractViolation("non-finite coupling value");
    }
    std::sort(entries.begin(), entries.end(), [](const Coupling& a, const Coupling& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    std::vector<Coupling> out;
    out.reserve(entries.size());
    for (const auto& e : entries) {
        if (!out.empty() && out.back().i == e.i && out.back().j == e.j)
            out.back().value += e.value;
        else
            out.push_back(e);
    }
    std::erase_if(out, [](const Coupling& e) { return e.value == 0.0; });
    return out;
}

inline const Coupling* find_entry(const std::vector<Coupling>& entries,
                                  std::uint32_t i, std::uint32_t j) {
    auto it = std::lower_bound(entries.begin(), entries.end(), std::pair{i, j},
                               [](const Coupling& e, const std::pair<std::uint32_t, std::uint32_t>& k) {
                                   return e.i != k.first ? e.i < k.first : e.j < k.second;
                               });
    if (it != entries.end() && it->i == i && it->j == j) return &*it;
    return nullptr;
}

inline void insert_entry(std::vector<Coupling>& entries, std::uint32_t i,
                         std::uint32_t j, double value) {
    auto it = std::lower_bound(entries.begin(), entries.end(), std::pair{i, j},
                               [](const Coupling& e, const std::pair<std::uint32_t, std::uint32_t>& k) {
                                   return e.i != k.first ? e.i < k.first : e.j < k.second;
                               });
    if (it != entries.end() && it->i == i && it->j == j) {
        it->value += value;
        if (it->value == 0.0) entries.erase(it);
    } else if (value != 0.0) {
        entries.insert(it, Coupling{i, j, value});
    }
}

}  // namespace detail

//! Vector of spins, each +1 or -1.
struct SpinState {
    std::vector<std::int8_t> s;

    std::size_t size() const { return s.size(); }
    friend bool operator==(const SpinState&, const SpinState&) = default;

    void validate() const {
        for (auto v : s)
            if (v != 1 && v != -1) throw ContractViolation("spin value must be +1 or -1");
    }
};

//! Vector of binary variables, each 0 or 1.
struct BinaryState {
    std::vector<std::uint8_t> y;

    std::size_t size() const { return y.size(); }
    friend bool operator==(const BinaryState&, const BinaryState&) = default;

    void validate() const {
        for (auto v : y)
            if (v != 0 && v != 1) throw ContractViolation("binary value must be 0 or 1");
    }
};

//! y = (1 + s) / 2
inline BinaryState to_binary(const SpinState& s) {
    BinaryState b;
    b.y.reserve(s.size());
    for (auto v : s.s) b.y.push_back(v > 0 ? 1 : 0);
    return b;
}

//! s = 2y - 1
inline SpinState to_spin(const BinaryState& b) {
    SpinState s;
    s.s.reserve(b.size());
    for (auto v : b.y) s.s.push_back(v ? 1 : -1);
    return s;
}

//! Pairwise spin model E = sum_{i<j} J_ij s_i s_j + sum_i h_i s_i.
//!
//! No global minus sign: solvers minimize the expression exactly as stored.
//! Couplings are kept strictly upper-triangular; symmetric input is folded.
class IsingProblem {
  public:
    IsingProblem() = default;
    explicit IsingProblem(std::size_t n) : h_(n, 0.0) {}
    IsingProblem(std::size_t n, std::vector<double> fields, std::vector<Coupling> couplings)
        : h_(std::move(fields)),
          j_(detail::normalize_couplings(std::move(couplings), n, /*allow_diagonal=*/false)) {
        if (h_.size() != n) throw ContractViolation("field vector length != n");
        for (double v : h_)
            if (!std::isfinite(v)) throw ContractViolation("non-finite field value");
    }

    std::size_t size() const { return h_.size(); }

    void set_field(std::uint32_t i, double v) {
        check_index(i);
        if (!std::isfinite(v)) throw ContractViolation("non-finite field value");
        h_[i] = v;
    }
    double field(std::uint32_t i) const {
        check_index(i);
        return h_[i];
    }
    const std::vector<double>& fields() const { return h_; }

    //! Adds v to J_ij; (j, i) is folded onto (i, j). i == j is rejected.
    void add_coupling(std::uint32_t i, std::uint32_t j, double v) {
        if (i == j) throw ContractViolation("self-coupling is not allowed");
        check_index(i);
        check_index(j);
        if (!std::isfinite(v)) throw ContractViolation("non-finite coupling value");
        if (i > j) std::swap(i, j);
        detail::insert_entry(j_, i, j, v);
    }
    double coupling(std::uint32_t i, std::uint32_t j) const {
        if (i > j) std::swap(i, j);
        const auto* e = detail::find_entry(j_, i, j);
        return e ? e->value : 0.0;
    }
    //! Sorted by (i, j), zero-free.
    const std::vector<Coupling>& couplings() const { return j_; }

    friend bool operator==(const IsingProblem&, const IsingProblem&) = default;

  private:
    void check_index(std::uint32_t i) const {
        if (i >= h_.size()) throw ContractViolation("spin index out of range");
    }

    std::vector<double> h_;
    std::vector<Coupling> j_;
};

//! Binary quadratic model E = sum_{i<=j} Q_ij y_i y_j + offset.
//! Diagonal entries are the linear terms (y_i^2 == y_i).
class QuboProblem {
  public:
    QuboProblem() = default;
    explicit QuboProblem(std::size_t n, double offset = 0.0) : n_(n), offset_(offset) {}
    QuboProblem(std::size_t n, std::vector<Coupling> entries, double offset = 0.0)
        : n_(n),
          q_(detail::normalize_couplings(std::move(entries), n, /*allow_diagonal=*/true)),
          offset_(offset) {
        if (!std::isfinite(offset_)) throw ContractViolation("non-finite offset");
    }

    std::size_t size() const { return n_; }
    double offset() const { return offset_; }
    void set_offset(double v) {
        if (!std::isfinite(v)) throw ContractViolation("non-finite offset");
        offset_ = v;
    }

    //! Adds v to Q_ij; (j, i) folds onto (i, j); i == j is the linear term.
    void add_entry(std::uint32_t i, std::uint32_t j, double v) {
        if (i > j) std::swap(i, j);
        if (j >= n_) throw ContractViolation("variable index out of range");
        if (!std::isfinite(v)) throw ContractViolation("non-finite entry value");
        detail::insert_entry(q_, i, j, v);
    }
    double entry(std::uint32_t i, std::uint32_t j) const {
        if (i > j) std::swap(i, j);
        const auto* e = detail::find_entry(q_, i, j);
        return e ? e->value : 0.0;
    }
    //! Sorted by (i, j), zero-free; diagonal entries carry the linear terms.
    const std::vector<Coupling>& entries() const { return q_; }

    friend bool operator==(const QuboProblem&, const QuboProblem&) = default;

  private:
    std::size_t n_ = 0;
    std::vector<Coupling> q_;
    double offset_ = 0.0;
};

//! E = sum_{i<j} J_ij s_i s_j + sum_i h_i s_i
inline double ising_energy(const IsingProblem& p, const SpinState& state) {
    if (state.size() != p.size())
        throw ContractViolation("spin state length does not match problem size");
    double e = 0.0;
    for (const auto& c : p.couplings())
        e += c.value * state.s[c.i] * state.s[c.j];
    for (std::uint32_t i = 0; i < p.size(); ++i)
        e += p.fields()[i] * state.s[i];
    return e;
}

//! E = sum_{i<=j} Q_ij y_i y_j + offset
inline double qubo_energy(const QuboProblem& p, const BinaryState& state) {
    if (state.size() != p.size())
        throw ContractViolation("binary state length does not match problem size");
    double e = p.offset();
    for (const auto& c : p.entries())
        e += c.value * state.y[c.i] * state.y[c.j];
    return e;
}

//! Quadratic form of the squared linear polynomial (sum_i a_i x_i)^2 in
//! upper-triangular representation: Q_ii = a_i^2, Q_ij = 2 a_i a_j for i < j.
//! The form value equals the squared polynomial on every binary assignment.
inline QuboProblem square_polynomial(const std::vector<double>& coeffs) {
    if (coeffs.empty()) throw ContractViolation("coefficient vector must be non-empty");
    const auto n = static_cast<std::uint32_t>(coeffs.size());
    std::vector<Coupling> q;
    q.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (std::uint32_t i = 0; i < n; ++i) {
        q.push_back({i, i, coeffs[i] * coeffs[i]});
        for (std::uint32_t j = i + 1; j < n; ++j)
            q.push_back({i, j, 2.0 * (coeffs[i] * coeffs[j])});
    }
    return QuboProblem(n, std::move(q), 0.0);
}

//! The same form as a dense symmetric matrix, row-major: M[i*n+j] = a_i a_j.
inline std::vector<double> square_polynomial_symmetric(const std::vector<double>& coeffs) {
    const std::size_t n = coeffs.size();
    std::vector<double> m(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i * n + j] = coeffs[i] * coeffs[j];
    return m;
}

//! x^T M x for a dense symmetric matrix, traversed so that the off-diagonal
//! mirror entries (i,j) and (j,i) are added as one grouped term. With
//! M = square_polynomial_symmetric(a) this reproduces the upper-triangular
//! form value bit for bit, since M_ij + M_ji == 2 a_i a_j exactly in IEEE.
inline double symmetric_form_value(const std::vector<double>& m,
                                   const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (m.size() != n * n) throw ContractViolation("matrix/vector size mismatch");
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        e += m[i * n + i] * x[i] * x[i];
        for (std::size_t j = i + 1; j < n; ++j)
            e += (m[i * n + j] + m[j * n + i]) * x[i] * x[j];
    }
    return e;
}

//! Substitutes s = 2y - 1 into the spin energy and collects terms:
//!   Q_ij     = 4 J_ij                         (i < j)
//!   Q_ii     = 2 h_i - 2 sum_j J_ij
//!   offset   = sum_{i<j} J_ij - sum_i h_i
//! so that ising_energy(p, s) == qubo_energy(result, (1+s)/2) for every s.
inline QuboProblem ising_to_qubo(const IsingProblem& p) {
    const auto n = p.size();
    std::vector<double> row_sum(n, 0.0);
    double j_total = 0.0;
    std::vector<Coupling> q;
    q.reserve(p.couplings().size() + n);
    for (const auto& c : p.couplings()) {
        q.push_back({c.i, c.j, 4.0 * c.value});
        row_sum[c.i] += c.value;
        row_sum[c.j] += c.value;
        j_total += c.value;
    }
    double h_total = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
        q.push_back({i, i, 2.0 * p.fields()[i] - 2.0 * row_sum[i]});
        h_total += p.fields()[i];
    }
    return QuboProblem(n, std::move(q), j_total - h_total);
}

//! An Ising problem together with the constant left over by a transform.
struct IsingWithOffset {
    IsingProblem problem;
    double offset = 0.0;
};

//! Exact inverse of ising_to_qubo: substitutes y = (1 + s) / 2.
//!   J_ij   = Q_ij / 4                          (i < j)
//!   h_i    = Q_ii / 2 + sum_{j != i} Q_ij / 4
//!   offset = C + sum_{i<j} Q_ij / 4 + sum_i Q_ii / 2
inline IsingWithOffset qubo_to_ising(const QuboProblem& p) {
    const auto n = p.size();
    std::vector<double> h(n, 0.0);
    std::vector<Coupling> j;
    double offset = p.offset();
    for (const auto& c : p.entries()) {
        if (c.i == c.j) {
            h[c.i] += c.value / 2.0;
            offset += c.value / 2.0;
        } else {
            j.push_back({c.i, c.j, c.value / 4.0});
            h[c.i] += c.value / 4.0;
            h[c.j] += c.value / 4.0;
            offset += c.value / 4.0;
        }
    }
    return {IsingProblem(n, std::move(h), std::move(j)), offset};
}

}  // namespace qtrack
