#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "stp/quotient.hpp"

// The countable basis D_mu ∪ N_mu of the quotient space and the
// coordinate algorithm that expands any class in it.
//
// A basis element is the class of E^{p×q}_{kl} ⊗ E^{i×i}_{j1 j2} (all
// indices 1-based). Diagonal elements (j1 = j2) require gcd(i, j1) = 1;
// off-diagonal ones require i >= 2 and gcd(i, j1, j2) = 1. Those are exactly
// the tuples for which the Kronecker product is irreducible.

namespace stp {

struct BasisElement {
    Ratio mu;
    std::size_t k = 1;
    std::size_t l = 1;
    std::size_t i = 1;
    std::size_t j1 = 1;
    std::size_t j2 = 1;

    bool diagonal() const { return j1 == j2; }
    char kind() const { return diagonal() ? 'D' : 'N'; }

    // Enumeration order: (i, j1, j2, k, l).
    friend auto operator<=>(const BasisElement& a, const BasisElement& b)
    {
        return std::tie(a.mu, a.i, a.j1, a.j2, a.k, a.l) <=> std::tie(b.mu, b.i, b.j1, b.j2, b.k, b.l);
    }
    friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

inline std::string to_string(const BasisElement& e)
{
    std::string s(1, e.kind());
    s += "(k=" + std::to_string(e.k) + ",l=" + std::to_string(e.l) + ",i=" + std::to_string(e.i);
    if (e.diagonal()) {
        s += ",j=" + std::to_string(e.j1);
    } else {
        s += ",j1=" + std::to_string(e.j1) + ",j2=" + std::to_string(e.j2);
    }
    return s + ")";
}

// Index ranges only: 1 <= k <= p, 1 <= l <= q, 1 <= j1, j2 <= i.
inline bool indices_in_range(const Ratio& mu, std::size_t k, std::size_t l, std::size_t i, std::size_t j1,
                             std::size_t j2)
{
    return k >= 1 && k <= mu.p() && l >= 1 && l <= mu.q() && i >= 1 && j1 >= 1 && j1 <= i && j2 >= 1 && j2 <= i;
}

inline bool satisfies_gcd_condition(std::size_t i, std::size_t j1, std::size_t j2)
{
    if (j1 == j2) return std::gcd(i, j1) == 1;
    return i >= 2 && std::gcd(i, std::gcd(j1, j2)) == 1;
}

inline bool is_valid(const BasisElement& e)
{
    return indices_in_range(e.mu, e.k, e.l, e.i, e.j1, e.j2) && satisfies_gcd_condition(e.i, e.j1, e.j2);
}

inline void require_valid(const BasisElement& e)
{
    if (!is_valid(e)) throw domain_error("invalid_index", "not a basis element: " + to_string(e));
}

// E^{p×q}_{kl} ⊗ E^{i×i}_{j1 j2} as a plain matrix (no validity check).
template <Scalar T>
Matrix<T> unit_matrix(const Ratio& mu, std::size_t k, std::size_t l, std::size_t i, std::size_t j1, std::size_t j2)
{
    return Matrix<T>::unit(mu.p() * i, mu.q() * i, (k - 1) * i + (j1 - 1), (l - 1) * i + (j2 - 1));
}

template <Scalar T>
MatrixClass<T> unit_class(const BasisElement& e)
{
    require_valid(e);
    return canonicalize(unit_matrix<T>(e.mu, e.k, e.l, e.i, e.j1, e.j2));
}

// Greedy gcd chains. With S_n the sum of the first n-1 entries:
//   f_n = gcd(i, j1 - S_n [, j2 - S_n])   until the f entries sum to j1,
//   g_n = gcd(i, j1-1 - S_n [, j2-1 - S_n]) until the g entries sum to j1-1.
struct GcdChain {
    std::vector<std::size_t> f;
    std::vector<std::size_t> g;
};

namespace detail {

inline std::vector<std::size_t> greedy_chain(std::size_t i, std::size_t target, std::optional<std::size_t> other)
{
    std::vector<std::size_t> chain;
    std::size_t done = 0;
    while (done < target) {
        std::size_t step = std::gcd(i, target - done);
        if (other) step = std::gcd(step, *other - done);
        chain.push_back(step);
        done += step;
    }
    return chain;
}

} // namespace detail

inline GcdChain gcd_chain(std::size_t i, std::size_t j1, std::optional<std::size_t> j2 = std::nullopt)
{
    if (i == 0 || j1 == 0 || j1 > i || (j2 && (*j2 <= j1 || *j2 > i))) {
        throw domain_error("invalid_index", "gcd_chain: need 1 <= j1 <= i and j1 < j2 <= i");
    }
    GcdChain c;
    c.f = detail::greedy_chain(i, j1, j2);
    std::optional<std::size_t> j2m1;
    if (j2) j2m1 = *j2 - 1;
    c.g = detail::greedy_chain(i, j1 - 1, j2m1);
    return c;
}

// Finite-support expansion of a class in the basis. Zero coefficients are
// never stored.
struct Coordinates {
    Ratio mu;
    std::map<BasisElement, Rational> terms;

    void add(const BasisElement& e, const Rational& c)
    {
        if (sgn(c) == 0) return;
        auto [it, inserted] = terms.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) terms.erase(it);
        }
    }

    void add(const Coordinates& other, const Rational& factor)
    {
        for (const auto& [e, c] : other.terms) add(e, Rational(c * factor));
    }

    std::optional<Rational> coefficient(const BasisElement& e) const
    {
        auto it = terms.find(e);
        if (it == terms.end()) return std::nullopt;
        return it->second;
    }

    friend bool operator==(const Coordinates&, const Coordinates&) = default;
};

// Expansion of ⟨E^{p×q}_{kl} ⊗ E^{i×i}_{j1 j2}⟩ for any in-range indices:
// the f-chain terms enter with +1, the g-chain terms with -1.
inline Coordinates decompose_unit(const Ratio& mu, std::size_t k, std::size_t l, std::size_t i, std::size_t j1,
                                  std::size_t j2)
{
    if (!indices_in_range(mu, k, l, i, j1, j2)) {
        throw domain_error("invalid_index", "decompose_unit: index out of range");
    }
    Coordinates out{mu, {}};
    if (satisfies_gcd_condition(i, j1, j2)) {
        out.add(BasisElement{mu, k, l, i, j1, j2}, Rational(1));
        return out;
    }

    if (j1 == j2) {
        const auto chain = gcd_chain(i, j1);
        auto emit = [&](const std::vector<std::size_t>& steps, std::size_t start, int sign) {
            std::size_t done = 0;
            for (auto f : steps) {
                const std::size_t j = (start - done) / f;
                out.add(BasisElement{mu, k, l, i / f, j, j}, Rational(sign));
                done += f;
            }
        };
        emit(chain.f, j1, +1);
        emit(chain.g, j1 - 1, -1);
        return out;
    }

    // Off-diagonal: build the chain on (lo, hi) and put the indices back in
    // their original orientation.
    const bool swapped = j1 > j2;
    const std::size_t lo = std::min(j1, j2);
    const std::size_t hi = std::max(j1, j2);
    const auto chain = gcd_chain(i, lo, hi);
    auto emit = [&](const std::vector<std::size_t>& steps, std::size_t lo_start, std::size_t hi_start, int sign) {
        std::size_t done = 0;
        for (auto f : steps) {
            const std::size_t a = (lo_start - done) / f;
            const std::size_t b = (hi_start - done) / f;
            out.add(swapped ? BasisElement{mu, k, l, i / f, b, a} : BasisElement{mu, k, l, i / f, a, b},
                    Rational(sign));
            done += f;
        }
    };
    emit(chain.f, lo, hi, +1);
    emit(chain.g, lo - 1, hi - 1, -1);
    return out;
}

// Expands a class entry by entry. A rep of shape k0·p × k0·q has
// E^{k0p×k0q}_{IJ} = E^{p×q}_{kl} ⊗ E^{k0×k0}_{j1 j2} with
// I = (k-1)k0 + j1 and J = (l-1)k0 + j2.
inline Coordinates decompose_class(const MatrixClass<Rational>& x)
{
    const Ratio mu = x.mu();
    const std::size_t k0 = x.k0();
    const auto& a = x.rep();
    Coordinates out{mu, {}};
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (sgn(a(r, c)) == 0) continue;
            const std::size_t k = r / k0 + 1;
            const std::size_t j1 = r % k0 + 1;
            const std::size_t l = c / k0 + 1;
            const std::size_t j2 = c % k0 + 1;
            out.add(decompose_unit(mu, k, l, k0, j1, j2), a(r, c));
        }
    }
    return out;
}

// Sum of coeff · <unit(e)>. Every term is lifted straight to the common
// size R = lcm of the i indices (where unit(e) ⊗ I_{R/i} is a strided run
// of ones) and the total is canonicalized once; this is the same class as
// folding class_add over the terms.
inline MatrixClass<Rational> reconstruct(const Coordinates& coords)
{
    std::size_t big = 1;
    for (const auto& [e, c] : coords.terms) {
        if (e.mu != coords.mu) throw domain_error("ratio_mismatch", "coordinate term from another space");
        require_valid(e);
        big = std::lcm(big, e.i);
    }
    Matrix<Rational> acc(coords.mu.p() * big, coords.mu.q() * big);
    for (const auto& [e, c] : coords.terms) {
        const std::size_t s = big / e.i;
        const std::size_t r0 = (e.k - 1) * big + (e.j1 - 1) * s;
        const std::size_t c0 = (e.l - 1) * big + (e.j2 - 1) * s;
        for (std::size_t d = 0; d < s; ++d) acc(r0 + d, c0 + d) += c;
    }
    return canonicalize(acc);
}

// Truncation of D_mu ∪ N_mu to i <= i_max, ordered by (i, j1, j2, k, l).
inline std::vector<BasisElement> enumerate_basis(const Ratio& mu, std::size_t i_max)
{
    if (i_max == 0) throw domain_error("invalid_argument", "enumerate_basis: i_max must be >= 1");
    std::vector<BasisElement> out;
    for (std::size_t i = 1; i <= i_max; ++i) {
        for (std::size_t j1 = 1; j1 <= i; ++j1) {
            for (std::size_t j2 = 1; j2 <= i; ++j2) {
                if (!satisfies_gcd_condition(i, j1, j2)) continue;
                for (std::size_t k = 1; k <= mu.p(); ++k) {
                    for (std::size_t l = 1; l <= mu.q(); ++l) out.push_back({mu, k, l, i, j1, j2});
                }
            }
        }
    }
    return out;
}

// Lifts every representative to a common row count (lcm of all row counts)
// and flattens it; classes then become ordinary vectors.
struct LiftedSystem {
    std::vector<std::vector<Rational>> columns;
    std::vector<Rational> target;
};

inline LiftedSystem lift_to_common(const MatrixClass<Rational>* target, const std::vector<MatrixClass<Rational>>& set)
{
    std::optional<Ratio> mu;
    std::size_t rows = 1;
    auto visit = [&](const MatrixClass<Rational>& x) {
        if (mu && *mu != x.mu()) throw domain_error("ratio_mismatch", "span check across different spaces");
        mu = x.mu();
        rows = std::lcm(rows, x.rep().rows());
    };
    if (target) visit(*target);
    for (const auto& x : set) visit(x);

    auto flatten = [&](const MatrixClass<Rational>& x) { return vectorize(lift(x.rep(), rows / x.rep().rows())); };
    LiftedSystem sys;
    for (const auto& x : set) sys.columns.push_back(flatten(x));
    if (target) {
        sys.target = flatten(*target);
    } else if (!sys.columns.empty()) {
        sys.target.assign(sys.columns.front().size(), Rational(0));
    }
    return sys;
}

inline bool in_span(const MatrixClass<Rational>& target, const std::vector<MatrixClass<Rational>>& set)
{
    if (set.empty()) return target.is_zero();
    const auto sys = lift_to_common(&target, set);
    return solve_columns(sys.columns, sys.target).consistent;
}

inline bool independent(const std::vector<MatrixClass<Rational>>& set)
{
    if (set.empty()) return true;
    const auto sys = lift_to_common(nullptr, set);
    return column_rank(sys.columns) == set.size();
}

// Coefficients of `target` over `set` when uniquely determined.
inline std::optional<std::vector<Rational>> solve_in_span(const MatrixClass<Rational>& target,
                                                          const std::vector<MatrixClass<Rational>>& set)
{
    if (set.empty()) return std::nullopt;
    const auto sys = lift_to_common(&target, set);
    auto sol = solve_columns(sys.columns, sys.target);
    if (!sol.unique()) return std::nullopt;
    return sol.solution;
}

} // namespace stp
