#pragma once

#include <cmath>
#include <numeric>
#include <vector>

#include "stp/quotient.hpp"

namespace stp {

// <x, y> = <A ⊗ I_{t/m_A}, B ⊗ I_{t/m_B}>_F with A, B the irreducible reps
// and t = lcm(m_A, m_B). Representative-sensitive, hence defined on classes.
template <Scalar T>
T inner(const MatrixClass<T>& x, const MatrixClass<T>& y)
{
    detail::require_same_mu(x, y, "inner");
    const std::size_t t = std::lcm(x.rep().rows(), y.rep().rows());
    return frobenius_inner(lift(x.rep(), t / x.rep().rows()), lift(y.rep(), t / y.rep().rows()));
}

template <Scalar T>
T norm_squared(const MatrixClass<T>& x)
{
    return frobenius_inner(x.rep(), x.rep());
}

template <Scalar T>
double norm(const MatrixClass<T>& x)
{
    return std::sqrt(scalar_traits<T>::to_double(norm_squared(x)));
}

template <Scalar T>
T dist_squared(const MatrixClass<T>& x, const MatrixClass<T>& y, const Tolerance& tol = {})
{
    return norm_squared(class_sub(x, y, tol));
}

template <Scalar T>
double dist(const MatrixClass<T>& x, const MatrixClass<T>& y, const Tolerance& tol = {})
{
    return norm(class_sub(x, y, tol));
}

// ---------------------------------------------------------------------------
// Non-convergent Cauchy sequence.
//
// A_1 has no zero entries, A_n = delta_n(A_{n-1} ⊗ I_2), where delta_n
// replaces zeros by exp(-2^{n-1}). All class arithmetic on the sequence uses a
// purely relative tolerance: fill values drop far below any absolute floor.

inline constexpr int cauchy_max_n = 9;

inline Tolerance cauchy_tolerance() { return Tolerance::relative_only(); }

// exp(-2^{n-1}), i.e. 1 / 2^{2^{n-1}/ln 2}.
inline double fill_value(int n)
{
    return std::exp(-std::ldexp(1.0, n - 1));
}

inline Matrix<double> delta_n(const Matrix<double>& a, int n)
{
    if (n < 1 || n > cauchy_max_n) {
        throw domain_error("out_of_range", "delta_n: n must be in [1, 9] (binary64 underflow guard)");
    }
    const double fill = fill_value(n);
    Matrix<double> out = a;
    for (auto& v : out.values()) {
        if (v == 0.0) v = fill;
    }
    return out;
}

struct CauchyConfig {
    Matrix<double> a1;
    int n_max = 6;

    void validate() const
    {
        if (n_max < 1 || n_max > cauchy_max_n) {
            throw domain_error("out_of_range", "cauchy: n_max must be in [1, 9]");
        }
        for (double v : a1.values()) {
            if (v == 0.0) throw domain_error("zero_entry", "cauchy: A1 must have no zero entries");
        }
    }
};

// <A_1>, ..., <A_{n_max}>. Each A_n is checked to be its own irreducible rep.
inline std::vector<MatrixClass<double>> cauchy_sequence(const CauchyConfig& cfg)
{
    cfg.validate();
    const auto tol = cauchy_tolerance();
    std::vector<MatrixClass<double>> seq;
    Matrix<double> a = cfg.a1;
    for (int n = 1; n <= cfg.n_max; ++n) {
        if (n > 1) a = delta_n(lift(a, 2), n);
        auto cls = canonicalize(a, tol);
        if (cls.rep().shape() != a.shape()) {
            throw domain_error("reducible_term", "cauchy: A_" + std::to_string(n) + " is reducible");
        }
        seq.push_back(std::move(cls));
    }
    return seq;
}

// d(<A_n>, <A_{n+1}>) = sqrt(2^{2n-1} p q) e^{-2^n}, where A_1 is p × q.
inline double predicted_gap(int n, std::size_t p, std::size_t q)
{
    return std::sqrt(std::ldexp(static_cast<double>(p * q), 2 * n - 1)) * std::exp(-std::ldexp(1.0, n));
}

// a = sqrt(2^{-ln 2}) in (0, 1).
inline double tail_ratio() { return std::sqrt(std::pow(2.0, -std::log(2.0))); }

// Upper bound on d(<A_n>, <A_{n+m}>) for every m >= 1:
// sqrt(p q 2^{-1-2/ln 2}) a^{n^2} / (1 - a).
inline double tail_bound(int n, std::size_t p, std::size_t q)
{
    const double a = tail_ratio();
    const double c = std::sqrt(static_cast<double>(p * q) * std::pow(2.0, -1.0 - 2.0 / std::log(2.0)));
    return c * std::pow(a, static_cast<double>(n) * n) / (1.0 - a);
}

struct GapReport {
    int n = 1;
    Shape size;
    double gap_measured = 0.0;
    double gap_predicted = 0.0;
    double rel_err = 0.0;
};

// One row per consecutive pair (A_n, A_{n+1}); p × q is the shape of A_1.
inline std::vector<GapReport> gap_reports(const std::vector<MatrixClass<double>>& seq)
{
    std::vector<GapReport> out;
    if (seq.empty()) return out;
    const auto tol = cauchy_tolerance();
    const std::size_t p = seq.front().rep().rows();
    const std::size_t q = seq.front().rep().cols();
    for (std::size_t idx = 0; idx + 1 < seq.size(); ++idx) {
        GapReport r;
        r.n = static_cast<int>(idx) + 1;
        r.size = seq[idx].rep().shape();
        r.gap_measured = dist(seq[idx], seq[idx + 1], tol);
        r.gap_predicted = predicted_gap(r.n, p, q);
        r.rel_err = std::fabs(r.gap_measured - r.gap_predicted) / r.gap_predicted;
        out.push_back(r);
    }
    return out;
}

// d(<A_m>, <A_n>) for n = m+2 .. len. Each value should exceed e^{-2^m} and
// the sequence should be nondecreasing.
inline std::vector<double> nonconvergence_probe(const std::vector<MatrixClass<double>>& seq, int m)
{
    if (m < 1 || static_cast<std::size_t>(m) + 2 > seq.size()) {
        throw domain_error("out_of_range", "nonconvergence_probe: need 1 <= m and m + 2 <= sequence length");
    }
    const auto tol = cauchy_tolerance();
    std::vector<double> out;
    for (std::size_t n = static_cast<std::size_t>(m) + 2; n <= seq.size(); ++n) {
        out.push_back(dist(seq[m - 1], seq[n - 1], tol));
    }
    return out;
}

inline double nonconvergence_floor(int m) { return std::exp(-std::ldexp(1.0, m)); }

} // namespace stp
