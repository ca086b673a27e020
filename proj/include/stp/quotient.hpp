#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "stp/matrix.hpp"
#include "stp/ratio.hpp"
#include "stp/semi_tensor.hpp"

namespace stp {

// Distinct primes of n, ascending.
inline std::vector<std::size_t> prime_factors(std::size_t n)
{
    std::vector<std::size_t> out;
    for (std::size_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// True iff A = B ⊗ I_s for some B: every s×s block of A is a scalar multiple
// of I_s.
template <Scalar T>
bool splits_as_lift(const Matrix<T>& a, std::size_t s, const Tolerance& tol = {})
{
    if (s == 1) return true;
    if (a.rows() % s != 0 || a.cols() % s != 0) return false;
    const T zero(0);
    for (std::size_t bi = 0; bi < a.rows() / s; ++bi) {
        for (std::size_t bj = 0; bj < a.cols() / s; ++bj) {
            const T& head = a(bi * s, bj * s);
            for (std::size_t r = 0; r < s; ++r) {
                for (std::size_t c = 0; c < s; ++c) {
                    const T& v = a(bi * s + r, bj * s + c);
                    if (!scalar_equal(v, r == c ? head : zero, tol)) return false;
                }
            }
        }
    }
    return true;
}

// Inverse of lift(): B with B ⊗ I_s = A. Assumes splits_as_lift(a, s).
template <Scalar T>
Matrix<T> unlift(const Matrix<T>& a, std::size_t s)
{
    Matrix<T> out(a.rows() / s, a.cols() / s);
    for (std::size_t i = 0; i < out.rows(); ++i) {
        for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = a(i * s, j * s);
    }
    return out;
}

enum class PeelOrder { ascending, descending };

// Strips identity factors prime by prime until none splits off. Returns the
// irreducible core and the total factor k with A = core ⊗ I_k.
template <Scalar T>
std::pair<Matrix<T>, std::size_t> peel(const Matrix<T>& a, const Tolerance& tol = {},
                                       PeelOrder order = PeelOrder::ascending)
{
    Matrix<T> cur = a;
    std::size_t factor = 1;
    auto primes = prime_factors(std::gcd(a.rows(), a.cols()));
    if (order == PeelOrder::descending) std::reverse(primes.begin(), primes.end());
    bool progressed = true;
    while (progressed) {
        progressed = false;
        for (auto s : primes) {
            while (splits_as_lift(cur, s, tol)) {
                cur = unlift(cur, s);
                factor *= s;
                progressed = true;
            }
        }
    }
    return {std::move(cur), factor};
}

// Largest s with A = B ⊗ I_s (1 when A is irreducible).
template <Scalar T>
std::size_t reduction_factor(const Matrix<T>& a, const Tolerance& tol = {})
{
    return peel(a, tol).second;
}

template <Scalar T>
bool is_reducible(const Matrix<T>& a, const Tolerance& tol = {})
{
    return reduction_factor(a, tol) > 1;
}

// An identity-equivalence class, held by its unique irreducible
// representative. Only constructible through canonicalization.
template <Scalar T>
class MatrixClass {
public:
    static MatrixClass of(const Matrix<T>& a, const Tolerance& tol = {}, PeelOrder order = PeelOrder::ascending)
    {
        return MatrixClass(peel(a, tol, order).first);
    }

    // ⟨0_{p×q}⟩ of the given ratio.
    static MatrixClass zero(const Ratio& mu) { return MatrixClass(Matrix<T>(mu.p(), mu.q())); }

    Ratio mu() const { return Ratio::of(rep_); }
    const Matrix<T>& rep() const { return rep_; }
    std::size_t k0() const { return rep_.rows() / mu().p(); }
    bool is_zero() const { return rep_.is_zero(); }

    friend bool operator==(const MatrixClass& a, const MatrixClass& b) { return a.rep_ == b.rep_; }

private:
    explicit MatrixClass(Matrix<T> rep) : rep_(std::move(rep)) {}

    Matrix<T> rep_;
};

template <Scalar T>
MatrixClass<T> canonicalize(const Matrix<T>& a, const Tolerance& tol = {}, PeelOrder order = PeelOrder::ascending)
{
    return MatrixClass<T>::of(a, tol, order);
}

// A ~ B iff both have the same irreducible representative.
template <Scalar T>
bool equivalent(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol = {})
{
    return eq_within(peel(a, tol).first, peel(b, tol).first, tol);
}

template <Scalar T>
bool approx_equal(const MatrixClass<T>& x, const MatrixClass<T>& y, const Tolerance& tol = {})
{
    return eq_within(x.rep(), y.rep(), tol);
}

namespace detail {

template <Scalar T>
void require_same_mu(const MatrixClass<T>& x, const MatrixClass<T>& y, const char* op)
{
    if (x.mu() != y.mu()) {
        throw domain_error("ratio_mismatch",
                           std::string(op) + ": classes live in different spaces (" + to_string(x.mu()) + " vs " +
                               to_string(y.mu()) + ")");
    }
}

} // namespace detail

template <Scalar T>
MatrixClass<T> class_add(const MatrixClass<T>& x, const MatrixClass<T>& y, const Tolerance& tol = {})
{
    detail::require_same_mu(x, y, "class_add");
    return canonicalize(lplus(x.rep(), y.rep()), tol);
}

template <Scalar T>
MatrixClass<T> class_sub(const MatrixClass<T>& x, const MatrixClass<T>& y, const Tolerance& tol = {})
{
    detail::require_same_mu(x, y, "class_sub");
    return canonicalize(lminus(x.rep(), y.rep()), tol);
}

template <Scalar T>
MatrixClass<T> scalar_mul(const T& c, const MatrixClass<T>& x, const Tolerance& tol = {})
{
    if (scalar_is_zero(c)) return MatrixClass<T>::zero(x.mu());
    return canonicalize(scale(c, x.rep()), tol);
}

// Total across ratios; the result lives in the space of mu_x * mu_y.
template <Scalar T>
MatrixClass<T> class_mul(const MatrixClass<T>& x, const MatrixClass<T>& y, const Tolerance& tol = {})
{
    return canonicalize(ltimes(x.rep(), y.rep()), tol);
}

// [x, y] = x ⋉ y ⊟ y ⋉ x, defined on the ratio-1 space.
template <Scalar T>
MatrixClass<T> lie_bracket(const MatrixClass<T>& x, const MatrixClass<T>& y, const Tolerance& tol = {})
{
    if (x.mu() != Ratio{1, 1} || y.mu() != Ratio{1, 1}) {
        throw domain_error("ratio_mismatch", "lie_bracket is defined only for square classes (ratio 1)");
    }
    return class_sub(class_mul(x, y, tol), class_mul(y, x, tol), tol);
}

template <Scalar T>
MatrixClass<T> operator+(const MatrixClass<T>& x, const MatrixClass<T>& y)
{
    return class_add(x, y);
}

template <Scalar T>
MatrixClass<T> operator-(const MatrixClass<T>& x, const MatrixClass<T>& y)
{
    return class_sub(x, y);
}

template <Scalar T>
MatrixClass<T> operator*(const T& c, const MatrixClass<T>& x)
{
    return scalar_mul(c, x);
}

template <Scalar T>
MatrixClass<T> operator*(const MatrixClass<T>& x, const MatrixClass<T>& y)
{
    return class_mul(x, y);
}

} // namespace stp
