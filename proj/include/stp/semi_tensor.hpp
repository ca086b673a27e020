#pragma once

#include <numeric>

#include "stp/matrix.hpp"
#include "stp/ratio.hpp"

// Reference semi-tensor products and additions. These materialize the
// Kronecker lifts on purpose: they are the oracle the fast kernels are
// checked against.

namespace stp {

// Left STP: (A ⊗ I_{t/n_A}) (B ⊗ I_{t/m_B}), t = lcm(n_A, m_B).
template <Scalar T>
Matrix<T> ltimes(const Matrix<T>& a, const Matrix<T>& b)
{
    const std::size_t t = std::lcm(a.cols(), b.rows());
    return matmul(lift(a, t / a.cols()), lift(b, t / b.rows()));
}

// Right STP: (I_{t/n_A} ⊗ A) (I_{t/m_B} ⊗ B).
template <Scalar T>
Matrix<T> rtimes(const Matrix<T>& a, const Matrix<T>& b)
{
    const std::size_t t = std::lcm(a.cols(), b.rows());
    return matmul(lift_left(a, t / a.cols()), lift_left(b, t / b.rows()));
}

namespace detail {

template <Scalar T>
void require_same_ratio(const Matrix<T>& a, const Matrix<T>& b, const char* op)
{
    if (a.rows() * b.cols() != b.rows() * a.cols()) {
        throw domain_error("ratio_mismatch", std::string(op) + ": " + to_string(a.shape()) + " and " +
                                                 to_string(b.shape()) + " have different row/column ratios");
    }
}

template <Scalar T, class Lift>
Matrix<T> semi_tensor_sum(const Matrix<T>& a, const Matrix<T>& b, Elementwise op, Lift lift_fn, const char* name)
{
    require_same_ratio(a, b, name);
    const std::size_t t = std::lcm(a.rows(), b.rows());
    return elementwise(lift_fn(a, t / a.rows()), lift_fn(b, t / b.rows()), op);
}

} // namespace detail

// Left STA: (A ⊗ I_{t/m_A}) + (B ⊗ I_{t/m_B}), t = lcm(m_A, m_B). Both
// operands must share one row/column ratio.
template <Scalar T>
Matrix<T> lplus(const Matrix<T>& a, const Matrix<T>& b)
{
    return detail::semi_tensor_sum(a, b, Elementwise::add, lift<T>, "lplus");
}

template <Scalar T>
Matrix<T> lminus(const Matrix<T>& a, const Matrix<T>& b)
{
    return detail::semi_tensor_sum(a, b, Elementwise::sub, lift<T>, "lminus");
}

template <Scalar T>
Matrix<T> rplus(const Matrix<T>& a, const Matrix<T>& b)
{
    return detail::semi_tensor_sum(a, b, Elementwise::add, lift_left<T>, "rplus");
}

template <Scalar T>
Matrix<T> rminus(const Matrix<T>& a, const Matrix<T>& b)
{
    return detail::semi_tensor_sum(a, b, Elementwise::sub, lift_left<T>, "rminus");
}

} // namespace stp
