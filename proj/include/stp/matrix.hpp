#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stp/error.hpp"
#include "stp/scalar.hpp"

namespace stp {

struct Shape {
    std::size_t rows = 1;
    std::size_t cols = 1;

    std::size_t size() const { return rows * cols; }
    friend bool operator==(const Shape&, const Shape&) = default;
};

inline std::string to_string(const Shape& s)
{
    return std::to_string(s.rows) + "x" + std::to_string(s.cols);
}

// Matrix storage goes through a counting allocator so that kernels can be
// audited for temporary memory. The counters are per thread.
namespace detail {

struct element_ledger {
    std::size_t live = 0;
    std::size_t peak = 0;
};

inline element_ledger& ledger()
{
    thread_local element_ledger l;
    return l;
}

template <class T>
struct counting_allocator {
    using value_type = T;

    counting_allocator() = default;
    template <class U>
    counting_allocator(const counting_allocator<U>&) noexcept {}

    T* allocate(std::size_t n)
    {
        auto& l = ledger();
        l.live += n;
        l.peak = std::max(l.peak, l.live);
        return std::allocator<T>{}.allocate(n);
    }

    void deallocate(T* p, std::size_t n) noexcept
    {
        ledger().live -= n;
        std::allocator<T>{}.deallocate(p, n);
    }

    template <class U>
    friend bool operator==(const counting_allocator&, const counting_allocator<U>&) { return true; }
};

} // namespace detail

// Measures how many matrix elements were allocated on top of what was
// already live when the probe was created (high-water mark).
class ElementProbe {
public:
    ElementProbe() : baseline_(detail::ledger().live) { detail::ledger().peak = baseline_; }

    std::size_t peak_extra() const { return detail::ledger().peak - baseline_; }

private:
    std::size_t baseline_;
};

// Dense row-major matrix. Shapes are at least 1x1.
template <Scalar T>
class Matrix {
public:
    using value_type = T;
    using storage_type = std::vector<T, detail::counting_allocator<T>>;

    Matrix() : Matrix(1, 1) {}

    Matrix(std::size_t rows, std::size_t cols) : shape_{rows, cols}
    {
        check_shape(rows, cols);
        data_.assign(rows * cols, T(0));
    }

    Matrix(std::size_t rows, std::size_t cols, std::span<const T> values) : shape_{rows, cols}
    {
        check_shape(rows, cols);
        if (values.size() != rows * cols) {
            throw domain_error("shape_mismatch", "expected " + std::to_string(rows * cols) +
                                                     " entries, got " + std::to_string(values.size()));
        }
        data_.assign(values.begin(), values.end());
    }

    Matrix(std::size_t rows, std::size_t cols, const std::vector<T>& values)
        : Matrix(rows, cols, std::span<const T>(values))
    {
    }

    // Nested-list literal: Matrix<Rational>{{1, 2}, {3, 4}}.
    Matrix(std::initializer_list<std::initializer_list<T>> rows)
    {
        if (rows.size() == 0 || rows.begin()->size() == 0) {
            throw domain_error("shape_mismatch", "matrix literal must be non-empty");
        }
        shape_ = {rows.size(), rows.begin()->size()};
        data_.reserve(shape_.size());
        for (const auto& row : rows) {
            if (row.size() != shape_.cols) {
                throw domain_error("shape_mismatch", "ragged matrix literal");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    // E^{rows x cols}_{r c} with 0-based (r, c).
    static Matrix unit(std::size_t rows, std::size_t cols, std::size_t r, std::size_t c)
    {
        Matrix m(rows, cols);
        m(r, c) = T(1);
        return m;
    }

    static Matrix diagonal(std::initializer_list<T> diag)
    {
        Matrix m(diag.size(), diag.size());
        std::size_t i = 0;
        for (const auto& d : diag) {
            m(i, i) = d;
            ++i;
        }
        return m;
    }

    std::size_t rows() const { return shape_.rows; }
    std::size_t cols() const { return shape_.cols; }
    const Shape& shape() const { return shape_; }
    std::size_t size() const { return data_.size(); }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * shape_.cols + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * shape_.cols + c]; }

    std::span<const T> values() const { return data_; }
    std::span<T> values() { return data_; }

    bool is_zero() const
    {
        return std::all_of(data_.begin(), data_.end(), [](const T& v) { return scalar_is_zero(v); });
    }

    // Exact entrywise equality; see eq_within for the tolerant form.
    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.shape_ == b.shape_ && std::equal(a.data_.begin(), a.data_.end(), b.data_.begin());
    }

private:
    static void check_shape(std::size_t rows, std::size_t cols)
    {
        if (rows == 0 || cols == 0) {
            throw domain_error("shape_mismatch", "matrix dimensions must be positive");
        }
    }

    Shape shape_;
    storage_type data_;
};

template <Scalar T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b)
{
    Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const T& aij = a(i, j);
            if (scalar_is_zero(aij)) continue;
            for (std::size_t r = 0; r < b.rows(); ++r) {
                for (std::size_t c = 0; c < b.cols(); ++c) {
                    out(i * b.rows() + r, j * b.cols() + c) = aij * b(r, c);
                }
            }
        }
    }
    return out;
}

// A ⊗ I_s without materializing the identity.
template <Scalar T>
Matrix<T> lift(const Matrix<T>& a, std::size_t s)
{
    if (s == 1) return a;
    Matrix<T> out(a.rows() * s, a.cols() * s);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            for (std::size_t d = 0; d < s; ++d) out(i * s + d, j * s + d) = a(i, j);
        }
    }
    return out;
}

// I_s ⊗ A without materializing the identity.
template <Scalar T>
Matrix<T> lift_left(const Matrix<T>& a, std::size_t s)
{
    if (s == 1) return a;
    Matrix<T> out(a.rows() * s, a.cols() * s);
    for (std::size_t d = 0; d < s; ++d) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < a.cols(); ++j) out(d * a.rows() + i, d * a.cols() + j) = a(i, j);
        }
    }
    return out;
}

template <Scalar T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b)
{
    if (a.cols() != b.rows()) {
        throw domain_error("dimension_mismatch",
                           "matmul: " + to_string(a.shape()) + " times " + to_string(b.shape()));
    }
    Matrix<T> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T& aik = a(i, k);
            if (scalar_is_zero(aik)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

enum class Elementwise { add, sub };

template <Scalar T>
Matrix<T> elementwise(const Matrix<T>& a, const Matrix<T>& b, Elementwise op)
{
    if (a.shape() != b.shape()) {
        throw domain_error("shape_mismatch",
                           "elementwise: " + to_string(a.shape()) + " vs " + to_string(b.shape()));
    }
    Matrix<T> out(a.rows(), a.cols());
    auto x = a.values();
    auto y = b.values();
    auto z = out.values();
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = op == Elementwise::add ? T(x[i] + y[i]) : T(x[i] - y[i]);
    return out;
}

template <Scalar T>
Matrix<T> add(const Matrix<T>& a, const Matrix<T>& b)
{
    return elementwise(a, b, Elementwise::add);
}

template <Scalar T>
Matrix<T> sub(const Matrix<T>& a, const Matrix<T>& b)
{
    return elementwise(a, b, Elementwise::sub);
}

template <Scalar T>
Matrix<T> scale(const T& c, const Matrix<T>& a)
{
    Matrix<T> out = a;
    for (auto& v : out.values()) v = c * v;
    return out;
}

template <Scalar T>
T frobenius_inner(const Matrix<T>& a, const Matrix<T>& b)
{
    if (a.shape() != b.shape()) {
        throw domain_error("shape_mismatch",
                           "frobenius_inner: " + to_string(a.shape()) + " vs " + to_string(b.shape()));
    }
    T sum(0);
    auto x = a.values();
    auto y = b.values();
    for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
    return sum;
}

template <Scalar T>
bool eq_within(const Matrix<T>& a, const Matrix<T>& b, const Tolerance& tol = {})
{
    if (a.shape() != b.shape()) return false;
    auto x = a.values();
    auto y = b.values();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!scalar_equal(x[i], y[i], tol)) return false;
    }
    return true;
}

template <Scalar U, Scalar T>
Matrix<U> convert(const Matrix<T>& a)
{
    Matrix<U> out(a.rows(), a.cols());
    auto x = a.values();
    auto y = out.values();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if constexpr (std::is_same_v<U, double>) {
            y[i] = scalar_traits<T>::to_double(x[i]);
        } else {
            y[i] = scalar_traits<U>::from_double(scalar_traits<T>::to_double(x[i]));
        }
    }
    return out;
}

// Best rational approximation of x by continued fractions: the first
// convergent within |x - r| <= rel_tol * |x|. Exact for dyadic inputs once
// the expansion terminates.
inline Rational rationalize(double x, double rel_tol)
{
    if (!std::isfinite(x)) throw domain_error("invalid_argument", "cannot rationalize a non-finite value");
    const Rational target(x);
    const Rational bound = scalar_traits<Rational>::abs(target) * Rational(rel_tol);
    mpz_class h_prev = 1, h = 0, k_prev = 0, k = 1; // convergents h/k
    Rational rest = target;
    for (int iter = 0; iter < 128; ++iter) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
        mpz_class h_next = a * h_prev + h;
        mpz_class k_next = a * k_prev + k;
        h = h_prev;
        k = k_prev;
        h_prev = h_next;
        k_prev = k_next;
        Rational approx(h_prev, k_prev);
        approx.canonicalize();
        const Rational frac = rest - Rational(a);
        if (scalar_traits<Rational>::abs(Rational(approx - target)) <= bound || sgn(frac) == 0) return approx;
        rest = Rational(1) / frac;
    }
    return target;
}

inline Matrix<Rational> rationalize(const Matrix<double>& a, double rel_tol)
{
    Matrix<Rational> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i) out.values()[i] = rationalize(a.values()[i], rel_tol);
    return out;
}

// Row-major flattening.
template <Scalar T>
std::vector<T> vectorize(const Matrix<T>& a)
{
    return {a.values().begin(), a.values().end()};
}

// Exact Gaussian elimination over the columns of a linear system.
// `columns[c]` is column c; `target` (optional) is the right-hand side.
template <ExactScalar T>
struct LinearSolution {
    bool consistent = false;
    std::size_t rank = 0;
    std::vector<T> solution; // particular solution, free variables set to 0
    bool unique() const { return consistent && rank == solution.size(); }
};

template <ExactScalar T>
LinearSolution<T> solve_columns(const std::vector<std::vector<T>>& columns, const std::vector<T>& target)
{
    const std::size_t ncols = columns.size();
    const std::size_t dim = target.size();
    for (const auto& c : columns) {
        if (c.size() != dim) throw domain_error("dimension_mismatch", "solve: column length mismatch");
    }
    // Keep only rows where some column or the target is nonzero.
    std::vector<std::vector<T>> rows;
    for (std::size_t r = 0; r < dim; ++r) {
        bool any = !scalar_is_zero(target[r]);
        for (std::size_t c = 0; c < ncols && !any; ++c) any = !scalar_is_zero(columns[c][r]);
        if (!any) continue;
        std::vector<T> row(ncols + 1);
        for (std::size_t c = 0; c < ncols; ++c) row[c] = columns[c][r];
        row[ncols] = target[r];
        rows.push_back(std::move(row));
    }

    std::vector<std::size_t> pivot_cols;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < ncols && pivot_row < rows.size(); ++c) {
        std::size_t sel = pivot_row;
        while (sel < rows.size() && scalar_is_zero(rows[sel][c])) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[sel], rows[pivot_row]);
        const T inv = T(1) / rows[pivot_row][c];
        for (std::size_t k = c; k <= ncols; ++k) rows[pivot_row][k] *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == pivot_row || scalar_is_zero(rows[r][c])) continue;
            const T f = rows[r][c];
            for (std::size_t k = c; k <= ncols; ++k) rows[r][k] -= f * rows[pivot_row][k];
        }
        pivot_cols.push_back(c);
        ++pivot_row;
    }

    LinearSolution<T> out;
    out.rank = pivot_cols.size();
    out.consistent = true;
    for (std::size_t r = out.rank; r < rows.size(); ++r) {
        if (!scalar_is_zero(rows[r][ncols])) {
            out.consistent = false;
            break;
        }
    }
    out.solution.assign(ncols, T(0));
    if (out.consistent) {
        for (std::size_t r = 0; r < out.rank; ++r) out.solution[pivot_cols[r]] = rows[r][ncols];
    }
    return out;
}

template <ExactScalar T>
std::size_t column_rank(const std::vector<std::vector<T>>& columns)
{
    const std::size_t dim = columns.empty() ? 0 : columns.front().size();
    return solve_columns(columns, std::vector<T>(dim, T(0))).rank;
}

template <ExactScalar T>
std::size_t rank(const Matrix<T>& a)
{
    std::vector<std::vector<T>> columns(a.cols(), std::vector<T>(a.rows()));
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) columns[c][r] = a(r, c);
    }
    return column_rank(columns);
}

} // namespace stp
