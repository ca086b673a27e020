#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "stp/semi_tensor.hpp"

namespace stp {

// Left STP without forming A ⊗ I_a or B ⊗ I_b (a = t/n_A, b = t/m_B).
//
// Row r = i·a + α of A ⊗ I_a holds A(i, k) at column k·a + α. That column
// index s = k·a + α is row s of B ⊗ I_b, which holds B(s / b, j) at columns
// j·b + (s mod b). So each nonzero A(i, k) scatters one scaled row of B into
// a strided slice of output row r. Work is rows_out · n_A · n_B, and the only
// allocation is the output.
template <Scalar T>
Matrix<T> ltimes_fast(const Matrix<T>& a, const Matrix<T>& b)
{
    const std::size_t t = std::lcm(a.cols(), b.rows());
    const std::size_t la = t / a.cols();
    const std::size_t lb = t / b.rows();
    Matrix<T> out(a.rows() * la, b.cols() * lb);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t alpha = 0; alpha < la; ++alpha) {
            const std::size_t r = i * la + alpha;
            for (std::size_t k = 0; k < a.cols(); ++k) {
                const T& aik = a(i, k);
                if (scalar_is_zero(aik)) continue;
                const std::size_t s = k * la + alpha;
                const std::size_t brow = s / lb;
                const std::size_t beta = s % lb;
                for (std::size_t j = 0; j < b.cols(); ++j) out(r, j * lb + beta) += aik * b(brow, j);
            }
        }
    }
    return out;
}

struct BenchShape {
    std::size_t m = 1, n = 1, p = 1, q = 1; // A is m×n, B is p×q
};

struct BenchConfig {
    std::vector<BenchShape> sizes;
    int repetitions = 5;
    std::uint64_t seed = 1;
};

struct BenchRow {
    BenchShape shape;
    std::size_t t = 1;
    double naive_ns = 0;
    double fast_ns = 0;
    double speedup = 0;
    std::size_t naive_peak_elems = 0;
    std::size_t fast_peak_elems = 0;
    bool outputs_equal = false;
};

// Small integers in [-9, 9] (as rationals or doubles).
template <Scalar T>
Matrix<T> random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> dist(-9, 9);
    Matrix<T> m(rows, cols);
    for (auto& v : m.values()) v = T(dist(rng));
    return m;
}

namespace detail {

template <class F>
double median_ns(int reps, F&& f)
{
    f(); // warmup
    std::vector<double> samples;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        samples.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count());
    }
    std::sort(samples.begin(), samples.end());
    return samples[samples.size() / 2];
}

} // namespace detail

// Naive vs fast timing plus temporary-element high-water marks. Peak counts
// include the output matrix.
template <Scalar T>
std::vector<BenchRow> bench(const BenchConfig& cfg)
{
    if (cfg.repetitions < 3) throw domain_error("invalid_argument", "bench: repetitions must be >= 3");
    std::mt19937_64 rng(cfg.seed);
    std::vector<BenchRow> rows;
    for (const auto& s : cfg.sizes) {
        const auto a = random_matrix<T>(s.m, s.n, rng);
        const auto b = random_matrix<T>(s.p, s.q, rng);
        BenchRow row;
        row.shape = s;
        row.t = std::lcm(s.n, s.p);

        std::size_t naive_peak = 0;
        std::size_t fast_peak = 0;
        bool equal = false;
        {
            ElementProbe probe;
            auto slow = ltimes(a, b);
            naive_peak = probe.peak_extra();
            ElementProbe probe2;
            auto quick = ltimes_fast(a, b);
            fast_peak = probe2.peak_extra();
            if constexpr (scalar_traits<T>::exact) {
                equal = slow == quick;
            } else {
                equal = eq_within(slow, quick, Tolerance{1e-12, 0.0});
            }
        }
        row.naive_peak_elems = naive_peak;
        row.fast_peak_elems = fast_peak;
        row.outputs_equal = equal;
        row.naive_ns = detail::median_ns(cfg.repetitions, [&] { auto r = ltimes(a, b); (void)r; });
        row.fast_ns = detail::median_ns(cfg.repetitions, [&] { auto r = ltimes_fast(a, b); (void)r; });
        row.speedup = row.fast_ns > 0 ? row.naive_ns / row.fast_ns : 0.0;
        rows.push_back(row);
    }
    return rows;
}

} // namespace stp
