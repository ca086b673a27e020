#pragma once

#include <random>
#include <vector>

#include "stp/stp.hpp"

namespace stp::testing {

using Q = Rational;
using MatQ = Matrix<Rational>;
using ClassQ = MatrixClass<Rational>;

// Entries in {-4..4} / {1, 2, 3}; roughly a third are zero.
inline Rational random_entry(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

inline MatQ random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng)
{
    MatQ m(rows, cols);
    for (auto& v : m.values()) v = random_entry(rng);
    return m;
}

inline std::size_t random_dim(std::mt19937_64& rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// A random class of ratio mu whose generating matrix is k·p × k·q with
// k drawn from [1, k_max].
inline ClassQ random_class(const Ratio& mu, std::mt19937_64& rng, std::size_t k_max = 3)
{
    const auto k = random_dim(rng, 1, k_max);
    return canonicalize(random_matrix(k * mu.p(), k * mu.q(), rng));
}

// A random matrix that does not split off any identity factor. Falls back
// to forcing an off-diagonal entry inside the first block, which breaks
// every s >= 2 block test.
inline MatQ random_irreducible(std::size_t rows, std::size_t cols, std::mt19937_64& rng)
{
    auto m = random_matrix(rows, cols, rng);
    if (is_reducible(m) && rows > 1 && cols > 1) m(0, 1) = Rational(1);
    if (is_reducible(m)) m(0, 0) = m(0, 0) + 1;
    return m;
}

// Kronecker with an explicitly materialized identity, independent of lift().
inline MatQ kron_identity(const MatQ& a, std::size_t s)
{
    return kron(a, MatQ::identity(s));
}

inline MatQ kron_identity_left(const MatQ& a, std::size_t s)
{
    return kron(MatQ::identity(s), a);
}

inline std::size_t lcm3(std::size_t a, std::size_t b, std::size_t c)
{
    return std::lcm(std::lcm(a, b), c);
}

} // namespace stp::testing
