// Acceptance suite: one PASS/FAIL line per criterion.
//
// Usage: acceptance [--strict]
// Without --strict the exit status is 0 once every criterion has been
// evaluated; with --strict it is the number of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "support.hpp"

using namespace stp;
using namespace stp::testing;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string& what)
    {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

// Oracles built from explicit index loops, independent of kron/lift/matmul.
MatQ oracle_kron_right(const MatQ& a, std::size_t s)
{
    MatQ out(a.rows() * s, a.cols() * s);
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            for (std::size_t d = 0; d < s; ++d) out(r * s + d, c * s + d) = a(r, c);
    return out;
}

MatQ oracle_kron_left(const MatQ& a, std::size_t s)
{
    MatQ out(a.rows() * s, a.cols() * s);
    for (std::size_t d = 0; d < s; ++d)
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c) out(d * a.rows() + r, d * a.cols() + c) = a(r, c);
    return out;
}

MatQ oracle_product(const MatQ& a, const MatQ& b)
{
    MatQ out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) {
            Rational acc = 0;
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(r, k) * b(k, c);
            out(r, c) = acc;
        }
    return out;
}

MatQ oracle_sum(const MatQ& a, const MatQ& b, int sign)
{
    MatQ out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = sign > 0 ? Rational(a(r, c) + b(r, c)) : Rational(a(r, c) - b(r, c));
    return out;
}

std::string fmt(double v)
{
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

Outcome definitional()
{
    Outcome o;
    std::mt19937_64 rng(1001);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_matrix(random_dim(rng, 1, 5), random_dim(rng, 1, 6), rng);
        const auto b = random_matrix(random_dim(rng, 1, 6), random_dim(rng, 1, 5), rng);
        const std::size_t t = std::lcm(a.cols(), b.rows());
        const auto sa = t / a.cols();
        const auto sb = t / b.rows();
        o.check(ltimes(a, b) == oracle_product(oracle_kron_right(a, sa), oracle_kron_right(b, sb)),
                "ltimes differs from Kronecker expansion at trial " + std::to_string(trial));
        o.check(rtimes(a, b) == oracle_product(oracle_kron_left(a, sa), oracle_kron_left(b, sb)),
                "rtimes differs from Kronecker expansion at trial " + std::to_string(trial));

        const std::size_t p = random_dim(rng, 1, 3), q = random_dim(rng, 1, 3);
        const std::size_t ka = random_dim(rng, 1, 4), kb = random_dim(rng, 1, 4);
        const auto x = random_matrix(ka * p, ka * q, rng);
        const auto y = random_matrix(kb * p, kb * q, rng);
        const std::size_t m = std::lcm(x.rows(), y.rows());
        const auto lx = m / x.rows(), ly = m / y.rows();
        o.check(lplus(x, y) == oracle_sum(oracle_kron_right(x, lx), oracle_kron_right(y, ly), 1), "lplus");
        o.check(lminus(x, y) == oracle_sum(oracle_kron_right(x, lx), oracle_kron_right(y, ly), -1), "lminus");
        o.check(rplus(x, y) == oracle_sum(oracle_kron_left(x, lx), oracle_kron_left(y, ly), 1), "rplus");
        o.check(rminus(x, y) == oracle_sum(oracle_kron_left(x, lx), oracle_kron_left(y, ly), -1), "rminus");

        const auto c = random_matrix(a.cols(), random_dim(rng, 1, 5), rng);
        o.check(ltimes(a, c) == oracle_product(a, c) && rtimes(a, c) == oracle_product(a, c),
                "n = p case differs from the ordinary product");
    }
    if (o.pass) o.detail = "200 random cases: ltimes, rtimes, lplus, lminus, rplus, rminus, n=p product";
    return o;
}

Outcome congruence()
{
    Outcome o;
    std::mt19937_64 rng(1002);
    auto lift_pick = [&] { return random_dim(rng, 1, 3); };
    for (int trial = 0; trial < 100; ++trial) {
        const Ratio mu(random_dim(rng, 1, 2), random_dim(rng, 1, 3));
        const auto ka = random_dim(rng, 1, 2), kb = random_dim(rng, 1, 3);
        const auto a = random_matrix(ka * mu.p(), ka * mu.q(), rng);
        const auto b = random_matrix(kb * mu.p(), kb * mu.q(), rng);
        const auto s = lift_pick(), t = lift_pick(), p = lift_pick(), q = lift_pick();
        o.check(canonicalize(lplus(lift(a, s), lift(b, t))) == canonicalize(lplus(lift(a, p), lift(b, q))),
                "addition not congruent at trial " + std::to_string(trial));
        o.check(canonicalize(lminus(lift(a, s), lift(b, t))) == canonicalize(lminus(lift(a, p), lift(b, q))),
                "subtraction not congruent at trial " + std::to_string(trial));
    }
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_matrix(random_dim(rng, 1, 3), random_dim(rng, 1, 3), rng);
        const auto b = random_matrix(random_dim(rng, 1, 3), random_dim(rng, 1, 3), rng);
        const auto s = lift_pick(), t = lift_pick(), p = lift_pick(), q = lift_pick();
        o.check(canonicalize(ltimes(lift(a, s), lift(b, t))) == canonicalize(ltimes(lift(a, p), lift(b, q))),
                "product not congruent at trial " + std::to_string(trial));
    }
    if (o.pass) o.detail = "100 sum/difference and 100 product trials, lifts in {1,2,3}";
    return o;
}

Outcome axioms()
{
    Outcome o;
    std::mt19937_64 rng(1003);
    auto nonzero_scalar = [&] {
        Q c = random_entry(rng);
        return sgn(c) == 0 ? Q(2) : c;
    };
    for (int trial = 0; trial < 50; ++trial) {
        const Ratio mu(random_dim(rng, 1, 2), random_dim(rng, 1, 3));
        const auto x = random_class(mu, rng), y = random_class(mu, rng), z = random_class(mu, rng);
        const auto zero = ClassQ::zero(mu);
        const Q c = random_entry(rng), d = random_entry(rng);
        o.check(x + y == y + x, "commutativity");
        o.check((x + y) + z == x + (y + z), "associativity");
        o.check(x + zero == x, "zero element");
        o.check(x + Q(-1) * x == zero, "additive inverse");
        o.check(c * (x + y) == c * x + c * y, "scalar distributivity over classes");
        o.check(Q(c + d) * x == c * x + d * x, "scalar distributivity over scalars");
        o.check(Q(c * d) * x == c * (d * x), "scalar compatibility");
        o.check(Q(1) * x == x, "unit scalar");
    }
    const Ratio one(1, 1);
    for (int trial = 0; trial < 50; ++trial) {
        const auto x = random_class(one, rng), y = random_class(one, rng), z = random_class(one, rng);
        const Q c = nonzero_scalar(), d = random_entry(rng);
        o.check(lie_bracket(c * x + d * y, z) == c * lie_bracket(x, z) + d * lie_bracket(y, z), "left linearity");
        o.check(lie_bracket(z, c * x + d * y) == c * lie_bracket(z, x) + d * lie_bracket(z, y), "right linearity");
        o.check(lie_bracket(x, y) == Q(-1) * lie_bracket(y, x), "antisymmetry");
        o.check(lie_bracket(x, x) == ClassQ::zero(one), "alternating");
        const auto jacobi = lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) +
                            lie_bracket(z, lie_bracket(x, y));
        o.check(jacobi == ClassQ::zero(one), "Jacobi identity at trial " + std::to_string(trial));
    }
    if (o.pass) o.detail = "50 vector-space trials, 50 Lie trials on ratio 1/1";
    return o;
}

Outcome canonical_form()
{
    Outcome o;
    std::mt19937_64 rng(1004);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a0 = random_irreducible(random_dim(rng, 1, 4), random_dim(rng, 1, 4), rng);
        if (is_reducible(a0)) {
            o.check(false, "generator produced a reducible core");
            continue;
        }
        const auto s = random_dim(rng, 1, 12);
        const auto a = oracle_kron_right(a0, s);
        const auto [up, f_up] = peel(a, {}, PeelOrder::ascending);
        const auto [down, f_down] = peel(a, {}, PeelOrder::descending);
        const bool zero_core = a0.is_zero();
        o.check(up == down, "peel order changes the core at trial " + std::to_string(trial));
        o.check(zero_core ? up.is_zero() : (up == a0 && f_up == s && f_down == s),
                "core not recovered at trial " + std::to_string(trial));
        const auto x = canonicalize(a);
        o.check(canonicalize(x.rep()) == x && x.rep() == up, "canonicalize not idempotent");
    }
    if (o.pass) o.detail = "200 constructions A0 (x) I_s, s <= 12, both peel orders";
    return o;
}

// Σ over a gcd chain of the i/f-sized units, lifted back to i×i.
MatQ telescope(std::size_t i, const std::vector<std::size_t>& steps, std::size_t lo_start, std::size_t offset)
{
    MatQ acc(i, i);
    std::size_t done = 0;
    for (auto f : steps) {
        const std::size_t a = (lo_start - done) / f;
        const std::size_t b = (lo_start + offset - done) / f;
        acc = oracle_sum(acc, oracle_kron_right(MatQ::unit(i / f, i / f, a - 1, b - 1), f), 1);
        done += f;
    }
    return acc;
}

Outcome basis_decomposition()
{
    Outcome o;
    std::mt19937_64 rng(1005);
    int classes = 0;
    for (const Ratio mu : {Ratio(1, 1), Ratio(1, 2), Ratio(2, 3)}) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto x = random_class(mu, rng, 6);
            const auto coords = decompose_class(x);
            for (const auto& [e, coeff] : coords.terms) {
                o.check(indices_in_range(e.mu, e.k, e.l, e.i, e.j1, e.j2) && satisfies_gcd_condition(e.i, e.j1, e.j2),
                        "term " + to_string(e) + " violates the gcd condition");
            }
            o.check(reconstruct(coords) == x, "round trip failed for " + to_string(mu));
            ++classes;
        }
    }
    int chains = 0;
    for (std::size_t i = 1; i <= 8; ++i) {
        for (std::size_t j = 1; j <= i; ++j) {
            const auto c = gcd_chain(i, j);
            MatQ upto(i, i), upto_m1(i, i);
            for (std::size_t r = 0; r < j; ++r) upto(r, r) = 1;
            for (std::size_t r = 0; r + 1 < j; ++r) upto_m1(r, r) = 1;
            o.check(telescope(i, c.f, j, 0) == upto && telescope(i, c.g, j - 1, 0) == upto_m1,
                    "diagonal telescoping fails at i=" + std::to_string(i) + " j=" + std::to_string(j));
            ++chains;
            for (std::size_t j2 = j + 1; j2 <= i; ++j2) {
                const auto n = gcd_chain(i, j, j2);
                const std::size_t off = j2 - j;
                MatQ band(i, i), band_m1(i, i);
                for (std::size_t r = 0; r < j; ++r) band(r, r + off) = 1;
                for (std::size_t r = 0; r + 1 < j; ++r) band_m1(r, r + off) = 1;
                o.check(telescope(i, n.f, j, off) == band && telescope(i, n.g, j - 1, off) == band_m1,
                        "off-diagonal telescoping fails at i=" + std::to_string(i));
                ++chains;
            }
        }
    }
    if (o.pass) {
        o.detail = std::to_string(classes) + " round trips (k0 <= 6), " + std::to_string(chains) +
                   " telescoping identities for i <= 8";
    }
    return o;
}

Outcome independence()
{
    Outcome o;
    const auto basis = enumerate_basis(Ratio(1, 1), 4);
    std::vector<ClassQ> classes;
    for (const auto& e : basis) classes.push_back(unit_class<Rational>(e));
    const auto sys = lift_to_common(nullptr, classes);
    o.check(sys.columns.front().size() == 144, "common lift is not 12 x 12");
    o.check(column_rank(sys.columns) == classes.size(), "exact rank below the element count");
    o.check(independent(classes), "truncated basis is dependent");
    const bool witness = in_span(canonicalize(MatQ::unit(2, 2, 0, 1)), {canonicalize(MatQ{{1}})});
    o.check(!witness, "off-diagonal unit lies in the span of <[1]>");
    if (o.pass) {
        o.detail = std::to_string(classes.size()) + " elements independent at lift 12; witness not in span";
    }
    return o;
}

double displayed_fill(int n)
{
    return 1.0 / std::pow(2.0, std::ldexp(1.0, n - 1) / std::log(2.0));
}

bool near_matrix(const Matrix<double>& got, const Matrix<double>& want, double rel)
{
    if (got.shape() != want.shape()) return false;
    for (std::size_t r = 0; r < got.rows(); ++r)
        for (std::size_t c = 0; c < got.cols(); ++c)
            if (std::fabs(got(r, c) - want(r, c)) > rel * std::fabs(want(r, c))) return false;
    return true;
}

Outcome cauchy_gap_law()
{
    Outcome o;
    const auto seq = cauchy_sequence(CauchyConfig{Matrix<double>{{1.0, 2.0}}, 7});
    const double a = displayed_fill(2), b = displayed_fill(3);
    o.check(near_matrix(seq[1].rep(), Matrix<double>{{1, a, 2, a}, {a, 1, a, 2}}, 1e-14), "A2 differs from display");
    const Matrix<double> a3{{1, b, a, b, 2, b, a, b},
                            {b, 1, b, a, b, 2, b, a},
                            {a, b, 1, b, a, b, 2, b},
                            {b, a, b, 1, b, a, b, 2}};
    o.check(near_matrix(seq[2].rep(), a3, 1e-14), "A3 differs from display");

    double worst = 0.0;
    for (const auto& r : gap_reports(seq)) worst = std::max(worst, r.rel_err);
    o.check(worst <= 1e-12, "gap law relative error " + fmt(worst));

    int pairs = 0, violations = 0;
    std::string first;
    for (int n = 1; n < 7; ++n) {
        for (int m = n + 1; m <= 7; ++m) {
            ++pairs;
            const double d = dist(seq[n - 1], seq[m - 1], cauchy_tolerance());
            if (d > tail_bound(n, 1, 2)) {
                if (!violations) {
                    first = "dist(<A" + std::to_string(n) + ">,<A" + std::to_string(m) + ">) = " + fmt(d) +
                            " > bound " + fmt(tail_bound(n, 1, 2));
                }
                ++violations;
            }
        }
    }
    o.check(violations == 0, "tail bound violated in " + std::to_string(violations) + "/" + std::to_string(pairs) +
                                 " pairs, first " + first + "; chained gap sums stay within the bound");
    if (o.pass) o.detail = "A2, A3 match; gap law max rel err " + fmt(worst) + "; tail bound holds";
    return o;
}

Outcome nonconvergence()
{
    Outcome o;
    const auto seq = cauchy_sequence(CauchyConfig{Matrix<double>{{1.0, 2.0}}, cauchy_max_n});
    std::ostringstream summary;
    for (int m : {1, 2}) {
        const auto probe = nonconvergence_probe(seq, m);
        const double floor = nonconvergence_floor(m);
        for (std::size_t k = 0; k < probe.size(); ++k) {
            o.check(probe[k] > floor, "probe m=" + std::to_string(m) + " drops below the floor");
            if (k) o.check(probe[k] >= probe[k - 1], "probe m=" + std::to_string(m) + " decreases");
        }
        summary << "m=" << m << ": " << probe.size() << " distances > " << fmt(floor) << " ";
    }
    if (o.pass) o.detail = summary.str() + "nondecreasing";
    return o;
}

Outcome counterexamples()
{
    Outcome o;
    const auto one = canonicalize(MatQ{{1}});
    const auto d = canonicalize(MatQ::diagonal({1, -1}));
    o.check(inner(class_add(one, d), one) == Q(2), "inner of sum is not 2");
    o.check(inner(one, one) + inner(d, one) == Q(1), "sum of inners is not 1");

    const auto x = canonicalize(MatQ::diagonal({2, 3}));
    const auto zero = ClassQ::zero(Ratio(1, 1));
    const Q direct = dist_squared(x, zero), leg1 = dist_squared(x, one), leg2 = dist_squared(one, zero);
    o.check(direct == 13 && leg1 == 5 && leg2 == 1, "squared distances are not 13, 5, 1");
    // sqrt(13) > sqrt(5) + 1 squared twice with exact rationals.
    const Q gap = direct - leg1 - leg2;
    o.check(sgn(gap) > 0 && gap * gap > Q(4) * leg1 * leg2, "triangle inequality not violated");
    if (o.pass) o.detail = "inner additivity 2 != 1; sqrt(13) > sqrt(5) + 1";
    return o;
}

Outcome kernels()
{
    Outcome o;
    std::mt19937_64 rng(1010);
    int trials = 0;
    while (trials < 200) {
        const auto n = random_dim(rng, 1, 12), p = random_dim(rng, 1, 12);
        if (std::lcm(n, p) / n > 12 || std::lcm(n, p) / p > 12) continue;
        const auto a = random_matrix(random_dim(rng, 1, 4), n, rng);
        const auto b = random_matrix(p, random_dim(rng, 1, 4), rng);
        o.check(ltimes_fast(a, b) == ltimes(a, b), "fast kernel differs at trial " + std::to_string(trials));
        ++trials;
    }
    for (auto [n, p] : {std::pair<std::size_t, std::size_t>{5, 7}, {8, 9}, {11, 13}}) {
        const auto a = random_matrix(n, n, rng);
        const auto b = random_matrix(p, p, rng);
        const std::size_t t = n * p;
        std::size_t fast_peak = 0, naive_peak = 0;
        {
            ElementProbe probe;
            const auto out = ltimes_fast(a, b);
            fast_peak = probe.peak_extra();
        }
        {
            ElementProbe probe;
            const auto out = ltimes(a, b);
            naive_peak = probe.peak_extra();
        }
        o.check(fast_peak == t * t, "fast path allocated " + std::to_string(fast_peak) + " elements for t=" +
                                        std::to_string(t));
        o.check(naive_peak >= t * t, "naive path allocated fewer than t^2 elements");
    }
    const auto rows = bench<Rational>(BenchConfig{{{8, 9, 9, 8}, {12, 13, 13, 12}}, 3, 7});
    std::ostringstream speed;
    for (const auto& r : rows) {
        o.check(r.outputs_equal, "bench outputs differ");
        speed << " t=" << r.t << " speedup " << fmt(r.speedup) << "x peak " << r.fast_peak_elems << " vs "
              << r.naive_peak_elems << ";";
    }
    if (o.pass) o.detail = "200 bit-equal trials; fast peak = output;" + speed.str();
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    const bool strict = argc > 1 && std::string(argv[1]) == "--strict";
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"semi-tensor product and addition definitions", definitional},
        {"congruence of sums and products", congruence},
        {"vector-space and Lie algebra axioms", axioms},
        {"canonicalization", canonical_form},
        {"basis decomposition and telescoping", basis_decomposition},
        {"independence and non-generation", independence},
        {"Cauchy gap law and tail bound", cauchy_gap_law},
        {"non-convergence probes", nonconvergence},
        {"pinned counterexamples", counterexamples},
        {"fast kernel equivalence and memory", kernels},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = criteria[k].second();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (!out.pass) ++failed;
        std::printf("%s %2zu %s: %s (%.0f ms)\n", out.pass ? "PASS" : "FAIL", k + 1, criteria[k].first,
                    out.detail.c_str(), ms);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    std::fflush(stdout);
    return strict ? failed : 0;
}
