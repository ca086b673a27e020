#pragma once

#include <gmpxx.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <concepts>
#include <limits>
#include <string>
#include <string_view>

#include "stp/error.hpp"

namespace stp {

using Rational = mpq_class;

// Comparison policy for binary64 entries. Two values a, b compare equal iff
// |a - b| <= max(rel * max(|a|, |b|), abs_floor). Exact scalars ignore it.
struct Tolerance {
    double rel = 1e-9;
    double abs_floor = 1e-15;

    // No absolute floor: values of any magnitude are distinguished from zero.
    static constexpr Tolerance relative_only(double rel = 1e-9) { return {rel, 0.0}; }
};

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static constexpr std::string_view name = "rational";

    static bool equal(const Rational& a, const Rational& b, const Tolerance&) { return a == b; }
    static bool is_zero(const Rational& a) { return sgn(a) == 0; }
    static double to_double(const Rational& a) { return a.get_d(); }
    static Rational abs(const Rational& a) { return sgn(a) < 0 ? Rational(-a) : a; }

    // Always "num/den", including integers ("3/1").
    static std::string to_string(const Rational& a)
    {
        return a.get_num().get_str() + "/" + a.get_den().get_str();
    }

    static Rational from_double(double x)
    {
        if (!std::isfinite(x)) {
            throw parse_error("bad_scalar", "non-finite value cannot be represented exactly");
        }
        return Rational(x);
    }

    // Accepts "n", "n/d", and finite decimals with optional exponent
    // ("-1.25e3"); decimals are converted exactly.
    static Rational parse(std::string_view text)
    {
        auto trimmed = trim(text);
        if (trimmed.empty()) {
            throw parse_error("bad_scalar", "empty rational literal");
        }
        const auto slash = trimmed.find('/');
        if (slash != std::string_view::npos) {
            mpz_class num = parse_integer(trimmed.substr(0, slash));
            mpz_class den = parse_integer(trimmed.substr(slash + 1));
            if (den == 0) {
                throw parse_error("bad_scalar", "zero denominator in '" + std::string(text) + "'");
            }
            Rational r(num, den);
            r.canonicalize();
            return r;
        }
        if (trimmed.find_first_of(".eE") != std::string_view::npos) {
            return parse_decimal(trimmed, text);
        }
        return Rational(parse_integer(trimmed));
    }

private:
    static std::string_view trim(std::string_view s)
    {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    }

    static mpz_class parse_integer(std::string_view s)
    {
        s = trim(s);
        std::string digits(s);
        if (!digits.empty() && digits.front() == '+') digits.erase(0, 1);
        const std::size_t start = (!digits.empty() && digits.front() == '-') ? 1 : 0;
        if (digits.size() == start) {
            throw parse_error("bad_scalar", "expected an integer, got '" + std::string(s) + "'");
        }
        for (std::size_t i = start; i < digits.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(digits[i]))) {
                throw parse_error("bad_scalar", "expected an integer, got '" + std::string(s) + "'");
            }
        }
        return mpz_class(digits, 10);
    }

    static Rational parse_decimal(std::string_view s, std::string_view original)
    {
        std::string mantissa;
        long exponent = 0;
        std::size_t pos = 0;
        bool negative = false;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
            negative = s[pos] == '-';
            ++pos;
        }
        bool seen_point = false;
        bool seen_digit = false;
        for (; pos < s.size() && s[pos] != 'e' && s[pos] != 'E'; ++pos) {
            const char c = s[pos];
            if (c == '.' && !seen_point) {
                seen_point = true;
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                mantissa.push_back(c);
                seen_digit = true;
                if (seen_point) --exponent;
            } else {
                throw parse_error("bad_scalar", "malformed decimal '" + std::string(original) + "'");
            }
        }
        if (!seen_digit) {
            throw parse_error("bad_scalar", "malformed decimal '" + std::string(original) + "'");
        }
        if (pos < s.size()) {
            long e = 0;
            auto tail = s.substr(pos + 1);
            if (!tail.empty() && tail.front() == '+') tail.remove_prefix(1);
            auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), e);
            if (ec != std::errc{} || ptr != tail.data() + tail.size()) {
                throw parse_error("bad_scalar", "malformed exponent in '" + std::string(original) + "'");
            }
            exponent += e;
        }
        mpz_class num(mantissa, 10);
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
        Rational r = exponent < 0 ? Rational(num, scale) : Rational(num * scale);
        r.canonicalize();
        return negative ? Rational(-r) : r;
    }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static constexpr std::string_view name = "float64";

    static bool equal(double a, double b, const Tolerance& tol)
    {
        if (a == b) return true;
        const double diff = std::fabs(a - b);
        const double scale = std::fmax(std::fabs(a), std::fabs(b));
        return diff <= std::fmax(tol.rel * scale, tol.abs_floor);
    }
    static bool is_zero(double a) { return a == 0.0; }
    static double to_double(double a) { return a; }
    static double abs(double a) { return std::fabs(a); }

    static std::string to_string(double a)
    {
        char buf[32];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, a);
        return std::string(buf, ptr);
    }

    static double from_double(double x) { return x; }

    // Accepts plain decimals and "n/d" (evaluated in binary64).
    static double parse(std::string_view text)
    {
        const auto slash = text.find('/');
        if (slash != std::string_view::npos) {
            return parse(text.substr(0, slash)) / parse(text.substr(slash + 1));
        }
        std::string s(text);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw parse_error("bad_scalar", "malformed float '" + s + "'");
        }
        while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
        if (used != s.size()) {
            throw parse_error("bad_scalar", "malformed float '" + s + "'");
        }
        return v;
    }
};

template <class T>
concept Scalar = requires { scalar_traits<T>::exact; };

template <class T>
concept ExactScalar = Scalar<T> && scalar_traits<T>::exact;

template <Scalar T>
bool scalar_equal(const T& a, const T& b, const Tolerance& tol = {})
{
    return scalar_traits<T>::equal(a, b, tol);
}

template <Scalar T>
bool scalar_is_zero(const T& a)
{
    return scalar_traits<T>::is_zero(a);
}

} // namespace stp
