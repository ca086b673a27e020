#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "stp/error.hpp"
#include "stp/matrix.hpp"

namespace stp {

// Reduced positive rational p/q naming the space of matrices with
// rows/cols = p/q.
class Ratio {
public:
    Ratio() = default;

    Ratio(std::uint64_t p, std::uint64_t q)
    {
        if (p == 0 || q == 0) {
            throw domain_error("invalid_argument", "ratio terms must be positive");
        }
        const auto g = std::gcd(p, q);
        p_ = p / g;
        q_ = q / g;
    }

    template <Scalar T>
    static Ratio of(const Matrix<T>& a)
    {
        return {a.rows(), a.cols()};
    }

    static Ratio parse(std::string_view text)
    {
        const auto slash = text.find('/');
        auto read = [&](std::string_view s) {
            std::uint64_t v = 0;
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || ptr != s.data() + s.size() || v == 0) {
                throw parse_error("bad_ratio", "malformed ratio '" + std::string(text) + "'");
            }
            return v;
        };
        if (slash == std::string_view::npos) return {read(text), 1};
        return {read(text.substr(0, slash)), read(text.substr(slash + 1))};
    }

    std::uint64_t p() const { return p_; }
    std::uint64_t q() const { return q_; }

    friend Ratio operator*(const Ratio& a, const Ratio& b)
    {
        // Cross-reduce first to keep intermediates small.
        const auto g1 = std::gcd(a.p_, b.q_);
        const auto g2 = std::gcd(b.p_, a.q_);
        return {(a.p_ / g1) * (b.p_ / g2), (a.q_ / g2) * (b.q_ / g1)};
    }

    friend bool operator==(const Ratio&, const Ratio&) = default;
    friend auto operator<=>(const Ratio&, const Ratio&) = default;

private:
    std::uint64_t p_ = 1;
    std::uint64_t q_ = 1;
};

inline std::string to_string(const Ratio& r)
{
    return std::to_string(r.p()) + "/" + std::to_string(r.q());
}

} // namespace stp
