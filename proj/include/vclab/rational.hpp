#pragma once

#include <compare>
#include <cstdint>
#include <numeric>

#include "vclab/error.hpp"

namespace vclab {

/// Nonnegative fraction kept in lowest terms.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    Rational() = default;
    Rational(std::uint64_t n, std::uint64_t d) : num(n), den(d) {
        if (d == 0) throw InvalidParameter("rational with zero denominator");
        const auto g = std::gcd(n, d);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool is_integral() const { return den == 1; }

    friend bool operator==(const Rational&, const Rational&) = default;
};

} // namespace vclab
