#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace attrprof {

/// Exact non-negative-denominator fraction, always stored in lowest terms.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t numerator, std::int64_t denominator = 1);

    std::int64_t numerator() const noexcept { return num_; }
    std::int64_t denominator() const noexcept { return den_; }

    double to_double() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    /// "p/q", denominator always written.
    std::string to_string() const;

    /// Parses "p/q", an integer, or a plain decimal such as "0.05".
    static Rational parse(std::string_view text);
    /// Exact value of the shortest decimal that round-trips `value`.
    static Rational from_double(double value);

    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace attrprof
