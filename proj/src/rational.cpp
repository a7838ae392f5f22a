#include "attrprof/rational.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "attrprof/error.hpp"

namespace attrprof {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
    std::int64_t value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end) {
        throw Error(ErrorCode::InvalidArgument, "not a rational number: '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) {
        throw Error(ErrorCode::InvalidArgument, "rational with zero denominator");
    }
    if (denominator < 0) {
        numerator = -numerator;
        denominator = -denominator;
    }
    const auto g = std::gcd(numerator, denominator);
    num_ = numerator / (g == 0 ? 1 : g);
    den_ = denominator / (g == 0 ? 1 : g);
}

std::string Rational::to_string() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
    const std::string_view whole = text;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        return Rational(parse_int(text.substr(0, slash), whole), parse_int(text.substr(slash + 1), whole));
    }
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    const auto dot = text.find('.');
    std::string digits(text.substr(0, dot));
    std::int64_t scale = 1;
    if (dot != std::string_view::npos) {
        auto fraction = text.substr(dot + 1);
        if (fraction.size() > 17) {
            throw Error(ErrorCode::InvalidArgument, "too many decimals: '" + std::string(whole) + "'");
        }
        digits += fraction;
        for (std::size_t i = 0; i < fraction.size(); ++i) scale *= 10;
    }
    if (digits.empty()) {
        throw Error(ErrorCode::InvalidArgument, "not a rational number: '" + std::string(whole) + "'");
    }
    for (char c : digits) {
        if (c < '0' || c > '9') {
            throw Error(ErrorCode::InvalidArgument, "not a rational number: '" + std::string(whole) + "'");
        }
    }
    const auto numerator = parse_int(digits, whole);
    return Rational(negative ? -numerator : numerator, scale);
}

Rational Rational::from_double(double value) {
    if (!std::isfinite(value)) {
        throw Error(ErrorCode::InvalidArgument, "non-finite rational");
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
    if (ec != std::errc{}) {
        throw Error(ErrorCode::InvalidArgument, "cannot represent value as rational");
    }
    return parse(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    const auto lhs = static_cast<__int128>(a.num_) * b.den_;
    const auto rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
}

}  // namespace attrprof
