#include <cctype>
#include <charconv>
#include <optional>

#include "attrprof/error.hpp"
#include "attrprof/io.hpp"

namespace attrprof {

TimeFormat time_format_from_string(std::string_view name) {
    if (name == "auto") return TimeFormat::Auto;
    if (name == "iso8601") return TimeFormat::Iso8601;
    if (name == "epoch-seconds") return TimeFormat::EpochSeconds;
    if (name == "epoch-millis") return TimeFormat::EpochMillis;
    if (name == "ordinal") return TimeFormat::Ordinal;
    throw Error(ErrorCode::InvalidArgument, "unknown time format '" + std::string(name) + "'");
}

std::string_view to_string(TimeFormat format) noexcept {
    switch (format) {
        case TimeFormat::Auto: return "auto";
        case TimeFormat::Iso8601: return "iso8601";
        case TimeFormat::EpochSeconds: return "epoch-seconds";
        case TimeFormat::EpochMillis: return "epoch-millis";
        case TimeFormat::Ordinal: return "ordinal";
    }
    return "auto";
}

namespace {

std::optional<std::int64_t> parse_integer(std::string_view text) {
    std::int64_t value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end) return std::nullopt;
    return value;
}

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    bool done() const { return pos_ == text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    std::optional<int> digits(std::size_t count) {
        if (pos_ + count > text_.size()) return std::nullopt;
        int value = 0;
        for (std::size_t i = 0; i < count; ++i) {
            const char c = text_[pos_ + i];
            if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
            value = value * 10 + (c - '0');
        }
        pos_ += count;
        return value;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

std::optional<Timestamp> parse_iso8601(std::string_view text) {
    using namespace std::chrono;
    Cursor cur(text);
    auto y = cur.digits(4);
    if (!y || !cur.accept('-')) return std::nullopt;
    auto mo = cur.digits(2);
    if (!mo || !cur.accept('-')) return std::nullopt;
    auto d = cur.digits(2);
    if (!d) return std::nullopt;
    const year_month_day ymd{year{*y}, month{static_cast<unsigned>(*mo)}, day{static_cast<unsigned>(*d)}};
    if (!ymd.ok()) return std::nullopt;

    milliseconds time_of_day{0};
    if (cur.accept('T') || cur.accept('t') || cur.accept(' ')) {
        auto hh = cur.digits(2);
        if (!hh || !cur.accept(':')) return std::nullopt;
        auto mm = cur.digits(2);
        if (!mm) return std::nullopt;
        int ss = 0;
        int millis = 0;
        if (cur.accept(':')) {
            auto s = cur.digits(2);
            if (!s) return std::nullopt;
            ss = *s;
            if (cur.accept('.') || cur.accept(',')) {
                int scale = 100;
                bool any = false;
                while (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
                    const int digit = *cur.digits(1);
                    millis += digit * scale;
                    scale /= 10;
                    any = true;
                }
                if (!any) return std::nullopt;
            }
        }
        if (*hh > 23 || *mm > 59 || ss > 60) return std::nullopt;
        time_of_day = hours{*hh} + minutes{*mm} + seconds{ss} + milliseconds{millis};
        if (cur.accept('Z') || cur.accept('z')) {
        } else if (cur.peek() == '+' || cur.peek() == '-') {
            const int sign = cur.peek() == '-' ? -1 : 1;
            cur.accept(cur.peek());
            auto oh = cur.digits(2);
            if (!oh) return std::nullopt;
            int om = 0;
            if (!cur.done()) {
                cur.accept(':');
                auto m = cur.digits(2);
                if (!m) return std::nullopt;
                om = *m;
            }
            time_of_day -= sign * (hours{*oh} + minutes{om});
        }
    }
    if (!cur.done()) return std::nullopt;
    return Timestamp{sys_days{ymd}.time_since_epoch() + time_of_day};
}

}  // namespace

Timestamp parse_timestamp(std::string_view text, TimeFormat format) {
    using std::chrono::milliseconds;
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

    if (format == TimeFormat::Auto) {
        format = parse_integer(text) ? TimeFormat::Ordinal : TimeFormat::Iso8601;
    }
    std::optional<Timestamp> parsed;
    switch (format) {
        case TimeFormat::Iso8601:
            parsed = parse_iso8601(text);
            break;
        case TimeFormat::EpochSeconds:
            if (auto n = parse_integer(text)) parsed = Timestamp{milliseconds{*n * 1000}};
            break;
        case TimeFormat::EpochMillis:
        case TimeFormat::Ordinal:
            if (auto n = parse_integer(text)) parsed = Timestamp{milliseconds{*n}};
            break;
        case TimeFormat::Auto:
            break;
    }
    if (!parsed) {
        throw Error(ErrorCode::BadTimestamp, "unparsable timestamp '" + std::string(text) + "' (" +
                                                 std::string(to_string(format)) + ")");
    }
    return *parsed;
}

}  // namespace attrprof
