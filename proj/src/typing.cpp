#include "attrprof/typing.hpp"

#include <set>

#include "attrprof/error.hpp"

namespace attrprof {

std::string_view to_string(TypeKind kind) noexcept {
    return kind == TypeKind::Quantitative ? "quantitative" : "categorical";
}

TypeKind type_kind_from_string(std::string_view name) {
    if (name == "quantitative") return TypeKind::Quantitative;
    if (name == "categorical") return TypeKind::Categorical;
    throw Error(ErrorCode::InvalidArgument, "unknown type class '" + std::string(name) + "'");
}

Rational distinct_ratio(const EventLog& log, const std::string& attribute) {
    std::set<AttributeValue> unique;
    std::int64_t values = 0;
    for (const auto& trace : log.traces()) {
        for (const auto& event : trace.events) {
            const auto& value = event.get(attribute);
            if (value.is_missing()) continue;
            unique.insert(value);
            ++values;
        }
    }
    if (values == 0) {
        throw Error(ErrorCode::NoData, "attribute '" + attribute + "' has no values");
    }
    return Rational(static_cast<std::int64_t>(unique.size()), values);
}

TypeClass classify_type(const EventLog& log, const std::string& attribute, const Rational& threshold) {
    if (threshold <= Rational(0) || threshold >= Rational(1)) {
        throw Error(ErrorCode::InvalidArgument, "type threshold must lie in (0, 1), got " + threshold.to_string());
    }
    TypeClass result;
    result.cf = distinct_ratio(log, attribute);
    result.threshold_used = threshold;
    const auto kind = log.catalog().at(attribute);
    result.kind = kind == BaseKind::Number && result.cf > threshold ? TypeKind::Quantitative
                                                                    : TypeKind::Categorical;
    return result;
}

}  // namespace attrprof
