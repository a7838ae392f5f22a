#pragma once

#include <string>

#include "attrprof/eventlog.hpp"
#include "attrprof/rational.hpp"

namespace attrprof {

enum class TypeKind { Categorical, Quantitative };

std::string_view to_string(TypeKind kind) noexcept;
TypeKind type_kind_from_string(std::string_view name);

struct TypeClass {
    TypeKind kind = TypeKind::Categorical;
    /// |unique values| / |values|, non-missing values only.
    Rational cf;
    Rational threshold_used;

    friend bool operator==(const TypeClass&, const TypeClass&) = default;
};

inline const Rational kDefaultTypeThreshold{1, 20};

/// Distinct-value ratio of `attribute` over the whole log. Throws
/// ErrorCode::NoData when the attribute never has a value.
Rational distinct_ratio(const EventLog& log, const std::string& attribute);

/// Numbers are Quantitative iff cf > threshold; text and boolean attributes
/// are always Categorical. `threshold` must lie in (0, 1).
TypeClass classify_type(const EventLog& log, const std::string& attribute,
                        const Rational& threshold = kDefaultTypeThreshold);

}  // namespace attrprof
