#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "attrprof/characteristics.hpp"
#include "attrprof/enhancement.hpp"
#include "attrprof/eventlog.hpp"
#include "attrprof/typing.hpp"
#include "attrprof/variability.hpp"

namespace attrprof {

struct AttributeProfile {
    std::string name;
    BaseKind kind = BaseKind::Text;
    std::size_t non_missing = 0;
    TypeClass type_class;
    Characteristic characteristic;
    /// Present exactly for dynamic attributes.
    std::optional<CvReport> cv;

    friend bool operator==(const AttributeProfile&, const AttributeProfile&) = default;
};

using Profile = std::map<std::string, AttributeProfile>;

/// Types, characterizes and (for dynamic attributes) measures the
/// variability of every catalog attribute. Throws ErrorCode::EmptyLog.
Profile build_profile(const EventLog& log, const Rational& threshold = kDefaultTypeThreshold);

struct FilterQuery {
    std::optional<std::string> activity;
    std::optional<CharacteristicKind> characteristic;
    /// Inclusive bounds on deg_var, in percent; dynamic queries only.
    std::optional<double> cv_min;
    std::optional<double> cv_max;
    std::optional<TypeKind> type;

    /// Throws ErrorCode::InvalidRange or ErrorCode::InvalidQuery.
    void validate() const;
};

struct FilterResult {
    std::vector<AttributeProfile> quantitative;
    std::vector<AttributeProfile> categorical;
    /// Counts before the CV range is applied.
    std::size_t total_quantitative = 0;
    std::size_t total_categorical = 0;
};

FilterResult filter_attributes(const Profile& profile, const FilterQuery& query);

nlohmann::json to_json(const CvReport& report);
nlohmann::json to_json(const AttributeProfile& profile);
nlohmann::json profile_to_json(const Profile& profile, const Rational& threshold);
nlohmann::json to_json(const FilterQuery& query);
nlohmann::json to_json(const FilterResult& result);

/// Percent with one decimal, e.g. "25.3".
std::string format_percent(double percent);

}  // namespace attrprof
