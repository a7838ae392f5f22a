#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "attrprof/discovery.hpp"
#include "attrprof/eventlog.hpp"

namespace attrprof {

enum class AggregationKind { Mean, Median, Min, Max, StdDev, Count, Mode, TopKShares };

struct AggregationFn {
    AggregationKind kind = AggregationKind::Mean;
    /// Only meaningful for TopKShares.
    std::size_t k = 0;

    bool is_quantitative() const noexcept {
        return kind != AggregationKind::Mode && kind != AggregationKind::TopKShares;
    }
    /// "mean", "median", "min", "max", "stddev", "count", "mode", "topk:<k>".
    std::string name() const;
    static AggregationFn parse(std::string_view name);

    friend auto operator<=>(const AggregationFn&, const AggregationFn&) = default;
};

struct CategoryShare {
    std::string category;
    double percent = 0;

    friend bool operator==(const CategoryShare&, const CategoryShare&) = default;
};

/// Marker for a scoped activity without any value of the attribute.
struct NoData {
    friend bool operator==(const NoData&, const NoData&) = default;
};

using AggregationResult = std::variant<NoData, double, std::string, std::vector<CategoryShare>>;

/// One-decimal rendering used by DOT and UI ("n/a" for NoData).
std::string display(const AggregationResult& result);

struct EventAttributeAggregation {
    std::string activity;
    std::string attribute;
    std::vector<AttributeValue> values;
    AggregationFn function;
    AggregationResult result;
    /// Events at the activity where the attribute was missing.
    std::size_t excluded_missing = 0;

    friend bool operator==(const EventAttributeAggregation&, const EventAttributeAggregation&) = default;
};

struct DataEnhancedProcessModel {
    ProcessModel model;
    /// activity → aggregations, ordered by (attribute, function).
    std::map<std::string, std::vector<EventAttributeAggregation>> annotations;

    friend bool operator==(const DataEnhancedProcessModel&, const DataEnhancedProcessModel&) = default;
};

struct Scope {
    /// Empty means every activity using the attribute.
    std::optional<std::string> activity;

    static Scope all() { return {}; }
    static Scope selected(std::string activity) { return Scope{std::move(activity)}; }
    /// "all" or "activity:<name>".
    static Scope parse(std::string_view text);
};

struct EnhanceRequest {
    std::string attribute;
    AggregationFn function;
    Scope scope;
};

/// Non-missing values of `attribute` over the events of `activity`.
/// Throws ErrorCode::UnknownActivity when no event has that activity.
std::vector<AttributeValue> extract_values(const EventLog& log, const std::string& activity,
                                           const std::string& attribute);

/// Throws ErrorCode::EmptyValues on an empty multiset and
/// ErrorCode::KindMismatch when a quantitative function meets non-numbers.
AggregationResult aggregate(const std::vector<AttributeValue>& values, const AggregationFn& fn);

DataEnhancedProcessModel enhance_model(const ProcessModel& model, const EventLog& log, const EnhanceRequest& request);
/// Adds the requested aggregations on top of an existing enhanced model.
DataEnhancedProcessModel enhance_model(DataEnhancedProcessModel dep, const EventLog& log,
                                       const EnhanceRequest& request);

std::string export_dot(const DataEnhancedProcessModel& dep);
/// Canonical "depmodel/1" JSON with sorted keys.
std::string export_json(const DataEnhancedProcessModel& dep);

}  // namespace attrprof
