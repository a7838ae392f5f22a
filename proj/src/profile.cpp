#include "attrprof/profile.hpp"

#include <algorithm>
#include <cstdio>

#include "attrprof/error.hpp"

namespace attrprof {

using nlohmann::json;

Profile build_profile(const EventLog& log, const Rational& threshold) {
    if (log.empty()) {
        throw Error(ErrorCode::EmptyLog, "cannot profile an empty log");
    }
    Profile profile;
    for (const auto& entry : attribute_catalog(log)) {
        AttributeProfile p;
        p.name = entry.name;
        p.kind = entry.kind;
        p.non_missing = entry.non_missing;
        p.type_class = classify_type(log, entry.name, threshold);
        p.characteristic = classify_characteristic(log, entry.name);
        if (p.characteristic.kind == CharacteristicKind::Dynamic) {
            p.cv = degree_of_variation(log, entry.name, p.type_class);
        }
        profile.emplace(entry.name, std::move(p));
    }
    return profile;
}

void FilterQuery::validate() const {
    if ((cv_min || cv_max) && characteristic != CharacteristicKind::Dynamic) {
        throw Error(ErrorCode::InvalidQuery, "CV bounds require characteristic = dynamic");
    }
    if (cv_min && cv_max && *cv_min > *cv_max) {
        throw Error(ErrorCode::InvalidRange, "cv_min exceeds cv_max");
    }
}

FilterResult filter_attributes(const Profile& profile, const FilterQuery& query) {
    query.validate();
    FilterResult result;
    for (const auto& [name, p] : profile) {
        if (query.activity && !p.characteristic.activities.contains(*query.activity)) continue;
        if (query.characteristic && p.characteristic.kind != *query.characteristic) continue;
        if (query.type && p.type_class.kind != *query.type) continue;

        const bool quantitative = p.type_class.kind == TypeKind::Quantitative;
        ++(quantitative ? result.total_quantitative : result.total_categorical);

        if (query.cv_min || query.cv_max) {
            if (!p.cv) continue;
            if (query.cv_min && p.cv->deg_var < *query.cv_min) continue;
            if (query.cv_max && p.cv->deg_var > *query.cv_max) continue;
        }
        (quantitative ? result.quantitative : result.categorical).push_back(p);
    }
    auto order = [](const AttributeProfile& a, const AttributeProfile& b) {
        if (a.cv.has_value() != b.cv.has_value()) return a.cv.has_value();
        if (a.cv && a.cv->deg_var != b.cv->deg_var) return a.cv->deg_var > b.cv->deg_var;
        return a.name < b.name;
    };
    std::sort(result.quantitative.begin(), result.quantitative.end(), order);
    std::sort(result.categorical.begin(), result.categorical.end(), order);
    return result;
}

std::string format_percent(double percent) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f", percent);
    return buf;
}

json to_json(const CvReport& report) {
    json normalization;
    if (const auto* shift = std::get_if<ShiftNormalization>(&report.normalization)) {
        normalization = {{"kind", "shifted"}, {"offset", shift->offset}};
    } else if (const auto* mapped = std::get_if<CategoryNormalization>(&report.normalization)) {
        json entries = json::array();
        for (const auto& e : mapped->mapping.entries) {
            entries.push_back({{"category", e.category}, {"frequency", e.frequency}, {"rank", e.rank}});
        }
        normalization = {{"kind", "category-mapped"}, {"mapping", std::move(entries)}};
    } else {
        normalization = {{"kind", "none"}};
    }
    return {{"perTrace", report.per_trace},
            {"degVar", report.deg_var},
            {"degVarDisplay", format_percent(report.deg_var)},
            {"contributingTraces", report.contributing_traces},
            {"skippedSingleValueTraces", report.skipped_single_value_traces},
            {"shiftNormalized", std::holds_alternative<ShiftNormalization>(report.normalization)},
            {"normalization", std::move(normalization)}};
}

json to_json(const AttributeProfile& p) {
    const auto& c = p.characteristic;
    return {{"name", p.name},
            {"kind", to_string(p.kind)},
            {"nonMissing", p.non_missing},
            {"type", to_string(p.type_class.kind)},
            {"cf", p.type_class.cf.to_string()},
            {"cfValue", p.type_class.cf.to_double()},
            {"threshold", p.type_class.threshold_used.to_string()},
            {"characteristic", to_string(c.kind)},
            {"activityCount", c.activity_count},
            {"activities", c.activities},
            {"avgPerTrace", c.avg_per_trace.to_string()},
            {"avgPerTraceValue", c.avg_per_trace.to_double()},
            {"traceSupport", c.trace_support},
            {"totalOccurrences", c.total_occurrences},
            {"cv", p.cv ? to_json(*p.cv) : json(nullptr)}};
}

json profile_to_json(const Profile& profile, const Rational& threshold) {
    json attributes = json::array();
    for (const auto& [name, p] : profile) attributes.push_back(to_json(p));
    return {{"schema", "profile/1"}, {"typeThreshold", threshold.to_string()}, {"attributes", std::move(attributes)}};
}

json to_json(const FilterQuery& query) {
    json out = json::object();
    out["activity"] = query.activity ? json(*query.activity) : json(nullptr);
    out["characteristic"] = query.characteristic ? json(to_string(*query.characteristic)) : json(nullptr);
    out["cvMin"] = query.cv_min ? json(*query.cv_min) : json(nullptr);
    out["cvMax"] = query.cv_max ? json(*query.cv_max) : json(nullptr);
    out["type"] = query.type ? json(to_string(*query.type)) : json(nullptr);
    return out;
}

namespace {

json list_entry(const AttributeProfile& p) {
    return {{"name", p.name},
            {"kind", to_string(p.kind)},
            {"type", to_string(p.type_class.kind)},
            {"characteristic", to_string(p.characteristic.kind)},
            {"activityCount", p.characteristic.activity_count},
            {"degVar", p.cv ? json(p.cv->deg_var) : json(nullptr)},
            {"degVarDisplay", p.cv ? json(format_percent(p.cv->deg_var)) : json(nullptr)}};
}

}  // namespace

json to_json(const FilterResult& result) {
    json quantitative = json::array();
    for (const auto& p : result.quantitative) quantitative.push_back(list_entry(p));
    json categorical = json::array();
    for (const auto& p : result.categorical) categorical.push_back(list_entry(p));
    return {{"quantitative", std::move(quantitative)},
            {"categorical", std::move(categorical)},
            {"counts",
             {{"quantitative", {{"total", result.total_quantitative}, {"matching", result.quantitative.size()}}},
              {"categorical", {{"total", result.total_categorical}, {"matching", result.categorical.size()}}}}}};
}

}  // namespace attrprof
