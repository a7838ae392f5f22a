#include "attrprof/enhancement.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "attrprof/characteristics.hpp"
#include "attrprof/error.hpp"

namespace attrprof {

std::string AggregationFn::name() const {
    switch (kind) {
        case AggregationKind::Mean: return "mean";
        case AggregationKind::Median: return "median";
        case AggregationKind::Min: return "min";
        case AggregationKind::Max: return "max";
        case AggregationKind::StdDev: return "stddev";
        case AggregationKind::Count: return "count";
        case AggregationKind::Mode: return "mode";
        case AggregationKind::TopKShares: return "topk:" + std::to_string(k);
    }
    return "mean";
}

AggregationFn AggregationFn::parse(std::string_view name) {
    static const std::pair<std::string_view, AggregationKind> simple[] = {
        {"mean", AggregationKind::Mean},     {"median", AggregationKind::Median}, {"min", AggregationKind::Min},
        {"max", AggregationKind::Max},       {"stddev", AggregationKind::StdDev}, {"count", AggregationKind::Count},
        {"mode", AggregationKind::Mode},
    };
    for (const auto& [text, kind] : simple) {
        if (name == text) return AggregationFn{kind, 0};
    }
    if (name.starts_with("topk:")) {
        auto digits = name.substr(5);
        std::size_t k = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
        if (ec == std::errc{} && ptr == digits.data() + digits.size() && k > 0) {
            return AggregationFn{AggregationKind::TopKShares, k};
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown aggregation function '" + std::string(name) + "'");
}

Scope Scope::parse(std::string_view text) {
    if (text == "all") return all();
    if (text.starts_with("activity:") && text.size() > 9) return selected(std::string(text.substr(9)));
    throw Error(ErrorCode::InvalidArgument, "scope must be 'all' or 'activity:<name>', got '" + std::string(text) + "'");
}

namespace {

std::string one_decimal(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f", value);
    return buf;
}

// (category, count) sorted by count descending, category ascending.
std::vector<std::pair<std::string, std::size_t>> ranked_categories(const std::vector<AttributeValue>& values) {
    std::map<std::string, std::size_t> counts;
    for (const auto& v : values) ++counts[v.category_key()];
    std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    return ranked;
}

}  // namespace

std::string display(const AggregationResult& result) {
    struct Visitor {
        std::string operator()(const NoData&) const { return "n/a"; }
        std::string operator()(double v) const { return one_decimal(v); }
        std::string operator()(const std::string& v) const { return v; }
        std::string operator()(const std::vector<CategoryShare>& shares) const {
            std::string out;
            for (const auto& share : shares) {
                if (!out.empty()) out += ", ";
                out += share.category + " " + one_decimal(share.percent) + "%";
            }
            return out;
        }
    };
    return std::visit(Visitor{}, result);
}

std::vector<AttributeValue> extract_values(const EventLog& log, const std::string& activity,
                                           const std::string& attribute) {
    bool seen = false;
    std::vector<AttributeValue> values;
    for (const auto& trace : log.traces()) {
        for (const auto& event : trace.events) {
            if (event.activity != activity) continue;
            seen = true;
            if (event.has(attribute)) values.push_back(event.get(attribute));
        }
    }
    if (!seen) {
        throw Error(ErrorCode::UnknownActivity, "unknown activity '" + activity + "'");
    }
    return values;
}

AggregationResult aggregate(const std::vector<AttributeValue>& values, const AggregationFn& fn) {
    if (values.empty()) {
        throw Error(ErrorCode::EmptyValues, "cannot aggregate an empty value multiset");
    }
    if (!fn.is_quantitative()) {
        const auto ranked = ranked_categories(values);
        if (fn.kind == AggregationKind::Mode) return ranked.front().first;
        std::vector<CategoryShare> shares;
        const auto total = static_cast<double>(values.size());
        for (std::size_t i = 0; i < ranked.size() && i < fn.k; ++i) {
            shares.push_back(CategoryShare{ranked[i].first, static_cast<double>(ranked[i].second) / total * 100.0});
        }
        return shares;
    }

    std::vector<double> numbers;
    numbers.reserve(values.size());
    for (const auto& v : values) {
        if (v.kind() != ValueKind::Number) {
            throw Error(ErrorCode::KindMismatch, "'" + fn.name() + "' needs numeric values");
        }
        numbers.push_back(v.as_number());
    }
    const auto n = static_cast<double>(numbers.size());
    double sum = 0;
    for (double v : numbers) sum += v;
    const double mean = sum / n;
    switch (fn.kind) {
        case AggregationKind::Mean: return mean;
        case AggregationKind::Min: return *std::min_element(numbers.begin(), numbers.end());
        case AggregationKind::Max: return *std::max_element(numbers.begin(), numbers.end());
        case AggregationKind::Count: return n;
        case AggregationKind::Median: {
            std::sort(numbers.begin(), numbers.end());
            const auto mid = numbers.size() / 2;
            return numbers.size() % 2 == 1 ? numbers[mid] : (numbers[mid - 1] + numbers[mid]) / 2.0;
        }
        case AggregationKind::StdDev: {
            if (numbers.size() < 2) return 0.0;
            double squares = 0;
            for (double v : numbers) squares += (v - mean) * (v - mean);
            return std::sqrt(squares / (n - 1));
        }
        default: break;
    }
    return mean;
}

namespace {

EventAttributeAggregation aggregate_at(const EventLog& log, const std::string& activity, const EnhanceRequest& request) {
    EventAttributeAggregation aggregation;
    aggregation.activity = activity;
    aggregation.attribute = request.attribute;
    aggregation.function = request.function;
    aggregation.values = extract_values(log, activity, request.attribute);
    for (const auto& trace : log.traces()) {
        for (const auto& event : trace.events) {
            if (event.activity == activity && !event.has(request.attribute)) ++aggregation.excluded_missing;
        }
    }
    aggregation.result = aggregation.values.empty() ? AggregationResult{NoData{}}
                                                    : aggregate(aggregation.values, request.function);
    return aggregation;
}

void attach(DataEnhancedProcessModel& dep, EventAttributeAggregation aggregation) {
    auto& slot = dep.annotations[aggregation.activity];
    auto key = [](const EventAttributeAggregation& a) { return std::tie(a.attribute, a.function); };
    auto it = std::lower_bound(slot.begin(), slot.end(), aggregation,
                               [&](const auto& a, const auto& b) { return key(a) < key(b); });
    if (it != slot.end() && key(*it) == key(aggregation)) {
        *it = std::move(aggregation);
    } else {
        slot.insert(it, std::move(aggregation));
    }
}

}  // namespace

DataEnhancedProcessModel enhance_model(const ProcessModel& model, const EventLog& log, const EnhanceRequest& request) {
    return enhance_model(DataEnhancedProcessModel{model, {}}, log, request);
}

DataEnhancedProcessModel enhance_model(DataEnhancedProcessModel dep, const EventLog& log,
                                       const EnhanceRequest& request) {
    std::vector<std::string> targets;
    if (request.scope.activity) {
        targets.push_back(*request.scope.activity);
    } else {
        const auto covered = activity_coverage(log, request.attribute);
        targets.assign(covered.begin(), covered.end());
    }
    std::vector<EventAttributeAggregation> staged;
    for (const auto& activity : targets) {
        if (!dep.model.has_activity(activity)) {
            throw Error(ErrorCode::UnknownActivity, "activity '" + activity + "' is not part of the model");
        }
        staged.push_back(aggregate_at(log, activity, request));
    }
    for (auto& aggregation : staged) attach(dep, std::move(aggregation));
    return dep;
}

namespace {

std::string escape_record(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '\\': case '"': case '{': case '}': case '|': case '<': case '>':
                out += '\\';
                out += c;
                break;
            case '\n': out += "\\n"; break;
            default: out += c;
        }
    }
    return out;
}

nlohmann::json result_to_json(const AggregationResult& result) {
    struct Visitor {
        nlohmann::json operator()(const NoData&) const { return nullptr; }
        nlohmann::json operator()(double v) const { return v; }
        nlohmann::json operator()(const std::string& v) const { return v; }
        nlohmann::json operator()(const std::vector<CategoryShare>& shares) const {
            auto out = nlohmann::json::array();
            for (const auto& s : shares) out.push_back({{"category", s.category}, {"percent", s.percent}});
            return out;
        }
    };
    return std::visit(Visitor{}, result);
}

}  // namespace

std::string export_dot(const DataEnhancedProcessModel& dep) {
    std::map<std::string, std::string> ids;
    for (const auto& [activity, frequency] : dep.model.activities) {
        ids.emplace(activity, "n" + std::to_string(ids.size()));
    }
    std::string out = "digraph dep {\n  rankdir=TB;\n  node [shape=record, fontname=\"Helvetica\", fontsize=10];\n";
    for (const auto& [activity, frequency] : dep.model.activities) {
        std::string label = "{" + escape_record(activity) + "|" + std::to_string(frequency);
        if (auto it = dep.annotations.find(activity); it != dep.annotations.end()) {
            for (const auto& a : it->second) {
                label += "|" + escape_record(a.attribute + " | " + a.function.name() + " = " + display(a.result));
            }
        }
        label += "}";
        out += "  " + ids.at(activity) + " [label=\"" + label + "\"];\n";
    }
    for (const auto& [edge, frequency] : dep.model.edges) {
        out += "  " + ids.at(edge.first) + " -> " + ids.at(edge.second) + " [label=\"" + std::to_string(frequency) +
               "\"];\n";
    }
    out += "}\n";
    return out;
}

std::string export_json(const DataEnhancedProcessModel& dep) {
    using nlohmann::json;
    json activities = json::array();
    for (const auto& [activity, frequency] : dep.model.activities) {
        json annotations = json::array();
        if (auto it = dep.annotations.find(activity); it != dep.annotations.end()) {
            for (const auto& a : it->second) {
                annotations.push_back({{"attribute", a.attribute},
                                       {"function", a.function.name()},
                                       {"result", result_to_json(a.result)},
                                       {"display", display(a.result)},
                                       {"noData", std::holds_alternative<NoData>(a.result)},
                                       {"valueCount", a.values.size()},
                                       {"excludedMissing", a.excluded_missing}});
            }
        }
        activities.push_back({{"name", activity}, {"frequency", frequency}, {"annotations", std::move(annotations)}});
    }
    json edges = json::array();
    for (const auto& [edge, frequency] : dep.model.edges) {
        edges.push_back({{"from", edge.first}, {"to", edge.second}, {"frequency", frequency}});
    }
    json doc{{"schema", "depmodel/1"},
             {"activities", std::move(activities)},
             {"edges", std::move(edges)},
             {"starts", dep.model.start_activities},
             {"ends", dep.model.end_activities}};
    return doc.dump();
}

}  // namespace attrprof
