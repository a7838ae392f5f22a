#include "attrprof/characteristics.hpp"

#include "attrprof/error.hpp"

namespace attrprof {

std::string_view to_string(CharacteristicKind kind) noexcept {
    switch (kind) {
        case CharacteristicKind::Static: return "static";
        case CharacteristicKind::SemiDynamic: return "semi-dynamic";
        case CharacteristicKind::Dynamic: return "dynamic";
    }
    return "static";
}

CharacteristicKind characteristic_from_string(std::string_view name) {
    if (name == "static") return CharacteristicKind::Static;
    if (name == "semi-dynamic") return CharacteristicKind::SemiDynamic;
    if (name == "dynamic") return CharacteristicKind::Dynamic;
    throw Error(ErrorCode::InvalidArgument, "unknown characteristic '" + std::string(name) + "'");
}

std::set<std::string> activity_coverage(const EventLog& log, const std::string& attribute) {
    std::set<std::string> activities;
    for (const auto& trace : log.traces()) {
        for (const auto& event : trace.events) {
            if (event.has(attribute)) activities.insert(event.activity);
        }
    }
    return activities;
}

EventLog filter_traces_with(const EventLog& log, const std::string& attribute) {
    std::vector<Trace> kept;
    for (const auto& trace : log.traces()) {
        for (const auto& event : trace.events) {
            if (event.has(attribute)) {
                kept.push_back(trace);
                break;
            }
        }
    }
    return EventLog::from_traces(std::move(kept));
}

namespace {

struct Counts {
    std::size_t traces = 0;
    std::size_t occurrences = 0;
};

Counts count_usage(const EventLog& log, const std::string& attribute) {
    Counts counts;
    for (const auto& trace : log.traces()) {
        std::size_t in_trace = 0;
        for (const auto& event : trace.events) {
            if (event.has(attribute)) ++in_trace;
        }
        if (in_trace > 0) {
            ++counts.traces;
            counts.occurrences += in_trace;
        }
    }
    if (counts.traces == 0) {
        throw Error(ErrorCode::NoData, "attribute '" + attribute + "' is not used in any trace");
    }
    return counts;
}

}  // namespace

Rational avg_occurrences(const EventLog& log, const std::string& attribute) {
    const auto counts = count_usage(log, attribute);
    return Rational(static_cast<std::int64_t>(counts.occurrences), static_cast<std::int64_t>(counts.traces));
}

Characteristic classify_characteristic(const EventLog& log, const std::string& attribute) {
    const auto counts = count_usage(log, attribute);
    Characteristic result;
    result.activities = activity_coverage(log, attribute);
    result.activity_count = result.activities.size();
    result.trace_support = counts.traces;
    result.total_occurrences = counts.occurrences;
    result.avg_per_trace =
        Rational(static_cast<std::int64_t>(counts.occurrences), static_cast<std::int64_t>(counts.traces));
    if (counts.occurrences > counts.traces) {
        result.kind = CharacteristicKind::Dynamic;
    } else if (result.activity_count == 1) {
        result.kind = CharacteristicKind::Static;
    } else {
        result.kind = CharacteristicKind::SemiDynamic;
    }
    return result;
}

}  // namespace attrprof
