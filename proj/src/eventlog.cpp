#include "attrprof/eventlog.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <set>

#include "attrprof/error.hpp"

namespace attrprof {

std::string_view to_string(BaseKind kind) noexcept {
    switch (kind) {
        case BaseKind::Text: return "text";
        case BaseKind::Number: return "number";
        case BaseKind::Boolean: return "boolean";
    }
    return "text";
}

BaseKind base_kind_from_string(std::string_view name) {
    if (name == "text") return BaseKind::Text;
    if (name == "number") return BaseKind::Number;
    if (name == "boolean") return BaseKind::Boolean;
    throw Error(ErrorCode::InvalidArgument, "unknown base kind '" + std::string(name) + "'");
}

std::string format_number(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ec == std::errc{} ? ptr : buf);
}

ValueKind AttributeValue::kind() const noexcept {
    switch (value_.index()) {
        case 1: return ValueKind::Text;
        case 2: return ValueKind::Number;
        case 3: return ValueKind::Boolean;
        default: return ValueKind::Missing;
    }
}

std::string AttributeValue::category_key() const {
    switch (kind()) {
        case ValueKind::Text: return as_text();
        case ValueKind::Number: return format_number(as_number());
        case ValueKind::Boolean: return as_boolean() ? "true" : "false";
        case ValueKind::Missing: break;
    }
    return {};
}

const AttributeValue& Event::get(const std::string& attribute) const {
    static const AttributeValue missing;
    auto it = attributes.find(attribute);
    return it == attributes.end() ? missing : it->second;
}

namespace {

BaseKind base_kind_of(const AttributeValue& value) {
    switch (value.kind()) {
        case ValueKind::Number: return BaseKind::Number;
        case ValueKind::Boolean: return BaseKind::Boolean;
        default: return BaseKind::Text;
    }
}

}  // namespace

EventLog EventLog::from_traces(std::vector<Trace> traces, std::vector<std::string> warnings) {
    EventLog log;
    for (const auto& trace : traces) {
        for (const auto& event : trace.events) {
            for (const auto& [name, value] : event.attributes) {
                if (!value.is_missing()) {
                    log.catalog_.try_emplace(name, base_kind_of(value));
                }
            }
        }
    }
    log.traces_ = std::move(traces);
    log.warnings_ = std::move(warnings);
    return log;
}

std::size_t EventLog::total_events() const noexcept {
    std::size_t total = 0;
    for (const auto& trace : traces_) total += trace.events.size();
    return total;
}

std::map<std::string, std::size_t> EventLog::activity_counts() const {
    std::map<std::string, std::size_t> counts;
    for (const auto& trace : traces_) {
        for (const auto& event : trace.events) ++counts[event.activity];
    }
    return counts;
}

bool EventLog::has_activity(std::string_view activity) const {
    for (const auto& trace : traces_) {
        for (const auto& event : trace.events) {
            if (event.activity == activity) return true;
        }
    }
    return false;
}

bool operator==(const EventLog& a, const EventLog& b) {
    if (a.catalog_ != b.catalog_ || a.traces_.size() != b.traces_.size()) return false;
    auto by_case = [](const EventLog& log) {
        std::vector<const Trace*> sorted;
        for (const auto& trace : log.traces_) sorted.push_back(&trace);
        std::stable_sort(sorted.begin(), sorted.end(),
                         [](const Trace* x, const Trace* y) { return x->case_id < y->case_id; });
        return sorted;
    };
    const auto lhs = by_case(a);
    const auto rhs = by_case(b);
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        if (!(*lhs[i] == *rhs[i])) return false;
    }
    return true;
}

void EventLogBuilder::add_event(std::string case_id, std::string activity, Timestamp timestamp,
                                std::vector<std::pair<std::string, AttributeValue>> attributes) {
    auto [it, inserted] = trace_index_.try_emplace(case_id, traces_.size());
    if (inserted) {
        traces_.push_back(Trace{case_id, {}});
    }
    Event event;
    event.case_id = std::move(case_id);
    event.activity = std::move(activity);
    event.timestamp = timestamp;
    for (auto& [name, value] : attributes) {
        if (!value.is_missing()) {
            event.attributes.insert_or_assign(std::move(name), std::move(value));
        }
    }
    traces_[it->second].events.push_back(std::move(event));
    ++event_count_;
}

EventLog EventLogBuilder::build() && {
    std::map<std::string, std::set<BaseKind>> kinds;
    for (auto& trace : traces_) {
        std::stable_sort(trace.events.begin(), trace.events.end(),
                         [](const Event& a, const Event& b) { return a.timestamp < b.timestamp; });
        for (std::size_t i = 0; i < trace.events.size(); ++i) {
            trace.events[i].ordinal = i;
            for (const auto& [name, value] : trace.events[i].attributes) {
                kinds[name].insert(base_kind_of(value));
            }
        }
    }
    for (const auto& [name, seen] : kinds) {
        if (seen.size() < 2) continue;
        warnings_.push_back("attribute '" + name + "' has values of mixed kinds; demoted to text");
        for (auto& trace : traces_) {
            for (auto& event : trace.events) {
                auto it = event.attributes.find(name);
                if (it != event.attributes.end() && it->second.kind() != ValueKind::Text) {
                    it->second = AttributeValue::text(it->second.category_key());
                }
            }
        }
    }
    return EventLog::from_traces(std::move(traces_), std::move(warnings_));
}

std::vector<CatalogEntry> attribute_catalog(const EventLog& log) {
    std::vector<CatalogEntry> entries;
    const auto total = log.total_events();
    for (const auto& [name, kind] : log.catalog()) {
        entries.push_back(CatalogEntry{name, kind, 0, total});
    }
    for (const auto& trace : log.traces()) {
        for (const auto& event : trace.events) {
            for (auto& entry : entries) {
                if (event.has(entry.name)) ++entry.non_missing;
            }
        }
    }
    return entries;
}

std::string format_timestamp(Timestamp ts) {
    using namespace std::chrono;
    const auto day = floor<days>(ts);
    const year_month_day ymd{day};
    const hh_mm_ss<milliseconds> tod{ts - day};
    char buf[40];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ld.%03ldZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<long>(tod.hours().count()), static_cast<long>(tod.minutes().count()),
                  static_cast<long>(tod.seconds().count()), static_cast<long>(tod.subseconds().count()));
    return buf;
}

}  // namespace attrprof
