#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace attrprof {

/// UTC instant at millisecond precision.
using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

/// Kind of a stored value; Missing stands for an attribute without a value.
enum class ValueKind { Missing, Text, Number, Boolean };

/// Kind shared by all non-missing values of one attribute within a log.
enum class BaseKind { Text, Number, Boolean };

std::string_view to_string(BaseKind kind) noexcept;
BaseKind base_kind_from_string(std::string_view name);

class AttributeValue {
public:
    AttributeValue() = default;

    static AttributeValue missing() { return {}; }
    static AttributeValue text(std::string value) { return AttributeValue(Storage{std::move(value)}); }
    static AttributeValue number(double value) { return AttributeValue(Storage{value}); }
    static AttributeValue boolean(bool value) { return AttributeValue(Storage{value}); }

    ValueKind kind() const noexcept;
    bool is_missing() const noexcept { return std::holds_alternative<std::monostate>(value_); }

    const std::string& as_text() const { return std::get<std::string>(value_); }
    double as_number() const { return std::get<double>(value_); }
    bool as_boolean() const { return std::get<bool>(value_); }

    /// Textual form used when a value is treated as a category: text as-is,
    /// booleans as "true"/"false", numbers as the shortest round-trip decimal.
    std::string category_key() const;

    friend bool operator==(const AttributeValue&, const AttributeValue&) = default;
    friend bool operator<(const AttributeValue& a, const AttributeValue& b) { return a.value_ < b.value_; }

private:
    using Storage = std::variant<std::monostate, std::string, double, bool>;
    explicit AttributeValue(Storage value) : value_(std::move(value)) {}

    Storage value_;
};

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

struct Event {
    std::string case_id;
    std::string activity;
    Timestamp timestamp{};
    /// Only non-missing values are stored; absent keys read as Missing.
    std::map<std::string, AttributeValue> attributes;
    /// Position within the owning trace.
    std::size_t ordinal = 0;

    const AttributeValue& get(const std::string& attribute) const;
    bool has(const std::string& attribute) const { return attributes.contains(attribute); }

    friend bool operator==(const Event&, const Event&) = default;
};

struct Trace {
    std::string case_id;
    std::vector<Event> events;

    friend bool operator==(const Trace&, const Trace&) = default;
};

/// Multiset of traces, immutable once built. Construct through
/// EventLogBuilder or EventLog::from_traces.
class EventLog {
public:
    EventLog() = default;

    /// Takes traces that already satisfy the ordering invariants and derives
    /// the attribute catalog from them.
    static EventLog from_traces(std::vector<Trace> traces, std::vector<std::string> warnings = {});

    const std::vector<Trace>& traces() const noexcept { return traces_; }
    const std::map<std::string, BaseKind>& catalog() const noexcept { return catalog_; }
    /// Non-fatal notes produced during ingestion (e.g. mixed-kind demotions).
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    bool empty() const noexcept { return traces_.empty(); }
    std::size_t total_events() const noexcept;
    /// Every activity name with its event count.
    std::map<std::string, std::size_t> activity_counts() const;
    bool has_activity(std::string_view activity) const;

    /// Structural equality: same traces (compared per case id, order of
    /// traces irrelevant) and same catalog. Warnings are ignored.
    friend bool operator==(const EventLog& a, const EventLog& b);

private:
    std::vector<Trace> traces_;
    std::map<std::string, BaseKind> catalog_;
    std::vector<std::string> warnings_;
};

/// Collects events in source order and produces a normalized EventLog:
/// events grouped by case (cases in order of first appearance), stably
/// sorted by timestamp, ordinals assigned, attributes of mixed kinds demoted
/// to Text.
class EventLogBuilder {
public:
    void add_event(std::string case_id, std::string activity, Timestamp timestamp,
                   std::vector<std::pair<std::string, AttributeValue>> attributes);
    void add_warning(std::string warning) { warnings_.push_back(std::move(warning)); }
    std::size_t event_count() const noexcept { return event_count_; }

    EventLog build() &&;

private:
    std::vector<Trace> traces_;
    std::map<std::string, std::size_t, std::less<>> trace_index_;
    std::vector<std::string> warnings_;
    std::size_t event_count_ = 0;
};

struct CatalogEntry {
    std::string name;
    BaseKind kind;
    std::size_t non_missing = 0;
    std::size_t total_events = 0;

    friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

/// Profiled attributes sorted by name; case, activity and timestamp excluded.
std::vector<CatalogEntry> attribute_catalog(const EventLog& log);

/// "1970-01-01T00:00:00.000Z" style rendering.
std::string format_timestamp(Timestamp ts);

}  // namespace attrprof
