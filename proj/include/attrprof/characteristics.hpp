#pragma once

#include <cstddef>
#include <set>
#include <string>

#include "attrprof/eventlog.hpp"
#include "attrprof/rational.hpp"

namespace attrprof {

enum class CharacteristicKind { Static, SemiDynamic, Dynamic };

std::string_view to_string(CharacteristicKind kind) noexcept;
CharacteristicKind characteristic_from_string(std::string_view name);

struct Characteristic {
    CharacteristicKind kind = CharacteristicKind::Static;
    std::set<std::string> activities;
    std::size_t activity_count = 0;
    Rational avg_per_trace;
    /// Number of traces using the attribute at least once.
    std::size_t trace_support = 0;
    std::size_t total_occurrences = 0;

    friend bool operator==(const Characteristic&, const Characteristic&) = default;
};

/// Activities of the events where `attribute` has a value.
std::set<std::string> activity_coverage(const EventLog& log, const std::string& attribute);

/// Sub-log of the traces that use `attribute` at least once, traces kept whole.
EventLog filter_traces_with(const EventLog& log, const std::string& attribute);

/// Exact mean number of events carrying `attribute` per trace of the
/// sub-log. Throws ErrorCode::NoData when no trace uses the attribute.
Rational avg_occurrences(const EventLog& log, const std::string& attribute);

Characteristic classify_characteristic(const EventLog& log, const std::string& attribute);

}  // namespace attrprof
