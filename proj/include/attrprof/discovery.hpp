#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>

#include "attrprof/eventlog.hpp"

namespace attrprof {

using Edge = std::pair<std::string, std::string>;

/// Directly-follows graph: activities with event frequencies, observed
/// successions with pair counts, and start/end activity frequencies.
struct ProcessModel {
    std::map<std::string, std::size_t> activities;
    std::map<Edge, std::size_t> edges;
    std::map<std::string, std::size_t> start_activities;
    std::map<std::string, std::size_t> end_activities;

    bool has_activity(const std::string& activity) const { return activities.contains(activity); }

    friend bool operator==(const ProcessModel&, const ProcessModel&) = default;
};

struct DiscoveryOptions {
    /// Edges observed fewer times are dropped; 0 keeps everything.
    std::size_t min_edge_frequency = 0;
};

/// Throws ErrorCode::EmptyLog for a log without traces.
ProcessModel discover_dfg(const EventLog& log, const DiscoveryOptions& options = {});

/// True when the trace starts at a start activity, ends at an end activity
/// and every consecutive pair of its events is an edge of the model.
bool replays(const ProcessModel& model, const Trace& trace);

}  // namespace attrprof
