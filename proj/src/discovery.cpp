#include "attrprof/discovery.hpp"

#include <iterator>

#include "attrprof/error.hpp"

namespace attrprof {

ProcessModel discover_dfg(const EventLog& log, const DiscoveryOptions& options) {
    if (log.empty()) {
        throw Error(ErrorCode::EmptyLog, "cannot discover a model from an empty log");
    }
    ProcessModel model;
    for (const auto& trace : log.traces()) {
        if (trace.events.empty()) continue;
        ++model.start_activities[trace.events.front().activity];
        ++model.end_activities[trace.events.back().activity];
        for (std::size_t i = 0; i < trace.events.size(); ++i) {
            ++model.activities[trace.events[i].activity];
            if (i + 1 < trace.events.size()) {
                ++model.edges[{trace.events[i].activity, trace.events[i + 1].activity}];
            }
        }
    }
    if (options.min_edge_frequency > 0) {
        std::erase_if(model.edges, [&](const auto& edge) { return edge.second < options.min_edge_frequency; });
    }
    return model;
}

bool replays(const ProcessModel& model, const Trace& trace) {
    if (trace.events.empty()) return true;
    if (!model.start_activities.contains(trace.events.front().activity) ||
        !model.end_activities.contains(trace.events.back().activity)) {
        return false;
    }
    for (std::size_t i = 0; i + 1 < trace.events.size(); ++i) {
        if (!model.edges.contains({trace.events[i].activity, trace.events[i + 1].activity})) return false;
    }
    return model.has_activity(trace.events.front().activity);
}

}  // namespace attrprof
