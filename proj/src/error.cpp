#include "attrprof/error.hpp"

namespace attrprof {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::EmptyInput: return "empty-input";
        case ErrorCode::MissingColumn: return "missing-column";
        case ErrorCode::BadTimestamp: return "bad-timestamp";
        case ErrorCode::MalformedCsv: return "malformed-csv";
        case ErrorCode::MalformedXml: return "malformed-xml";
        case ErrorCode::MalformedJson: return "malformed-json";
        case ErrorCode::MissingEventKey: return "missing-event-key";
        case ErrorCode::NoData: return "no-data";
        case ErrorCode::UndefinedCv: return "undefined-cv";
        case ErrorCode::VariabilityUndefined: return "variability-undefined";
        case ErrorCode::EmptyLog: return "empty-log";
        case ErrorCode::UnknownActivity: return "unknown-activity";
        case ErrorCode::EmptyValues: return "empty-values";
        case ErrorCode::KindMismatch: return "kind-mismatch";
        case ErrorCode::InvalidRange: return "invalid-range";
        case ErrorCode::InvalidQuery: return "invalid-query";
        case ErrorCode::InvalidArgument: return "invalid-argument";
    }
    return "unknown";
}

}  // namespace attrprof
