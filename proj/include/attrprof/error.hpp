#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace attrprof {

/// Machine-readable failure categories shared by the library, the CLI and
/// the HTTP service (which reports them as the "code" field of error bodies).
enum class ErrorCode {
    EmptyInput,
    MissingColumn,
    BadTimestamp,
    MalformedCsv,
    MalformedXml,
    MalformedJson,
    MissingEventKey,
    NoData,
    UndefinedCv,
    VariabilityUndefined,
    EmptyLog,
    UnknownActivity,
    EmptyValues,
    KindMismatch,
    InvalidRange,
    InvalidQuery,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace attrprof
