#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "attrprof/eventlog.hpp"

namespace attrprof {

/// How timestamp cells are interpreted.
///  - Auto: bare integers as Ordinal, everything else as ISO-8601.
///  - Ordinal: integer n is stored as n milliseconds after the epoch.
enum class TimeFormat { Auto, Iso8601, EpochSeconds, EpochMillis, Ordinal };

TimeFormat time_format_from_string(std::string_view name);
std::string_view to_string(TimeFormat format) noexcept;

struct ColumnMapping {
    std::string case_column = "Case ID";
    std::string activity_column = "Activity";
    std::string time_column = "Timestamp";
    TimeFormat time_format = TimeFormat::Auto;
    /// Columns whose 0/1 cells count as booleans.
    std::set<std::string> boolean_columns;
    char delimiter = ',';
};

Timestamp parse_timestamp(std::string_view text, TimeFormat format);

EventLog parse_csv(std::string_view bytes, const ColumnMapping& mapping = {});
EventLog parse_xes(std::string_view bytes);

/// Internal JSON representation ("eventlog/1").
std::string to_json(const EventLog& log);
EventLog parse_log_json(std::string_view text);

enum class LogFormat { Csv, Xes, Json };

std::optional<LogFormat> format_from_extension(const std::filesystem::path& path);
/// Sniffs the payload: '<' → XES, '{' → JSON, otherwise CSV.
LogFormat sniff_format(std::string_view bytes);

EventLog parse_log(std::string_view bytes, LogFormat format, const ColumnMapping& mapping = {});
EventLog load_log(const std::filesystem::path& path, const ColumnMapping& mapping = {});

}  // namespace attrprof
