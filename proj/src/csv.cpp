#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>

#include "attrprof/error.hpp"
#include "attrprof/io.hpp"

namespace attrprof {

namespace {

struct Record {
    std::vector<std::string> fields;
    std::size_t line = 0;
};

// RFC-4180 records: quoted fields may hold delimiters, doubled quotes and
// line breaks; CRLF and LF both terminate a record.
std::vector<Record> split_records(std::string_view bytes, char delimiter) {
    if (bytes.substr(0, 3) == "\xEF\xBB\xBF") bytes.remove_prefix(3);

    std::vector<Record> records;
    Record current;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    std::size_t line = 1;
    current.line = line;

    auto end_field = [&] {
        current.fields.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        const bool blank = current.fields.size() == 1 && current.fields.front().empty();
        if (!blank) records.push_back(std::move(current));
        current = Record{};
        current.line = line;
    };

    for (std::size_t i = 0; i < bytes.size(); ++i) {
        const char c = bytes[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < bytes.size() && bytes[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        if (c == '"' && !field_started) {
            quoted = true;
            field_started = true;
        } else if (c == delimiter) {
            end_field();
        } else if (c == '\r' && i + 1 < bytes.size() && bytes[i + 1] == '\n') {
            continue;
        } else if (c == '\n') {
            ++line;
            end_record();
        } else {
            field += c;
            field_started = true;
        }
    }
    if (quoted) {
        throw Error(ErrorCode::MalformedCsv, "unterminated quoted field starting on line " +
                                                 std::to_string(current.line));
    }
    if (field_started || !field.empty() || !current.fields.empty()) end_record();
    return records;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::optional<double> parse_decimal(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) return std::nullopt;
    return value;
}

std::optional<bool> parse_bool_literal(std::string_view text, bool allow_digits) {
    text = trim(text);
    if (text == "true" || text == "TRUE") return true;
    if (text == "false" || text == "FALSE") return false;
    if (allow_digits && text == "1") return true;
    if (allow_digits && text == "0") return false;
    return std::nullopt;
}

struct ColumnPlan {
    std::string name;
    std::size_t index = 0;
    BaseKind kind = BaseKind::Text;
    bool declared_boolean = false;
};

BaseKind infer_kind(const std::vector<Record>& rows, ColumnPlan& column, EventLogBuilder& builder) {
    std::size_t numeric = 0;
    std::size_t boolean = 0;
    std::size_t declared_boolean = 0;
    std::size_t filled = 0;
    for (const auto& row : rows) {
        const std::string_view cell = column.index < row.fields.size() ? row.fields[column.index] : "";
        if (cell.empty()) continue;
        ++filled;
        if (parse_decimal(cell)) ++numeric;
        if (parse_bool_literal(cell, false)) ++boolean;
        if (parse_bool_literal(cell, true)) ++declared_boolean;
    }
    if (filled == 0) return BaseKind::Text;
    if (column.declared_boolean) {
        if (declared_boolean == filled) return BaseKind::Boolean;
        builder.add_warning("column '" + column.name +
                            "' declared boolean but holds other values; inferring its kind instead");
    }
    if (numeric == filled) return BaseKind::Number;
    if (boolean == filled) return BaseKind::Boolean;
    if (numeric > 0 || boolean > 0) {
        builder.add_warning("column '" + column.name + "' has values of mixed kinds; demoted to text");
    }
    return BaseKind::Text;
}

std::size_t require_column(const Record& header, const std::string& name, std::string_view role) {
    for (std::size_t i = 0; i < header.fields.size(); ++i) {
        if (header.fields[i] == name) return i;
    }
    throw Error(ErrorCode::MissingColumn,
                "mapped " + std::string(role) + " column '" + name + "' not found in CSV header");
}

}  // namespace

EventLog parse_csv(std::string_view bytes, const ColumnMapping& mapping) {
    auto records = split_records(bytes, mapping.delimiter);
    if (records.empty()) {
        throw Error(ErrorCode::EmptyInput, "empty CSV input");
    }
    const Record header = std::move(records.front());
    records.erase(records.begin());

    const auto case_idx = require_column(header, mapping.case_column, "case");
    const auto activity_idx = require_column(header, mapping.activity_column, "activity");
    const auto time_idx = require_column(header, mapping.time_column, "timestamp");

    EventLogBuilder builder;
    std::vector<ColumnPlan> columns;
    for (std::size_t i = 0; i < header.fields.size(); ++i) {
        if (i == case_idx || i == activity_idx || i == time_idx) continue;
        ColumnPlan column{header.fields[i], i, BaseKind::Text, mapping.boolean_columns.contains(header.fields[i])};
        column.kind = infer_kind(records, column, builder);
        columns.push_back(std::move(column));
    }

    for (const auto& row : records) {
        auto cell = [&](std::size_t idx) -> std::string_view {
            return idx < row.fields.size() ? std::string_view(row.fields[idx]) : std::string_view{};
        };
        const auto row_label = "row " + std::to_string(row.line);
        if (cell(case_idx).empty()) {
            throw Error(ErrorCode::MissingEventKey, row_label + ": empty case id");
        }
        if (cell(activity_idx).empty()) {
            throw Error(ErrorCode::MissingEventKey, row_label + ": empty activity");
        }
        Timestamp ts;
        try {
            ts = parse_timestamp(cell(time_idx), mapping.time_format);
        } catch (const Error& e) {
            throw Error(ErrorCode::BadTimestamp, row_label + ": " + e.what());
        }

        std::vector<std::pair<std::string, AttributeValue>> attributes;
        for (const auto& column : columns) {
            const auto text = cell(column.index);
            if (text.empty()) continue;
            AttributeValue value;
            switch (column.kind) {
                case BaseKind::Number: value = AttributeValue::number(*parse_decimal(text)); break;
                case BaseKind::Boolean:
                    value = AttributeValue::boolean(*parse_bool_literal(text, column.declared_boolean));
                    break;
                case BaseKind::Text: value = AttributeValue::text(std::string(text)); break;
            }
            attributes.emplace_back(column.name, std::move(value));
        }
        builder.add_event(std::string(cell(case_idx)), std::string(cell(activity_idx)), ts,
                          std::move(attributes));
    }
    return std::move(builder).build();
}

}  // namespace attrprof
