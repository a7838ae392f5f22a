#include <fstream>
#include <sstream>

#include <json.hpp>

#include "attrprof/error.hpp"
#include "attrprof/io.hpp"

namespace attrprof {

using nlohmann::json;

namespace {

json value_to_json(const AttributeValue& value) {
    switch (value.kind()) {
        case ValueKind::Text: return value.as_text();
        case ValueKind::Number: return value.as_number();
        case ValueKind::Boolean: return value.as_boolean();
        case ValueKind::Missing: break;
    }
    return nullptr;
}

AttributeValue value_from_json(const json& node) {
    if (node.is_string()) return AttributeValue::text(node.get<std::string>());
    if (node.is_boolean()) return AttributeValue::boolean(node.get<bool>());
    if (node.is_number()) return AttributeValue::number(node.get<double>());
    if (node.is_null()) return AttributeValue::missing();
    throw Error(ErrorCode::MalformedJson, "unsupported attribute value " + node.dump());
}

}  // namespace

std::string to_json(const EventLog& log) {
    json catalog = json::object();
    for (const auto& [name, kind] : log.catalog()) catalog[name] = to_string(kind);
    json traces = json::array();
    for (const auto& trace : log.traces()) {
        json events = json::array();
        for (const auto& event : trace.events) {
            json attributes = json::object();
            for (const auto& [name, value] : event.attributes) attributes[name] = value_to_json(value);
            events.push_back({{"activity", event.activity},
                              {"timestamp", event.timestamp.time_since_epoch().count()},
                              {"attributes", std::move(attributes)}});
        }
        traces.push_back({{"case", trace.case_id}, {"events", std::move(events)}});
    }
    return json{{"schema", "eventlog/1"}, {"catalog", std::move(catalog)}, {"traces", std::move(traces)}}.dump();
}

EventLog parse_log_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::MalformedJson, std::string("malformed JSON: ") + e.what());
    }
    try {
        if (doc.at("schema") != "eventlog/1") {
            throw Error(ErrorCode::MalformedJson, "unsupported log schema " + doc.at("schema").dump());
        }
        EventLogBuilder builder;
        for (const auto& trace : doc.at("traces")) {
            const auto case_id = trace.at("case").get<std::string>();
            for (const auto& event : trace.at("events")) {
                std::vector<std::pair<std::string, AttributeValue>> attributes;
                for (const auto& [name, value] : event.at("attributes").items()) {
                    attributes.emplace_back(name, value_from_json(value));
                }
                builder.add_event(case_id, event.at("activity").get<std::string>(),
                                  Timestamp{std::chrono::milliseconds{event.at("timestamp").get<std::int64_t>()}},
                                  std::move(attributes));
            }
        }
        auto log = std::move(builder).build();
        if (doc.contains("catalog")) {
            std::map<std::string, BaseKind> declared;
            for (const auto& [name, kind] : doc.at("catalog").items()) {
                declared.emplace(name, base_kind_from_string(kind.get<std::string>()));
            }
            if (declared != log.catalog()) {
                throw Error(ErrorCode::MalformedJson, "catalog does not match the attribute values");
            }
        }
        return log;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedJson, std::string("invalid log JSON: ") + e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidArgument) throw Error(ErrorCode::MalformedJson, e.what());
        throw;
    }
}

std::optional<LogFormat> format_from_extension(const std::filesystem::path& path) {
    auto ext = path.extension().string();
    for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == ".csv") return LogFormat::Csv;
    if (ext == ".xes") return LogFormat::Xes;
    if (ext == ".json") return LogFormat::Json;
    return std::nullopt;
}

LogFormat sniff_format(std::string_view bytes) {
    if (bytes.substr(0, 3) == "\xEF\xBB\xBF") bytes.remove_prefix(3);
    for (char c : bytes) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '<') return LogFormat::Xes;
        if (c == '{') return LogFormat::Json;
        break;
    }
    return LogFormat::Csv;
}

EventLog parse_log(std::string_view bytes, LogFormat format, const ColumnMapping& mapping) {
    switch (format) {
        case LogFormat::Csv: return parse_csv(bytes, mapping);
        case LogFormat::Xes: return parse_xes(bytes);
        case LogFormat::Json: return parse_log_json(bytes);
    }
    return parse_csv(bytes, mapping);
}

EventLog load_log(const std::filesystem::path& path, const ColumnMapping& mapping) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::EmptyInput, "cannot open log file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const auto bytes = buf.str();
    return parse_log(bytes, format_from_extension(path).value_or(sniff_format(bytes)), mapping);
}

}  // namespace attrprof
