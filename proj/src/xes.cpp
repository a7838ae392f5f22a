#include <charconv>
#include <cmath>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "attrprof/error.hpp"
#include "attrprof/io.hpp"

namespace attrprof {

namespace {

namespace pt = boost::property_tree;

struct XesAttribute {
    std::string type;
    std::string key;
    std::string value;
};

std::optional<XesAttribute> read_attribute(const std::string& tag, const pt::ptree& node) {
    if (tag != "string" && tag != "int" && tag != "float" && tag != "boolean" && tag != "date") {
        return std::nullopt;
    }
    const auto key = node.get_optional<std::string>("<xmlattr>.key");
    const auto value = node.get_optional<std::string>("<xmlattr>.value");
    if (!key || !value) {
        throw Error(ErrorCode::MalformedXml, "XES <" + tag + "> attribute without key/value");
    }
    return XesAttribute{tag, *key, *value};
}

AttributeValue to_value(const XesAttribute& attr) {
    auto bad = [&] {
        return Error(ErrorCode::MalformedXml,
                     "XES " + attr.type + " attribute '" + attr.key + "' has invalid value '" + attr.value + "'");
    };
    if (attr.type == "string") return AttributeValue::text(attr.value);
    if (attr.type == "int" || attr.type == "float") {
        double number = 0;
        const auto* end = attr.value.data() + attr.value.size();
        auto [ptr, ec] = std::from_chars(attr.value.data(), end, number);
        if (ec != std::errc{} || ptr != end || !std::isfinite(number)) throw bad();
        return AttributeValue::number(number);
    }
    if (attr.type == "boolean") {
        if (attr.value == "true") return AttributeValue::boolean(true);
        if (attr.value == "false") return AttributeValue::boolean(false);
        throw bad();
    }
    // Non-timestamp dates become normalized ISO text.
    try {
        return AttributeValue::text(format_timestamp(parse_timestamp(attr.value, TimeFormat::Iso8601)));
    } catch (const Error&) {
        throw bad();
    }
}

}  // namespace

EventLog parse_xes(std::string_view bytes) {
    pt::ptree doc;
    try {
        std::istringstream in{std::string(bytes)};
        pt::read_xml(in, doc);
    } catch (const pt::xml_parser_error& e) {
        throw Error(ErrorCode::MalformedXml, std::string("malformed XML: ") + e.what());
    }
    const auto root = doc.get_child_optional("log");
    if (!root) {
        throw Error(ErrorCode::MalformedXml, "XES document has no <log> root element");
    }

    EventLogBuilder builder;
    std::size_t trace_number = 0;
    for (const auto& [tag, trace] : *root) {
        if (tag != "trace") continue;
        ++trace_number;
        std::string case_id = "#" + std::to_string(trace_number);
        for (const auto& [child_tag, child] : trace) {
            if (auto attr = read_attribute(child_tag, child); attr && attr->key == "concept:name") {
                case_id = attr->value;
            }
        }
        std::size_t event_number = 0;
        for (const auto& [child_tag, event] : trace) {
            if (child_tag != "event") continue;
            ++event_number;
            std::optional<std::string> activity;
            std::optional<Timestamp> timestamp;
            std::vector<std::pair<std::string, AttributeValue>> attributes;
            for (const auto& [attr_tag, node] : event) {
                auto attr = read_attribute(attr_tag, node);
                if (!attr) continue;
                if (attr->key == "concept:name") {
                    activity = attr->value;
                } else if (attr->key == "time:timestamp") {
                    try {
                        timestamp = parse_timestamp(attr->value, TimeFormat::Iso8601);
                    } catch (const Error& e) {
                        throw Error(ErrorCode::BadTimestamp, "trace '" + case_id + "', event " +
                                                                 std::to_string(event_number) + ": " + e.what());
                    }
                } else {
                    attributes.emplace_back(attr->key, to_value(*attr));
                }
            }
            const auto where = "trace '" + case_id + "', event " + std::to_string(event_number);
            if (!activity) throw Error(ErrorCode::MissingEventKey, where + ": missing concept:name");
            if (!timestamp) throw Error(ErrorCode::MissingEventKey, where + ": missing time:timestamp");
            builder.add_event(case_id, std::move(*activity), *timestamp, std::move(attributes));
        }
    }
    return std::move(builder).build();
}

}  // namespace attrprof
