#include "attrprof/service.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

#include <httplib.h>
#include <json.hpp>
#include <openssl/sha.h>

#include "attrprof/discovery.hpp"
#include "attrprof/enhancement.hpp"
#include "attrprof/error.hpp"
#include "attrprof/profile.hpp"

namespace attrprof {

using nlohmann::json;

ServiceConfig ServiceConfig::from_env() {
    ServiceConfig config;
    if (const char* port = std::getenv("ATTRPROF_PORT")) config.port = std::atoi(port);
    if (const char* cap = std::getenv("ATTRPROF_MAX_UPLOAD_BYTES")) {
        config.max_upload_bytes = static_cast<std::size_t>(std::strtoull(cap, nullptr, 10));
    }
    return config;
}

std::string content_id(std::string_view bytes) {
    unsigned char digest[SHA256_DIGEST_LENGTH];
    SHA256(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), digest);
    static constexpr char hex[] = "0123456789abcdef";
    std::string id;
    for (int i = 0; i < 8; ++i) {
        id += hex[digest[i] >> 4];
        id += hex[digest[i] & 0xF];
    }
    return id;
}

LogStore::LogStore(std::optional<std::filesystem::path> persist_dir) : persist_dir_(std::move(persist_dir)) {
    if (!persist_dir_) return;
    std::filesystem::create_directories(*persist_dir_);
    for (const auto& entry : std::filesystem::directory_iterator(*persist_dir_)) {
        if (entry.path().extension() == ".json") insert(load_log(entry.path()));
    }
}

LogStore::Inserted LogStore::insert(std::string_view bytes, LogFormat format, const ColumnMapping& mapping) {
    return insert(parse_log(bytes, format, mapping));
}

LogStore::Inserted LogStore::insert(EventLog log) {
    const auto canonical = to_json(log);
    const auto id = content_id(canonical);
    {
        std::shared_lock lock(mutex_);
        if (auto it = logs_.find(id); it != logs_.end()) return {id, it->second, false};
    }
    if (persist_dir_) {
        std::ofstream(*persist_dir_ / (id + ".json"), std::ios::binary) << canonical;
    }
    return put(id, std::move(log));
}

LogStore::Inserted LogStore::put(const std::string& id, EventLog log) {
    std::unique_lock lock(mutex_);
    auto [it, created] = logs_.try_emplace(id, std::make_shared<const EventLog>(std::move(log)));
    return {id, it->second, created};
}

std::shared_ptr<const EventLog> LogStore::find(const std::string& id) const {
    std::shared_lock lock(mutex_);
    auto it = logs_.find(id);
    return it == logs_.end() ? nullptr : it->second;
}

std::vector<std::string> LogStore::ids() const {
    std::shared_lock lock(mutex_);
    std::vector<std::string> out;
    for (const auto& [id, log] : logs_) out.push_back(id);
    return out;
}

namespace {

class NotFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void send_json(httplib::Response& res, int status, const std::string& body) {
    res.status = status;
    res.set_content(body, "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code, const std::string& message) {
    send_json(res, status, json{{"error", {{"code", code}, {"message", message}}}}.dump());
}

template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
    return [handler](const httplib::Request& req, httplib::Response& res) {
        try {
            handler(req, res);
        } catch (const NotFound& e) {
            send_error(res, 404, "not-found", e.what());
        } catch (const Error& e) {
            send_error(res, 400, to_string(e.code()), e.what());
        } catch (const json::exception& e) {
            send_error(res, 400, to_string(ErrorCode::MalformedJson), e.what());
        } catch (const std::exception& e) {
            send_error(res, 500, "internal", e.what());
        }
    };
}

std::optional<std::string> param(const httplib::Request& req, const char* name) {
    if (!req.has_param(name)) return std::nullopt;
    auto value = req.get_param_value(name);
    if (value.empty()) return std::nullopt;
    return value;
}

double parse_percent(const std::string& text, const char* name) {
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used == text.size()) return value;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " is not a number: '" + text + "'");
}

std::size_t parse_count(const std::string& text, const char* name) {
    std::size_t value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw Error(ErrorCode::InvalidArgument, std::string(name) + " is not a non-negative integer: '" + text + "'");
    }
    return value;
}

Rational threshold_param(const httplib::Request& req) {
    const auto th = param(req, "th");
    return th ? Rational::parse(*th) : kDefaultTypeThreshold;
}

EnhanceRequest enhance_request_from_json(const json& body) {
    EnhanceRequest request;
    request.attribute = body.at("attribute").get<std::string>();
    request.function = AggregationFn::parse(body.value("fn", std::string("mean")));
    const auto scope = body.value("scope", json("all"));
    if (scope.is_object()) {
        request.scope = Scope::selected(scope.at("activity").get<std::string>());
    } else {
        request.scope = Scope::parse(scope.get<std::string>());
    }
    return request;
}

}  // namespace

Service::Service(ServiceConfig config, std::shared_ptr<LogStore> store)
    : config_(std::move(config)), store_(std::move(store)), server_(std::make_unique<httplib::Server>()) {
    install_routes();
}

Service::~Service() { stop(); }

int Service::bind() {
    if (config_.port == 0) {
        config_.port = server_->bind_to_any_port(config_.host);
    } else if (!server_->bind_to_port(config_.host, config_.port)) {
        config_.port = -1;
    }
    if (config_.port < 0) {
        throw Error(ErrorCode::InvalidArgument, "cannot bind " + config_.host);
    }
    return config_.port;
}

void Service::run() { server_->listen_after_bind(); }

void Service::stop() {
    if (server_) server_->stop();
}

void Service::install_routes() {
    auto& srv = *server_;
    srv.set_payload_max_length(config_.max_upload_bytes);
    srv.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (!res.body.empty()) return;
        if (res.status == 413) {
            send_error(res, 413, "payload-too-large", "upload exceeds the configured size cap");
        } else if (res.status == 404) {
            send_error(res, 404, "not-found", "no such endpoint");
        }
    });

    auto lookup = [store = store_](const std::string& id) {
        auto log = store->find(id);
        if (!log) throw NotFound("unknown log id '" + id + "'");
        return log;
    };

    srv.Get("/health", [](const httplib::Request&, httplib::Response& res) {
        send_json(res, 200, R"({"status":"ok"})");
    });

    srv.Get("/logs", guarded([store = store_](const httplib::Request&, httplib::Response& res) {
        send_json(res, 200, json{{"ids", store->ids()}}.dump());
    }));

    srv.Post("/logs", guarded([store = store_](const httplib::Request& req, httplib::Response& res) {
        if (req.body.empty()) throw Error(ErrorCode::EmptyInput, "empty upload");
        ColumnMapping mapping;
        if (auto v = param(req, "caseColumn")) mapping.case_column = *v;
        if (auto v = param(req, "activityColumn")) mapping.activity_column = *v;
        if (auto v = param(req, "timeColumn")) mapping.time_column = *v;
        if (auto v = param(req, "timeFormat")) mapping.time_format = time_format_from_string(*v);
        if (auto v = param(req, "booleanColumns")) {
            std::istringstream in(*v);
            for (std::string col; std::getline(in, col, ',');) {
                if (!col.empty()) mapping.boolean_columns.insert(col);
            }
        }
        LogFormat format = sniff_format(req.body);
        if (auto v = param(req, "format")) {
            auto ext = format_from_extension("x." + *v);
            if (!ext) throw Error(ErrorCode::InvalidArgument, "unknown format '" + *v + "'");
            format = *ext;
        }
        const auto inserted = store->insert(req.body, format, mapping);
        send_json(res, inserted.created ? 201 : 200,
                  json{{"id", inserted.id},
                       {"traces", inserted.log->traces().size()},
                       {"events", inserted.log->total_events()},
                       {"warnings", inserted.log->warnings()}}
                      .dump());
    }));

    srv.Get(R"(/logs/([^/]+)/profile)", guarded([lookup](const httplib::Request& req, httplib::Response& res) {
        const auto log = lookup(req.matches[1]);
        const auto th = threshold_param(req);
        send_json(res, 200, profile_to_json(build_profile(*log, th), th).dump());
    }));

    srv.Get(R"(/logs/([^/]+)/attributes)", guarded([lookup](const httplib::Request& req, httplib::Response& res) {
        const auto log = lookup(req.matches[1]);
        FilterQuery query;
        query.activity = param(req, "activity");
        if (auto v = param(req, "characteristic")) query.characteristic = characteristic_from_string(*v);
        if (auto v = param(req, "cvMin")) query.cv_min = parse_percent(*v, "cvMin");
        if (auto v = param(req, "cvMax")) query.cv_max = parse_percent(*v, "cvMax");
        if (auto v = param(req, "type")) query.type = type_kind_from_string(*v);
        query.validate();
        const auto result = filter_attributes(build_profile(*log, threshold_param(req)), query);
        send_json(res, 200, to_json(result).dump());
    }));

    srv.Get(R"(/logs/([^/]+)/model)", guarded([lookup](const httplib::Request& req, httplib::Response& res) {
        const auto log = lookup(req.matches[1]);
        DiscoveryOptions options;
        if (auto v = param(req, "minEdgeFrequency")) options.min_edge_frequency = parse_count(*v, "minEdgeFrequency");
        send_json(res, 200, export_json(DataEnhancedProcessModel{discover_dfg(*log, options), {}}));
    }));

    srv.Post(R"(/logs/([^/]+)/enhance)", guarded([lookup](const httplib::Request& req, httplib::Response& res) {
        const auto log = lookup(req.matches[1]);
        const auto body = json::parse(req.body);
        DataEnhancedProcessModel dep{discover_dfg(*log), {}};
        if (body.is_array()) {
            for (const auto& item : body) dep = enhance_model(std::move(dep), *log, enhance_request_from_json(item));
        } else {
            dep = enhance_model(std::move(dep), *log, enhance_request_from_json(body));
        }
        send_json(res, 200, export_json(dep));
    }));

    srv.Get(R"(/logs/([^/]+)/dep\.dot)", guarded([lookup](const httplib::Request& req, httplib::Response& res) {
        const auto log = lookup(req.matches[1]);
        DataEnhancedProcessModel dep{discover_dfg(*log), {}};
        if (auto attribute = param(req, "attribute")) {
            EnhanceRequest request{*attribute, AggregationFn::parse(param(req, "fn").value_or("mean")),
                                   Scope::parse(param(req, "scope").value_or("all"))};
            dep = enhance_model(std::move(dep), *log, request);
        }
        res.status = 200;
        res.set_content(export_dot(dep), "text/vnd.graphviz");
    }));
}

}  // namespace attrprof
