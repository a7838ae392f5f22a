#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "attrprof/eventlog.hpp"
#include "attrprof/io.hpp"

namespace httplib {
class Server;
}

namespace attrprof {

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::size_t max_upload_bytes = 64u << 20;
    std::optional<std::filesystem::path> store_dir;

    /// Defaults overridden by ATTRPROF_PORT and ATTRPROF_MAX_UPLOAD_BYTES.
    static ServiceConfig from_env();
};

/// In-memory store of immutable log snapshots keyed by content hash,
/// optionally mirrored to `<dir>/<id>.json`.
class LogStore {
public:
    explicit LogStore(std::optional<std::filesystem::path> persist_dir = std::nullopt);

    struct Inserted {
        std::string id;
        std::shared_ptr<const EventLog> log;
        bool created = false;
    };

    /// Parses and stores the upload; identical uploads map to the same id.
    Inserted insert(std::string_view bytes, LogFormat format, const ColumnMapping& mapping);
    /// Stores an already parsed log under the hash of its canonical JSON.
    Inserted insert(EventLog log);

    std::shared_ptr<const EventLog> find(const std::string& id) const;
    std::vector<std::string> ids() const;

private:
    Inserted put(const std::string& id, EventLog log);

    mutable std::shared_mutex mutex_;
    std::map<std::string, std::shared_ptr<const EventLog>> logs_;
    std::optional<std::filesystem::path> persist_dir_;
};

/// 16 hex characters of the SHA-256 of `bytes`.
std::string content_id(std::string_view bytes);

/// JSON HTTP API over a LogStore:
///   POST /logs                      upload CSV/XES/JSON, returns {"id": ...}
///   GET  /logs/{id}/profile?th=
///   GET  /logs/{id}/attributes?activity=&characteristic=&cvMin=&cvMax=&type=&th=
///   GET  /logs/{id}/model
///   POST /logs/{id}/enhance         {attribute, fn, scope} or an array of them
///   GET  /logs/{id}/dep.dot?attribute=&fn=&scope=
class Service {
public:
    Service(ServiceConfig config, std::shared_ptr<LogStore> store);
    ~Service();
    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    /// Binds the configured port (0 picks a free one) and returns it.
    int bind();
    /// Serves until stop(); call bind() first.
    void run();
    void stop();

    LogStore& store() { return *store_; }

private:
    void install_routes();

    ServiceConfig config_;
    std::shared_ptr<LogStore> store_;
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace attrprof
