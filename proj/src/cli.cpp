#include "attrprof/cli.hpp"

#include <csignal>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "attrprof/discovery.hpp"
#include "attrprof/enhancement.hpp"
#include "attrprof/error.hpp"
#include "attrprof/io.hpp"
#include "attrprof/profile.hpp"
#include "attrprof/service.hpp"

namespace attrprof {

namespace {

struct LogOptions {
    std::string path;
    std::string case_column = "Case ID";
    std::string activity_column = "Activity";
    std::string time_column = "Timestamp";
    std::string time_format = "auto";
    std::vector<std::string> boolean_columns;
    std::string threshold = "0.05";

    void add_to(CLI::App& cmd, bool log_required) {
        auto* log = cmd.add_option("log", path, "Event log (.csv, .xes or .json)");
        if (log_required) log->required();
        cmd.add_option("--case-col", case_column, "CSV case id column")->capture_default_str();
        cmd.add_option("--activity-col", activity_column, "CSV activity column")->capture_default_str();
        cmd.add_option("--time-col", time_column, "CSV timestamp column")->capture_default_str();
        cmd.add_option("--time-format", time_format, "auto|iso8601|epoch-seconds|epoch-millis|ordinal")
            ->capture_default_str();
        cmd.add_option("--bool-col", boolean_columns, "CSV column whose 0/1 cells are booleans");
        cmd.add_option("--type-threshold", threshold, "Distinct-ratio threshold th")->capture_default_str();
    }

    ColumnMapping mapping() const {
        ColumnMapping m;
        m.case_column = case_column;
        m.activity_column = activity_column;
        m.time_column = time_column;
        m.time_format = time_format_from_string(time_format);
        m.boolean_columns.insert(boolean_columns.begin(), boolean_columns.end());
        return m;
    }

    EventLog load() const { return load_log(path, mapping()); }
    Rational type_threshold() const { return Rational::parse(threshold); }
};

void print_profile_table(const Profile& profile, std::ostream& out) {
    out << std::left << std::setw(28) << "attribute" << std::setw(9) << "kind" << std::setw(14) << "type"
        << std::setw(10) << "cf" << std::setw(16) << "characteristic" << std::setw(6) << "|Act|" << std::setw(10)
        << "avg/trace" << "degVar%\n";
    for (const auto& [name, p] : profile) {
        out << std::left << std::setw(28) << name << std::setw(9) << to_string(p.kind) << std::setw(14)
            << to_string(p.type_class.kind) << std::setw(10) << format_percent(p.type_class.cf.to_double() * 100) + "%"
            << std::setw(16) << to_string(p.characteristic.kind) << std::setw(6) << p.characteristic.activity_count
            << std::setw(10) << p.characteristic.avg_per_trace.to_string()
            << (p.cv ? format_percent(p.cv->deg_var) : std::string("-")) << "\n";
    }
}

void print_filter_table(const FilterResult& result, std::ostream& out) {
    auto section = [&](const char* title, const std::vector<AttributeProfile>& items, std::size_t total) {
        out << title << " (" << items.size() << " of " << total << ")\n";
        for (const auto& p : items) {
            out << "  " << p.name;
            if (p.cv) out << "  " << format_percent(p.cv->deg_var) << "%";
            out << "\n";
        }
    };
    section("quantitative", result.quantitative, result.total_quantitative);
    section("categorical", result.categorical, result.total_categorical);
}

Service* g_running_service = nullptr;

extern "C" void handle_stop_signal(int) {
    if (g_running_service) g_running_service->stop();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Event-log attribute profiling and data-enhanced process models", "attrprof"};
    app.require_subcommand(1);

    LogOptions profile_opts;
    std::string profile_format = "json";
    auto* profile_cmd = app.add_subcommand("profile", "Profile every attribute of a log");
    profile_opts.add_to(*profile_cmd, true);
    profile_cmd->add_option("--format", profile_format, "json|table")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();

    LogOptions filter_opts;
    std::string characteristic;
    std::optional<double> cv_min;
    std::optional<double> cv_max;
    std::string type_filter;
    std::string activity;
    std::string filter_format = "json";
    auto* filter_cmd = app.add_subcommand("filter", "List attributes matching a selection query");
    filter_opts.add_to(*filter_cmd, true);
    filter_cmd->add_option("--characteristic", characteristic, "static|semi-dynamic|dynamic")
        ->check(CLI::IsMember({"static", "semi-dynamic", "dynamic"}));
    filter_cmd->add_option("--cv-min", cv_min, "Lower degVar bound in percent");
    filter_cmd->add_option("--cv-max", cv_max, "Upper degVar bound in percent");
    filter_cmd->add_option("--type", type_filter, "quantitative|categorical")
        ->check(CLI::IsMember({"quantitative", "categorical"}));
    filter_cmd->add_option("--activity", activity, "Only attributes used at this activity");
    filter_cmd->add_option("--format", filter_format, "json|table")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();

    LogOptions enhance_opts;
    std::string attribute;
    std::string fn = "mean";
    std::string scope = "all";
    std::string out_path;
    std::size_t min_edge_frequency = 0;
    auto* enhance_cmd = app.add_subcommand("enhance", "Annotate the discovered model with an aggregation");
    enhance_opts.add_to(*enhance_cmd, true);
    enhance_cmd->add_option("--attribute", attribute, "Attribute to aggregate")->required();
    enhance_cmd->add_option("--fn", fn, "mean|median|min|max|stddev|count|mode|topk:<k>")->capture_default_str();
    enhance_cmd->add_option("--scope", scope, "all | activity:<name>")->capture_default_str();
    enhance_cmd->add_option("--out", out_path, "Output file (.dot or .json)")->required();
    enhance_cmd->add_option("--min-edge-frequency", min_edge_frequency, "Drop rarer edges");

    LogOptions serve_opts;
    auto config = ServiceConfig::from_env();
    std::optional<std::filesystem::path> store_dir;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
    serve_opts.add_to(*serve_cmd, false);
    serve_cmd->add_option("--port", config.port, "Port (0 picks a free one)")->capture_default_str();
    serve_cmd->add_option("--host", config.host, "Bind address")->capture_default_str();
    serve_cmd->add_option("--max-upload", config.max_upload_bytes, "Upload size cap in bytes")->capture_default_str();
    serve_cmd->add_option("--store-dir", store_dir, "Persist uploaded logs in this directory");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*profile_cmd) {
            const auto log = profile_opts.load();
            const auto th = profile_opts.type_threshold();
            const auto profile = build_profile(log, th);
            if (profile_format == "table") {
                print_profile_table(profile, out);
            } else {
                out << profile_to_json(profile, th).dump(2) << "\n";
            }
        } else if (*filter_cmd) {
            FilterQuery query;
            if (!activity.empty()) query.activity = activity;
            if (!characteristic.empty()) query.characteristic = characteristic_from_string(characteristic);
            if (!type_filter.empty()) query.type = type_kind_from_string(type_filter);
            query.cv_min = cv_min;
            query.cv_max = cv_max;
            try {
                query.validate();
            } catch (const Error& e) {
                err << "error: " << e.what() << "\n";
                return 1;
            }
            const auto log = filter_opts.load();
            const auto result = filter_attributes(build_profile(log, filter_opts.type_threshold()), query);
            if (filter_format == "table") {
                print_filter_table(result, out);
            } else {
                out << to_json(result).dump(2) << "\n";
            }
        } else if (*enhance_cmd) {
            const auto format = format_from_extension(out_path);
            if (format != LogFormat::Json && std::filesystem::path(out_path).extension() != ".dot") {
                err << "error: --out must end in .dot or .json\n";
                return 1;
            }
            const auto log = enhance_opts.load();
            const auto model = discover_dfg(log, DiscoveryOptions{min_edge_frequency});
            const auto dep =
                enhance_model(model, log, EnhanceRequest{attribute, AggregationFn::parse(fn), Scope::parse(scope)});
            std::ofstream file(out_path, std::ios::binary);
            file << (format == LogFormat::Json ? export_json(dep) : export_dot(dep));
            if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + out_path + "'");
            out << "wrote " << out_path << "\n";
        } else if (*serve_cmd) {
            config.store_dir = store_dir;
            auto store = std::make_shared<LogStore>(store_dir);
            if (!serve_opts.path.empty()) {
                const auto inserted = store->insert(serve_opts.load());
                out << "loaded " << serve_opts.path << " as log " << inserted.id << "\n";
            }
            Service service(config, store);
            const int port = service.bind();
            out << "listening on http://" << config.host << ":" << port << std::endl;
            g_running_service = &service;
            std::signal(SIGINT, handle_stop_signal);
            std::signal(SIGTERM, handle_stop_signal);
            service.run();
            g_running_service = nullptr;
        }
    } catch (const Error& e) {
        err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
        return e.code() == ErrorCode::InvalidArgument ? 1 : 2;
    }
    return 0;
}

}  // namespace attrprof
