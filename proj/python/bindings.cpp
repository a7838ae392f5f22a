#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "attrprof/discovery.hpp"
#include "attrprof/enhancement.hpp"
#include "attrprof/error.hpp"
#include "attrprof/io.hpp"
#include "attrprof/profile.hpp"
#include "attrprof/variability.hpp"

namespace py = pybind11;
using namespace attrprof;

namespace {

ColumnMapping mapping_from(const std::string& case_column, const std::string& activity_column,
                           const std::string& time_column, const std::string& time_format,
                           const std::set<std::string>& boolean_columns) {
    ColumnMapping mapping;
    mapping.case_column = case_column;
    mapping.activity_column = activity_column;
    mapping.time_column = time_column;
    mapping.time_format = time_format_from_string(time_format);
    mapping.boolean_columns = boolean_columns;
    return mapping;
}

FilterQuery query_from(std::optional<std::string> activity, std::optional<std::string> characteristic,
                       std::optional<double> cv_min, std::optional<double> cv_max, std::optional<std::string> type) {
    FilterQuery q;
    q.activity = std::move(activity);
    if (characteristic) q.characteristic = characteristic_from_string(*characteristic);
    q.cv_min = cv_min;
    q.cv_max = cv_max;
    if (type) q.type = type_kind_from_string(*type);
    return q;
}

// Leaked on purpose: the type object must outlive module teardown.
py::exception<Error>* error_type = nullptr;

}  // namespace

PYBIND11_MODULE(_attrprof, m) {
    error_type = new py::exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            auto type = py::reinterpret_borrow<py::object>(error_type->ptr());
            py::object exc = type(e.what());
            exc.attr("code") = std::string(to_string(e.code()));
            PyErr_SetObject(type.ptr(), exc.ptr());
        }
    });

    py::class_<EventLog>(m, "EventLog")
        .def_property_readonly("trace_count", [](const EventLog& l) { return l.traces().size(); })
        .def_property_readonly("event_count", &EventLog::total_events)
        .def_property_readonly("warnings", &EventLog::warnings)
        .def("to_json", [](const EventLog& l) { return to_json(l); });

    m.def("load_log",
          [](const std::string& path, const std::string& case_column, const std::string& activity_column,
             const std::string& time_column, const std::string& time_format,
             const std::set<std::string>& boolean_columns) {
              return load_log(path, mapping_from(case_column, activity_column, time_column, time_format,
                                                 boolean_columns));
          },
          py::arg("path"), py::arg("case_column") = "Case ID", py::arg("activity_column") = "Activity",
          py::arg("time_column") = "Timestamp", py::arg("time_format") = "auto",
          py::arg("boolean_columns") = std::set<std::string>{});

    m.def("parse_csv",
          [](const std::string& text, const std::string& case_column, const std::string& activity_column,
             const std::string& time_column, const std::string& time_format,
             const std::set<std::string>& boolean_columns) {
              return parse_csv(text, mapping_from(case_column, activity_column, time_column, time_format,
                                                  boolean_columns));
          },
          py::arg("text"), py::arg("case_column") = "Case ID", py::arg("activity_column") = "Activity",
          py::arg("time_column") = "Timestamp", py::arg("time_format") = "auto",
          py::arg("boolean_columns") = std::set<std::string>{});

    m.def("parse_xes", [](const std::string& text) { return parse_xes(text); }, py::arg("text"));

    m.def("profile_json",
          [](const EventLog& log, const std::string& th) {
              const auto threshold = Rational::parse(th);
              return profile_to_json(build_profile(log, threshold), threshold).dump();
          },
          py::arg("log"), py::arg("type_threshold") = "0.05");

    m.def("filter_json",
          [](const EventLog& log, std::optional<std::string> activity, std::optional<std::string> characteristic,
             std::optional<double> cv_min, std::optional<double> cv_max, std::optional<std::string> type,
             const std::string& th) {
              const auto query = query_from(std::move(activity), std::move(characteristic), cv_min, cv_max,
                                            std::move(type));
              return to_json(filter_attributes(build_profile(log, Rational::parse(th)), query)).dump();
          },
          py::arg("log"), py::arg("activity") = py::none(), py::arg("characteristic") = py::none(),
          py::arg("cv_min") = py::none(), py::arg("cv_max") = py::none(), py::arg("type") = py::none(),
          py::arg("type_threshold") = "0.05");

    m.def("enhance",
          [](const EventLog& log, const std::string& attribute, const std::string& fn, const std::string& scope,
             std::size_t min_edge_frequency, const std::string& format) {
              const auto model = discover_dfg(log, DiscoveryOptions{min_edge_frequency});
              const auto dep =
                  enhance_model(model, log, EnhanceRequest{attribute, AggregationFn::parse(fn), Scope::parse(scope)});
              if (format == "dot") return export_dot(dep);
              if (format == "json") return export_json(dep);
              throw Error(ErrorCode::InvalidArgument, "format must be dot or json");
          },
          py::arg("log"), py::arg("attribute"), py::arg("fn") = "mean", py::arg("scope") = "all",
          py::arg("min_edge_frequency") = 0, py::arg("format") = "json");

    m.def("trace_cv", [](const std::vector<double>& values) { return trace_cv(values); }, py::arg("values"));
    m.def("shift_nonnegative", [](const std::vector<double>& values) { return shift_nonnegative(values).values; },
          py::arg("values"));
}
