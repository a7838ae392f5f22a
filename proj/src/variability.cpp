#include "attrprof/variability.hpp"

#include <algorithm>
#include <cmath>

#include "attrprof/characteristics.hpp"
#include "attrprof/error.hpp"

namespace attrprof {

std::size_t CategoryMapping::rank_of(const std::string& category) const {
    for (const auto& entry : entries) {
        if (entry.category == category) return entry.rank;
    }
    return 0;
}

double trace_cv(std::span<const double> values) {
    if (values.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "CV needs at least two values");
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "CV over non-finite value");
    }
    if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); })) {
        return 0.0;
    }
    const auto n = static_cast<double>(values.size());
    double mean = 0;
    for (double v : values) mean += v;
    mean /= n;
    double squares = 0;
    for (double v : values) squares += (v - mean) * (v - mean);
    const double sigma = std::sqrt(squares / (n - 1));
    if (mean == 0) {
        throw Error(ErrorCode::UndefinedCv, "CV undefined for zero mean with nonzero deviation");
    }
    return sigma / mean * 100.0;
}

ShiftResult shift_nonnegative(std::span<const double> values) {
    ShiftResult result{std::vector<double>(values.begin(), values.end()), 0.0};
    if (values.empty()) return result;
    const double min = *std::min_element(values.begin(), values.end());
    if (min < 0) {
        result.offset = -min;
        for (auto& v : result.values) v += result.offset;
        // Guard the minimum against rounding in v + |min|.
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] == min) result.values[i] = 0.0;
        }
    }
    return result;
}

CategoryMapping map_categories(const EventLog& log, const std::string& attribute) {
    std::map<std::string, std::size_t> frequencies;
    for (const auto& trace : log.traces()) {
        for (const auto& event : trace.events) {
            const auto& value = event.get(attribute);
            if (!value.is_missing()) ++frequencies[value.category_key()];
        }
    }
    if (frequencies.empty()) {
        throw Error(ErrorCode::NoData, "attribute '" + attribute + "' has no values");
    }
    CategoryMapping mapping;
    for (const auto& [category, frequency] : frequencies) {
        mapping.entries.push_back(CategoryEntry{category, frequency, 0});
    }
    // The map is already in ascending text order, so a stable sort keeps
    // ties lexicographic.
    std::stable_sort(mapping.entries.begin(), mapping.entries.end(),
                     [](const CategoryEntry& a, const CategoryEntry& b) { return a.frequency > b.frequency; });
    for (std::size_t i = 0; i < mapping.entries.size(); ++i) mapping.entries[i].rank = i + 1;
    return mapping;
}

CvReport degree_of_variation(const EventLog& log, const std::string& attribute, const TypeClass& type_class) {
    const auto sublog = filter_traces_with(log, attribute);
    if (sublog.empty()) {
        throw Error(ErrorCode::NoData, "attribute '" + attribute + "' is not used in any trace");
    }

    CvReport report;
    std::vector<std::pair<std::string, std::vector<double>>> series;
    if (type_class.kind == TypeKind::Categorical) {
        auto mapping = map_categories(sublog, attribute);
        std::map<std::string, double> rank;
        for (const auto& entry : mapping.entries) rank.emplace(entry.category, static_cast<double>(entry.rank));
        for (const auto& trace : sublog.traces()) {
            std::vector<double> values;
            for (const auto& event : trace.events) {
                const auto& value = event.get(attribute);
                if (!value.is_missing()) values.push_back(rank.at(value.category_key()));
            }
            series.emplace_back(trace.case_id, std::move(values));
        }
        report.normalization = CategoryNormalization{std::move(mapping)};
    } else {
        std::vector<double> all;
        for (const auto& trace : sublog.traces()) {
            std::vector<double> values;
            for (const auto& event : trace.events) {
                const auto& value = event.get(attribute);
                if (value.is_missing()) continue;
                if (value.kind() != ValueKind::Number) {
                    throw Error(ErrorCode::KindMismatch,
                                "quantitative attribute '" + attribute + "' holds a non-numeric value");
                }
                values.push_back(value.as_number());
            }
            all.insert(all.end(), values.begin(), values.end());
            series.emplace_back(trace.case_id, std::move(values));
        }
        // One offset for the whole sub-log keeps the traces on a common scale.
        auto shifted = shift_nonnegative(all);
        if (shifted.offset > 0) {
            auto next = shifted.values.begin();
            for (auto& [case_id, values] : series) {
                std::copy_n(next, values.size(), values.begin());
                next += static_cast<std::ptrdiff_t>(values.size());
            }
            report.normalization = ShiftNormalization{shifted.offset};
        }
    }

    double sum = 0;
    for (const auto& [case_id, values] : series) {
        if (values.size() < 2) {
            ++report.skipped_single_value_traces;
            continue;
        }
        const double cv = trace_cv(values);
        report.per_trace.emplace(case_id, cv);
        sum += cv;
    }
    report.contributing_traces = report.per_trace.size();
    if (report.contributing_traces == 0) {
        throw Error(ErrorCode::VariabilityUndefined,
                    "attribute '" + attribute + "' has no trace with two or more values");
    }
    report.deg_var = sum / static_cast<double>(report.contributing_traces);
    return report;
}

}  // namespace attrprof
