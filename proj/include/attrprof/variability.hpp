#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "attrprof/eventlog.hpp"
#include "attrprof/typing.hpp"

namespace attrprof {

struct CategoryEntry {
    std::string category;
    std::size_t frequency = 0;
    /// 1 for the most frequent category.
    std::size_t rank = 0;

    friend bool operator==(const CategoryEntry&, const CategoryEntry&) = default;
};

struct CategoryMapping {
    std::vector<CategoryEntry> entries;

    /// Rank of `category`, 0 when unknown.
    std::size_t rank_of(const std::string& category) const;

    friend bool operator==(const CategoryMapping&, const CategoryMapping&) = default;
};

struct NoNormalization {
    friend bool operator==(const NoNormalization&, const NoNormalization&) = default;
};
struct ShiftNormalization {
    double offset = 0;
    friend bool operator==(const ShiftNormalization&, const ShiftNormalization&) = default;
};
struct CategoryNormalization {
    CategoryMapping mapping;
    friend bool operator==(const CategoryNormalization&, const CategoryNormalization&) = default;
};

using Normalization = std::variant<NoNormalization, ShiftNormalization, CategoryNormalization>;

struct CvReport {
    /// case id → CV in percent.
    std::map<std::string, double> per_trace;
    /// Mean of per_trace, in percent.
    double deg_var = 0;
    std::size_t contributing_traces = 0;
    std::size_t skipped_single_value_traces = 0;
    Normalization normalization;

    friend bool operator==(const CvReport&, const CvReport&) = default;
};

/// Coefficient of variation in percent using the sample standard deviation
/// (divisor n - 1). Returns 0 when all values are equal. Requires at least
/// two finite values; throws ErrorCode::UndefinedCv when the mean is zero
/// but the deviation is not.
double trace_cv(std::span<const double> values);

struct ShiftResult {
    std::vector<double> values;
    double offset = 0;
};

/// Adds |min| to every value when the minimum is negative.
ShiftResult shift_nonnegative(std::span<const double> values);

/// Log-wide frequency ranking of the attribute's categories; ties resolved by
/// ascending category text.
CategoryMapping map_categories(const EventLog& log, const std::string& attribute);

/// Mean per-trace CV over the traces holding at least two values of the
/// attribute. Categorical attributes go through map_categories first;
/// quantitative attributes with negatives get one log-wide shift.
CvReport degree_of_variation(const EventLog& log, const std::string& attribute, const TypeClass& type_class);

}  // namespace attrprof
