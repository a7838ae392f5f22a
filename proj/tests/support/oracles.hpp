#pragma once

// Reference computations kept independent of the library code paths they
// check: long double accumulation, explicit formulas, linear scans.

#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace attrprof::testing {

/// Sample-std CV in percent computed from the textbook sum-of-squares form.
inline long double oracle_cv(const std::vector<double>& xs) {
    long double sum = 0;
    long double sum_sq = 0;
    for (double x : xs) {
        sum += x;
        sum_sq += static_cast<long double>(x) * x;
    }
    const long double n = xs.size();
    const long double mean = sum / n;
    long double var = (sum_sq - n * mean * mean) / (n - 1);
    if (var < 0) var = 0;
    return std::sqrt(var) / mean * 100.0L;
}

/// Rank of each category by a pairwise count: 1 + #categories that are
/// more frequent, or equally frequent with a smaller name.
inline std::map<std::string, std::size_t> oracle_ranks(const std::vector<std::string>& values) {
    std::vector<std::string> distinct;
    std::vector<std::size_t> counts;
    for (const auto& v : values) {
        bool found = false;
        for (std::size_t i = 0; i < distinct.size(); ++i) {
            if (distinct[i] == v) {
                ++counts[i];
                found = true;
            }
        }
        if (!found) {
            distinct.push_back(v);
            counts.push_back(1);
        }
    }
    std::map<std::string, std::size_t> ranks;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        std::size_t rank = 1;
        for (std::size_t j = 0; j < distinct.size(); ++j) {
            if (counts[j] > counts[i] || (counts[j] == counts[i] && distinct[j] < distinct[i])) ++rank;
        }
        ranks[distinct[i]] = rank;
    }
    return ranks;
}

}  // namespace attrprof::testing
