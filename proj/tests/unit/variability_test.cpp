#include <doctest.h>

#include <cmath>

#include "attrprof/error.hpp"
#include "attrprof/profile.hpp"
#include "attrprof/variability.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace attrprof;
using attrprof::testing::SynthTrace;

namespace {

// Frozen from testing::oracle_cv (long double sum-of-squares) on the Table 1 values.
constexpr double kGlucoseCase1 = 27.152165210427814;
constexpr double kGlucoseCase2 = 23.419423301078574;
constexpr double kGlucoseDegVar = 25.285794255753196;
constexpr double kCreatinineCase1 = 7.872958216222177;
constexpr double kCreatinineCase2 = 9.116056881941457;
constexpr double kCreatinineDegVar = 8.494507549081817;

const TypeClass kQuantitative{TypeKind::Quantitative, Rational(1), Rational(1, 20)};
const TypeClass kCategorical{TypeKind::Categorical, Rational(1, 2), Rational(1, 20)};

EventLog categorical_log(const std::vector<std::vector<std::string>>& traces) {
    std::vector<SynthTrace> synth;
    for (const auto& values : traces) {
        SynthTrace t;
        for (const auto& v : values) t.push_back({"A", {{"c", AttributeValue::text(v)}}});
        synth.push_back(t);
    }
    return testing::to_log(synth);
}

EventLog numeric_log(const std::vector<std::vector<double>>& traces) {
    std::vector<SynthTrace> synth;
    for (const auto& values : traces) {
        SynthTrace t;
        for (double v : values) t.push_back({"A", {{"x", AttributeValue::number(v)}}});
        synth.push_back(t);
    }
    return testing::to_log(synth);
}

}  // namespace

TEST_CASE("frozen constants agree with the oracle") {
    CHECK(static_cast<double>(testing::oracle_cv({140, 200, 120})) == doctest::Approx(kGlucoseCase1).epsilon(1e-12));
    CHECK(static_cast<double>(testing::oracle_cv({135, 175, 110})) == doctest::Approx(kGlucoseCase2).epsilon(1e-12));
    CHECK(static_cast<double>(testing::oracle_cv({0.7, 0.7, 0.8})) == doctest::Approx(kCreatinineCase1).epsilon(1e-9));
}

TEST_CASE("trace CV") {
    const std::vector<double> glucose{140, 200, 120};
    CHECK(trace_cv(glucose) == doctest::Approx(kGlucoseCase1).epsilon(1e-12));
    CHECK(format_percent(trace_cv(glucose)) == "27.2");
    const std::vector<double> creatinine{0.7, 0.7, 0.8};
    CHECK(trace_cv(creatinine) == doctest::Approx(kCreatinineCase1).epsilon(1e-12));
    CHECK(format_percent(trace_cv(creatinine)) == "7.9");
    const std::vector<double> flat{5, 5, 5};
    CHECK(trace_cv(flat) == 0.0);
    const std::vector<double> zeros{0, 0};
    CHECK(trace_cv(zeros) == 0.0);

    const std::vector<double> centered{-1, 1};
    CHECK_THROWS_AS(trace_cv(centered), Error);
    const std::vector<double> one{3};
    CHECK_THROWS_AS(trace_cv(one), Error);
    const std::vector<double> bad{1, NAN};
    CHECK_THROWS_AS(trace_cv(bad), Error);
}

TEST_CASE("shift to nonnegative") {
    const std::vector<double> a{-2, 2, 4};
    auto shifted = shift_nonnegative(a);
    CHECK(shifted.values == std::vector<double>{0, 4, 6});
    CHECK(shifted.offset == 2);

    const std::vector<double> b{1, 3};
    shifted = shift_nonnegative(b);
    CHECK(shifted.values == b);
    CHECK(shifted.offset == 0);

    const std::vector<double> c{-5};
    shifted = shift_nonnegative(c);
    CHECK(shifted.values == std::vector<double>{0});
    CHECK(shifted.offset == 5);

    testing::Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        std::vector<double> v;
        for (std::size_t k = 0, n = 1 + testing::pick(rng, 10); k < n; ++k) v.push_back(testing::uniform(rng, -1e3, 1e3));
        const auto once = shift_nonnegative(v);
        const auto twice = shift_nonnegative(once.values);
        CHECK(twice.values == once.values);
        CHECK(twice.offset == 0);
        CHECK(*std::min_element(once.values.begin(), once.values.end()) >= 0);
    }
}

TEST_CASE("category mapping") {
    const auto abc = categorical_log({{"A", "A", "B", "C", "A"}, {"B", "A", "C", "B", "A"}});
    auto mapping = map_categories(abc, "c");
    REQUIRE(mapping.entries.size() == 3);
    CHECK(mapping.entries[0] == CategoryEntry{"A", 5, 1});
    CHECK(mapping.entries[1] == CategoryEntry{"B", 3, 2});
    CHECK(mapping.entries[2] == CategoryEntry{"C", 2, 3});
    CHECK(mapping.rank_of("C") == 3);
    CHECK(mapping.rank_of("Z") == 0);

    mapping = map_categories(categorical_log({{"X", "X", "X", "X", "X", "X", "X"}}), "c");
    CHECK(mapping.entries == std::vector<CategoryEntry>{{"X", 7, 1}});

    mapping = map_categories(categorical_log({{"B", "A", "B", "A"}}), "c");
    CHECK(mapping.entries == std::vector<CategoryEntry>{{"A", 2, 1}, {"B", 2, 2}});

    CHECK_THROWS_AS(map_categories(abc, "missing"), Error);

    testing::Rng rng(17);
    for (int i = 0; i < 30; ++i) {
        auto [log, values] = testing::random_categorical(rng);
        const auto first = map_categories(log, "cat");
        CHECK(first == map_categories(parse_log_json(to_json(log)), "cat"));
        for (const auto& [category, rank] : testing::oracle_ranks(values)) CHECK(first.rank_of(category) == rank);
    }
}

TEST_CASE("degree of variation on Table 1") {
    const auto log = testing::table1();
    const auto glucose = degree_of_variation(log, "Glucose Value", kQuantitative);
    CHECK(glucose.per_trace.at("1") == doctest::Approx(kGlucoseCase1).epsilon(1e-12));
    CHECK(glucose.per_trace.at("2") == doctest::Approx(kGlucoseCase2).epsilon(1e-12));
    CHECK(glucose.deg_var == doctest::Approx(kGlucoseDegVar).epsilon(1e-12));
    CHECK(format_percent(glucose.deg_var) == "25.3");
    CHECK(glucose.contributing_traces == 2);
    CHECK(glucose.skipped_single_value_traces == 0);
    CHECK(std::holds_alternative<NoNormalization>(glucose.normalization));

    const auto creatinine = degree_of_variation(log, "Creatinine Value", kQuantitative);
    CHECK(creatinine.per_trace.at("1") == doctest::Approx(kCreatinineCase1).epsilon(1e-9));
    CHECK(creatinine.per_trace.at("2") == doctest::Approx(kCreatinineCase2).epsilon(1e-9));
    CHECK(creatinine.deg_var == doctest::Approx(kCreatinineDegVar).epsilon(1e-9));
    CHECK(format_percent(creatinine.deg_var) == "8.5");
    CHECK(glucose.deg_var > creatinine.deg_var);
}

TEST_CASE("degree of variation paths") {
    SUBCASE("constant attribute") {
        const auto report = degree_of_variation(numeric_log({{4, 4}, {4, 4, 4}}), "x", kQuantitative);
        CHECK(report.deg_var == 0.0);
    }
    SUBCASE("negative values are shifted once for the whole log") {
        const auto report = degree_of_variation(numeric_log({{-2, 2, 4}, {1, 3}}), "x", kQuantitative);
        REQUIRE(std::holds_alternative<ShiftNormalization>(report.normalization));
        CHECK(std::get<ShiftNormalization>(report.normalization).offset == 2);
        CHECK(report.per_trace.at("c0") == doctest::Approx(static_cast<double>(testing::oracle_cv({0, 4, 6}))));
        CHECK(report.per_trace.at("c1") == doctest::Approx(static_cast<double>(testing::oracle_cv({3, 5}))));
    }
    SUBCASE("single-value traces are skipped") {
        const auto report = degree_of_variation(numeric_log({{1, 2}, {7}, {9}}), "x", kQuantitative);
        CHECK(report.contributing_traces == 1);
        CHECK(report.skipped_single_value_traces == 2);
        CHECK_FALSE(report.per_trace.contains("c1"));
    }
    SUBCASE("no qualifying trace") {
        try {
            degree_of_variation(numeric_log({{1}, {2}}), "x", kQuantitative);
            FAIL("expected error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::VariabilityUndefined);
        }
        CHECK_THROWS_AS(degree_of_variation(numeric_log({{1}}), "nope", kQuantitative), Error);
    }
    SUBCASE("categorical attributes use the frequency ranks") {
        const auto log = categorical_log({{"A", "A", "B"}, {"C", "A"}, {"B"}});
        const auto report = degree_of_variation(log, "c", kCategorical);
        REQUIRE(std::holds_alternative<CategoryNormalization>(report.normalization));
        // A:3 → 1, B:2 → 2, C:1 → 3
        CHECK(report.per_trace.at("c0") == doctest::Approx(static_cast<double>(testing::oracle_cv({1, 1, 2}))));
        CHECK(report.per_trace.at("c1") == doctest::Approx(static_cast<double>(testing::oracle_cv({3, 1}))));
        CHECK(report.skipped_single_value_traces == 1);
    }
}

TEST_CASE("variability properties") {
    testing::Rng rng(2024);
    for (int i = 0; i < 50; ++i) {
        const auto seed = rng();
        testing::Rng a(seed);
        testing::Rng b(seed);
        const double c = testing::uniform(rng, 1e-3, 1e6);
        const auto base = degree_of_variation(testing::random_positive_dynamic(a, 6), "x", kQuantitative);
        const auto scaled = degree_of_variation(testing::random_positive_dynamic(b, 6, c), "x", kQuantitative);
        for (const auto& [case_id, cv] : base.per_trace) {
            CHECK(std::abs(scaled.per_trace.at(case_id) - cv) <= 1e-9 * std::abs(cv));
        }
        CHECK(base.deg_var >= 0);
    }

    // deg_var is zero exactly when each contributing trace is constant.
    CHECK(degree_of_variation(numeric_log({{3, 3}, {8, 8, 8}}), "x", kQuantitative).deg_var == 0.0);
    CHECK(degree_of_variation(numeric_log({{3, 3}, {8, 8, 9}}), "x", kQuantitative).deg_var > 0.0);
}
