#include <doctest.h>

#include "attrprof/error.hpp"
#include "attrprof/io.hpp"
#include "support/fixtures.hpp"
#include "support/synthetic.hpp"

using namespace attrprof;
using attrprof::testing::read_file;
using attrprof::testing::table1;

namespace {

ErrorCode error_code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected attrprof::Error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("Table 1 CSV yields two traces of three events") {
    const auto log = table1();
    REQUIRE(log.traces().size() == 2);
    for (const auto& trace : log.traces()) CHECK(trace.events.size() == 3);
    CHECK(log.catalog() == std::map<std::string, BaseKind>{{"Creatinine Value", BaseKind::Number},
                                                           {"Glucose Value", BaseKind::Number}});
    const auto& first = log.traces()[0].events[0];
    CHECK(first.case_id == "1");
    CHECK(first.activity == "Admit to hospital");
    CHECK(first.get("Glucose Value") == AttributeValue::number(140));
    CHECK(first.get("Creatinine Value") == AttributeValue::number(0.7));
    CHECK(log.traces()[1].events[1].activity == "Treat in ICU");
}

TEST_CASE("single-row CSV") {
    const auto log = parse_csv("Case ID,Activity,Timestamp,Glucose Value\n7,Admit,1,140\n");
    REQUIRE(log.traces().size() == 1);
    CHECK(log.traces()[0].events.size() == 1);
    CHECK(log.total_events() == 1);
}

TEST_CASE("empty cell becomes Missing and keeps the catalog") {
    const auto log = parse_csv(
        "Case ID,Activity,Timestamp,Glucose Value,Creatinine Value\n"
        "1,Admit to hospital,1,,0.7\n1,Discharge Patient,2,120,0.8\n");
    const auto& admit = log.traces()[0].events[0];
    CHECK(admit.get("Glucose Value").is_missing());
    CHECK_FALSE(admit.has("Glucose Value"));
    CHECK(log.catalog().at("Glucose Value") == BaseKind::Number);
    const auto catalog = attribute_catalog(log);
    CHECK(catalog[1] == CatalogEntry{"Glucose Value", BaseKind::Number, 1, 2});
}

TEST_CASE("CSV error paths") {
    CHECK(error_code_of([] { parse_csv(""); }) == ErrorCode::EmptyInput);
    CHECK(error_code_of([] { parse_csv("Case,Activity,Timestamp\n1,A,1\n"); }) == ErrorCode::MissingColumn);
    CHECK(error_code_of([] { parse_csv("Case ID,Activity,Timestamp\n1,A,1\n1,B,yesterday\n"); }) ==
          ErrorCode::BadTimestamp);
    CHECK(error_code_of([] { parse_csv("Case ID,Activity,Timestamp\n1,\"A,1\n"); }) == ErrorCode::MalformedCsv);
    try {
        parse_csv("Case ID,Activity,Timestamp\n1,A,1\n1,B,yesterday\n");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }
}

TEST_CASE("CSV kind inference") {
    const auto log = parse_csv(
        "Case ID,Activity,Timestamp,flag,code,mixed,bits,note\n"
        "1,A,1,true,1,5,0,\"hello, world\"\n"
        "1,B,2,FALSE,0,abc,1,\"say \"\"hi\"\"\"\n",
        ColumnMapping{.boolean_columns = {"bits"}});
    CHECK(log.catalog().at("flag") == BaseKind::Boolean);
    CHECK(log.catalog().at("code") == BaseKind::Number);
    CHECK(log.catalog().at("mixed") == BaseKind::Text);
    CHECK(log.catalog().at("bits") == BaseKind::Boolean);
    CHECK(log.catalog().at("note") == BaseKind::Text);
    const auto& e = log.traces()[0].events[0];
    CHECK(e.get("mixed") == AttributeValue::text("5"));
    CHECK(e.get("note") == AttributeValue::text("hello, world"));
    CHECK(log.traces()[0].events[1].get("note") == AttributeValue::text("say \"hi\""));
    CHECK(e.get("bits") == AttributeValue::boolean(false));
    REQUIRE(log.warnings().size() == 1);
    CHECK(log.warnings()[0].find("mixed") != std::string::npos);
}

TEST_CASE("events are time-sorted with source order breaking ties") {
    const auto log = parse_csv(
        "Case ID,Activity,Timestamp\n"
        "1,C,2024-01-01T10:00:00Z\n"
        "1,A,2024-01-01T09:00:00Z\n"
        "1,B1,2024-01-01T09:30:00+00:00\n"
        "1,B2,2024-01-01T10:30:00+01:00\n");
    const auto& events = log.traces()[0].events;
    std::vector<std::string> order;
    for (const auto& e : events) order.push_back(e.activity);
    CHECK(order == std::vector<std::string>{"A", "B1", "B2", "C"});
    for (std::size_t i = 0; i < events.size(); ++i) CHECK(events[i].ordinal == i);
}

TEST_CASE("timestamp formats") {
    using std::chrono::milliseconds;
    CHECK(parse_timestamp("3", TimeFormat::Ordinal) == Timestamp{milliseconds{3}});
    CHECK(parse_timestamp("3", TimeFormat::EpochSeconds) == Timestamp{milliseconds{3000}});
    CHECK(parse_timestamp("1970-01-01T00:00:01.250Z", TimeFormat::Auto) == Timestamp{milliseconds{1250}});
    CHECK(parse_timestamp("1970-01-01", TimeFormat::Iso8601) == Timestamp{milliseconds{0}});
    CHECK(parse_timestamp("1970-01-01T01:00:00+01:00", TimeFormat::Iso8601) == Timestamp{milliseconds{0}});
    CHECK(format_timestamp(Timestamp{milliseconds{1250}}) == "1970-01-01T00:00:01.250Z");
    CHECK_THROWS_AS(parse_timestamp("2024-02-30", TimeFormat::Iso8601), Error);
    CHECK_THROWS_AS(parse_timestamp("1.5", TimeFormat::EpochSeconds), Error);
}

TEST_CASE("XES encoding of Table 1 equals the CSV log") {
    const auto xes = parse_xes(read_file(testing::data_dir() / "table1.xes"));
    CHECK(xes == table1());
}

TEST_CASE("XES kinds and edge cases") {
    CHECK(parse_xes("<log/>").empty());
    const auto log = parse_xes(R"(<log><trace><string key="concept:name" value="t1"/>
        <event><string key="concept:name" value="A"/><date key="time:timestamp" value="2020-01-01T00:00:00Z"/>
          <int key="count" value="3"/><boolean key="ok" value="true"/><string key="who" value="x &amp; y"/>
          <id key="identity:id" value="abc"/></event></trace></log>)");
    const auto& e = log.traces().at(0).events.at(0);
    CHECK(e.case_id == "t1");
    CHECK(e.get("count") == AttributeValue::number(3));
    CHECK(e.get("ok") == AttributeValue::boolean(true));
    CHECK(e.get("who") == AttributeValue::text("x & y"));
    CHECK_FALSE(e.has("identity:id"));

    CHECK(error_code_of([] { parse_xes("<log><trace>"); }) == ErrorCode::MalformedXml);
    CHECK(error_code_of([] { parse_xes("<notalog/>"); }) == ErrorCode::MalformedXml);
    CHECK(error_code_of([] {
              parse_xes(R"(<log><trace><event><date key="time:timestamp" value="2020-01-01"/></event></trace></log>)");
          }) == ErrorCode::MissingEventKey);
    CHECK(error_code_of([] {
              parse_xes(R"(<log><trace><event><string key="concept:name" value="A"/></event></trace></log>)");
          }) == ErrorCode::MissingEventKey);
}

TEST_CASE("attribute catalog") {
    CHECK(attribute_catalog(table1()) ==
          std::vector<CatalogEntry>{{"Creatinine Value", BaseKind::Number, 6, 6}, {"Glucose Value", BaseKind::Number, 6, 6}});
    CHECK(attribute_catalog(EventLog{}).empty());
}

TEST_CASE("JSON round trip preserves structure on random logs") {
    testing::Rng rng(7);
    for (int i = 0; i < 20; ++i) {
        auto planted = testing::plant_characteristics(rng(), 8, 6);
        const auto& log = planted.log;
        CHECK(parse_log_json(to_json(log)) == log);
    }
    const auto hospital = parse_csv(testing::synthetic_hospital_csv(3, 40));
    CHECK(parse_log_json(to_json(hospital)) == hospital);
    CHECK_THROWS_AS(parse_log_json("{\"schema\":\"other\"}"), Error);
    CHECK_THROWS_AS(parse_log_json("not json"), Error);
}

TEST_CASE("no rows are dropped and traces stay time-ordered") {
    const auto csv = testing::synthetic_hospital_csv(11, 200);
    const auto rows = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) - 1;
    const auto log = parse_csv(csv);
    CHECK(log.total_events() == rows);
    for (const auto& trace : log.traces()) {
        for (std::size_t i = 1; i < trace.events.size(); ++i) {
            CHECK(trace.events[i - 1].timestamp <= trace.events[i].timestamp);
        }
    }
}

TEST_CASE("mixed XES kinds are demoted to text") {
    const auto log = parse_xes(R"(<log><trace><string key="concept:name" value="t"/>
        <event><string key="concept:name" value="A"/><date key="time:timestamp" value="2020-01-01"/><int key="v" value="3"/></event>
        <event><string key="concept:name" value="B"/><date key="time:timestamp" value="2020-01-02"/><string key="v" value="x"/></event>
        </trace></log>)");
    CHECK(log.catalog().at("v") == BaseKind::Text);
    CHECK(log.traces()[0].events[0].get("v") == AttributeValue::text("3"));
    CHECK(log.warnings().size() == 1);
}
