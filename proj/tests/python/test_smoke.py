import json
from pathlib import Path

import jsonschema
import pytest

import attrprof

ROOT = Path(__file__).resolve().parents[2]
DATA = ROOT / "tests" / "data"


@pytest.fixture(scope="module")
def table1():
    return attrprof.load_log(str(DATA / "table1.csv"))


def test_load(table1):
    assert table1.trace_count == 2
    assert table1.event_count == 6


def test_profile_matches_golden(table1):
    golden = json.loads((DATA / "golden" / "table1_profile.json").read_text())
    assert attrprof.profile(table1) == golden


def test_filter_dynamic(table1):
    result = attrprof.filter_attributes(table1, characteristic="dynamic", cv_min=10.0, cv_max=100.0)
    golden = json.loads((DATA / "golden" / "table1_filter_dynamic_cv10.json").read_text())
    assert result == golden


def test_enhance_json_validates_against_schema(table1):
    schema = json.loads((ROOT / "docs" / "depmodel-1.schema.json").read_text())
    dep = attrprof.enhance(table1, "Glucose Value", fn="mean")
    jsonschema.validate(dep, schema)
    means = {a["name"]: a["annotations"][0]["result"] for a in dep["activities"]}
    assert means["Admit to hospital"] == 137.5
    assert means["Discharge Patient"] == 115


def test_enhance_dot(table1):
    dot = attrprof.enhance(table1, "Glucose Value", format="dot")
    assert dot == (DATA / "golden" / "table1_glucose_mean_all.dot").read_text()


def test_xes_and_csv_agree():
    csv_log = attrprof.load_log(str(DATA / "table1.csv"))
    xes_log = attrprof.parse_xes((DATA / "table1.xes").read_text())
    assert attrprof.profile(csv_log) == attrprof.profile(xes_log)


def test_numeric_helpers():
    assert attrprof.shift_nonnegative([-2.0, 2.0, 4.0]) == [0.0, 4.0, 6.0]
    assert attrprof.trace_cv([5.0, 5.0]) == 0.0


def test_errors_carry_code(table1):
    with pytest.raises(attrprof.Error) as info:
        attrprof.filter_attributes(table1, cv_min=10.0)
    assert info.value.code == "invalid-query"
    with pytest.raises(attrprof.Error) as info:
        attrprof.enhance(table1, "Glucose Value", scope="activity:Nowhere")
    assert info.value.code == "unknown-activity"
