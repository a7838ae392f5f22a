"""Attribute profiling for event logs."""

import json

from ._attrprof import (
    Error,
    EventLog,
    load_log,
    parse_csv,
    parse_xes,
    shift_nonnegative,
    trace_cv,
)
from . import _attrprof

__all__ = [
    "Error",
    "EventLog",
    "load_log",
    "parse_csv",
    "parse_xes",
    "profile",
    "filter_attributes",
    "enhance",
    "shift_nonnegative",
    "trace_cv",
]


def profile(log, type_threshold="0.05"):
    return json.loads(_attrprof.profile_json(log, type_threshold))


def filter_attributes(log, **query):
    return json.loads(_attrprof.filter_json(log, **query))


def enhance(log, attribute, fn="mean", scope="all", min_edge_frequency=0, format="json"):
    out = _attrprof.enhance(log, attribute, fn, scope, min_edge_frequency, format)
    return json.loads(out) if format == "json" else out
