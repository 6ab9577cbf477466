"""On-disk representations: input documents, reports and DOT."""

from .documents import (
    parse_argument,
    parse_registry,
    parse_scenario,
    render_argument,
    render_registry,
    render_scenario,
)
from .dot import render_dot
from .report import SCHEMA, parse_report_json, render_report_json, render_report_text

__all__ = [
    "SCHEMA",
    "parse_argument",
    "parse_registry",
    "parse_report_json",
    "parse_scenario",
    "render_argument",
    "render_dot",
    "render_registry",
    "render_report_json",
    "render_report_text",
    "render_scenario",
]
