"""Expression parsing, pipeline orchestration, and report emission."""

from .main import CACHE_ENV_VAR, ConfigError, RunConfig, main, run
from .parser import (
    ParseError,
    format_function,
    loop_poly_string,
    parse_function,
    parse_polynomial,
    poly_to_source,
    read_function_file,
)
from .report import CHECK_NAMES, REPORT_SCHEMA, CheckOutcome, Report, validate_report

__all__ = [
    "CACHE_ENV_VAR",
    "CHECK_NAMES",
    "CheckOutcome",
    "ConfigError",
    "ParseError",
    "REPORT_SCHEMA",
    "Report",
    "RunConfig",
    "format_function",
    "loop_poly_string",
    "main",
    "parse_function",
    "parse_polynomial",
    "poly_to_source",
    "read_function_file",
    "run",
    "validate_report",
]
