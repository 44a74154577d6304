"""Reading, grounding and writing programs and solver reports."""

from .grounder import ground_program
from .report import SolveReport, ViewRecord, emit_report
from .syntax import (
    DialectError, NestedModalError, ParseError, SourceProgram, UnsafeVariableError,
    format_program, format_rule, format_source, parse_program,
)


def load_program(text: str, dialect=None):
    """Parse and ground in one step."""
    return ground_program(parse_program(text, dialect))


__all__ = [
    "ParseError", "DialectError", "NestedModalError", "UnsafeVariableError", "SourceProgram",
    "parse_program", "ground_program", "load_program", "format_rule", "format_source",
    "format_program", "SolveReport", "ViewRecord", "emit_report",
]
