"""Solver reports and their text/JSON rendering.

A report holds plain strings only, already in canonical order, so rendering
is a pure function and identical reports always produce identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from ..core import PRIME


@dataclass(frozen=True)
class ViewRecord:
    worlds: Tuple[Tuple[str, ...], ...]
    k_true: Tuple[str, ...] = ()
    k_false: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "worlds", tuple(sorted(tuple(sorted(w)) for w in self.worlds)))
        object.__setattr__(self, "k_true", tuple(sorted(self.k_true)))
        object.__setattr__(self, "k_false", tuple(sorted(self.k_false)))


@dataclass(frozen=True)
class SolveReport:
    dialect: str
    semantics: str
    views: Tuple[ViewRecord, ...] = ()
    stats: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "views", tuple(sorted(self.views, key=lambda v: (v.worlds, v.k_true))))


def _json_name(text: str) -> str:
    # primed atoms carry the prime on the predicate: eligible'(mike) -> eligible_p(mike)
    return text.replace(PRIME, "_p")


def _to_json(report: SolveReport) -> str:
    stats = report.stats
    doc = {
        "dialect": report.dialect,
        "semantics": report.semantics,
        "world_views": [
            {
                "worlds": [[_json_name(x) for x in w] for w in v.worlds],
                "k_true": [_json_name(x) for x in v.k_true],
                "k_false": [_json_name(x) for x in v.k_false],
            }
            for v in report.views
        ],
        "stats": {
            "partitions_checked": int(stats.get("partitions_checked", 0)),
            "base_calls": int(stats.get("base_calls", 0)),
            "ms": int(stats.get("ms", 0)),
        },
    }
    return json.dumps(doc, indent=2) + "\n"


def _to_text(report: SolveReport) -> str:
    lines: List[str] = [f"% dialect {report.dialect}, semantics {report.semantics}"]
    if not report.views:
        lines.append("no world view")
    for i, v in enumerate(report.views, 1):
        lines.append(f"world view {i}:")
        for w in v.worlds:
            lines.append("  {" + ", ".join(w) + "}")
        lines.append("  known:     " + (", ".join(v.k_true) or "-"))
        lines.append("  not known: " + (", ".join(v.k_false) or "-"))
    s = report.stats
    lines.append("% views {}, partitions checked {}, base calls {}, ms {}".format(
        len(report.views), s.get("partitions_checked", 0), s.get("base_calls", 0), s.get("ms", 0)))
    return "\n".join(lines) + "\n"


def emit_report(report: SolveReport, fmt: str = "text") -> str:
    if fmt == "json":
        return _to_json(report)
    if fmt == "text":
        return _to_text(report)
    raise ValueError(f"unknown report format {fmt!r}")
