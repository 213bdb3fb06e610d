"""Canonical JSON reports for constructed codes."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .css import CssPair, CssParams, pair_to_json
from .csst import CssTVerdict
from .exceptions import ContainmentError, DimensionError, ParseError, PreconditionError, ResourceGuardError
from .phase import LogicalDiagonal
from .triortho import TriorthogonalWitness

CONSTRUCTIONS = ("raw", "nphi", "iterate", "double", "extract")


@dataclass(frozen=True)
class CodeReport:
    construction: str
    pair: CssPair
    params: CssParams
    csst: CssTVerdict
    triorthogonal: TriorthogonalWitness | None = None
    phase_summaries: dict[int, LogicalDiagonal] = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.construction not in CONSTRUCTIONS:
            raise ValueError(f"unknown construction tag {self.construction!r}")
        if self.triorthogonal is not None and self.triorthogonal.ok and self.csst.schur_ok is False:
            raise ValueError("a triorthogonal pair must pass the Schur criterion")

    def to_json(self) -> dict:
        return {
            "construction": self.construction,
            "code": pair_to_json(self.pair),
            "params": self.params.to_json(),
            "csst": self.csst.to_json(),
            "triorthogonal": self.triorthogonal.to_json() if self.triorthogonal is not None else "n/a",
            "phase_summaries": {str(lv): d.to_json() for lv, d in sorted(self.phase_summaries.items())},
            "provenance": self.provenance,
        }


def dumps(obj) -> str:
    """Sorted keys, fixed separators: equal inputs give byte-identical text."""
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False)


def report_json(r: CodeReport) -> str:
    return dumps(r.to_json())


def violated_tag(exc: Exception) -> str:
    if isinstance(exc, PreconditionError):
        return exc.violated
    if isinstance(exc, ContainmentError):
        return "containment"
    if isinstance(exc, DimensionError):
        return "dimension"
    if isinstance(exc, ResourceGuardError):
        return "resource_guard"
    if isinstance(exc, ParseError):
        return "parse"
    return type(exc).__name__


def error_json(exc: Exception) -> str:
    return dumps({"error": type(exc).__name__, "message": str(exc), "violated": violated_tag(exc)})
