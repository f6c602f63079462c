"""Structured experiment reports with a stable JSON schema.

Schema per report: {name, params, measurements, verdict, tolerances, anchors,
notes}.  Serialization is canonical (sorted keys, plain floats) so identical
runs produce byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np


def jsonable(value):
    """Recursively convert numpy scalars/arrays and complex numbers."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": float(value.real), "im": float(value.imag)}
    return value


@dataclass
class Report:
    """Result of one named experiment."""

    name: str
    params: dict
    measurements: dict
    verdict: bool
    tolerances: dict = field(default_factory=dict)
    anchors: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": jsonable(self.params),
            "measurements": jsonable(self.measurements),
            "verdict": "pass" if self.verdict else "fail",
            "tolerances": jsonable(self.tolerances),
            "anchors": list(self.anchors),
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def summary_line(self) -> str:
        flag = "PASS" if self.verdict else "FAIL"
        return f"[{flag}] {self.name}"
