"""Check result records shared by the operator, registry and numeric layers."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .field import format_field


@dataclass
class CheckReport:
    id: str
    outcome: str  # pass | fail | error
    kind: str = "series"
    params: dict = field(default_factory=dict)
    order: int | None = None
    label: str = "theorem"  # theorem | evidence | corrected-typo | numeric
    mismatch: dict | None = None
    residual: float | None = None
    tolerance: float | None = None
    note: str = ""
    values: dict | None = None
    expected: str = "pass"
    error: str | None = None
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return self.outcome == "pass"

    @property
    def as_expected(self) -> bool:
        return self.outcome == self.expected

    def key(self) -> dict:
        """Everything except timing; identical inputs give identical keys."""
        d = asdict(self)
        d.pop("wall_time")
        return d

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def mismatch_record(found, test_index: int | None = None) -> dict | None:
    if found is None:
        return None
    exp, lhs, rhs = found
    rec = {"exp": list(exp), "lhs": format_field(lhs), "rhs": format_field(rhs)}
    if test_index is not None:
        rec["test"] = test_index
    return rec
