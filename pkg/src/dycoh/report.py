"""Pass/fail reports with replayable counterexamples."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import Field


@dataclass
class CheckEntry:
    identity: str
    status: str = "pass"
    checked: int = 0
    witness: dict | None = None

    def to_dict(self) -> dict:
        out = {"identity": self.identity, "status": self.status, "checked": self.checked}
        out["witness"] = self.witness if self.witness is not None else {}
        return out


@dataclass
class CheckReport:
    """Results of one suite; entries with the same label are aggregated."""

    suite: str
    seed: int | None = None
    meta: dict = field(default_factory=dict)
    entries: dict = field(default_factory=dict)

    def record(self, identity: str, ok: bool, witness=None) -> bool:
        """Count one check; the first failure keeps its witness (a dict, or a
        callable producing one, evaluated only then)."""
        e = self.entries.setdefault(identity, CheckEntry(identity))
        e.checked += 1
        if not ok and e.status == "pass":
            e.status = "fail"
            e.witness = (witness() if callable(witness) else witness) or {}
        return bool(ok)

    def merge(self, other: "CheckReport") -> "CheckReport":
        for label, e in other.entries.items():
            mine = self.entries.setdefault(label, CheckEntry(label))
            mine.checked += e.checked
            if e.status == "fail" and mine.status == "pass":
                mine.status, mine.witness = "fail", e.witness
        return self

    @property
    def passed(self) -> bool:
        return all(e.status == "pass" for e in self.entries.values())

    def failures(self) -> list[CheckEntry]:
        return [self.entries[k] for k in sorted(self.entries) if self.entries[k].status == "fail"]

    def status(self, identity: str) -> str:
        return self.entries[identity].status

    def to_dict(self) -> dict:
        out = {"suite": self.suite, "passed": self.passed}
        if self.seed is not None:
            out["seed"] = self.seed
        if self.meta:
            out["meta"] = self.meta
        out["results"] = [self.entries[k].to_dict() for k in sorted(self.entries)]
        return out

    def summary_lines(self) -> list[str]:
        lines = []
        for k in sorted(self.entries):
            e = self.entries[k]
            lines.append(f"[{e.status.upper()}] {self.suite}: {k} ({e.checked} checked)")
        return lines


def coords_json(fld: Field, arr) -> list:
    """Flat list of JSON scalars for an exact array."""
    return [fld.to_json(x) for x in np.asarray(arr).reshape(-1)]


class StructureError(ValueError):
    """Input arrays have inconsistent shapes; raised before any axiom is checked."""
