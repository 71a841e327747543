"""Verification reports: named checks with expected/computed values and a
provenance tag, rendered as a fixed-width table or canonical JSON.

Provenance tags:
  reference  - value taken from the classical invariant tables being verified
  derived    - value produced by an independent in-repo oracle
  identity   - value forced by a definition or an algebraic identity
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

SOURCES = ("reference", "derived", "identity")


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else int(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    return str(value)


@dataclass(frozen=True)
class CheckItem:
    name: str
    expected: object
    computed: object
    source: str
    ok: bool

    @classmethod
    def make(cls, name, expected, computed, source="derived") -> "CheckItem":
        if source not in SOURCES:
            raise ValueError(f"unknown provenance tag {source!r}")
        return cls(name, expected, computed, source, expected == computed)


@dataclass
class VerificationReport:
    case_id: str
    items: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def check(self, name, expected, computed, source="derived") -> CheckItem:
        item = CheckItem.make(name, expected, computed, source)
        self.items.append(item)
        return item

    def note(self, text: str):
        self.notes.append(text)

    def extend(self, other: "VerificationReport"):
        self.items.extend(other.items)
        self.notes.extend(f"{other.case_id}: {n}" for n in other.notes)

    @property
    def passed(self) -> bool:
        return all(item.ok for item in self.items)

    def failures(self) -> list:
        return [item for item in self.items if not item.ok]

    def to_json_dict(self) -> dict:
        return {
            "case": self.case_id,
            "items": [
                {
                    "check": it.name,
                    "expected": _jsonable(it.expected),
                    "computed": _jsonable(it.computed),
                    "pass": it.ok,
                    "source": it.source,
                }
                for it in self.items
            ],
            "notes": list(self.notes),
            "pass": self.passed,
        }

    def render_table(self) -> str:
        lines = [f"case {self.case_id}"]
        width = max((len(it.name) for it in self.items), default=0)
        for it in self.items:
            mark = "ok" if it.ok else "FAIL"
            lines.append(f"  [{mark:>4}] {it.name:<{width}}  expected {it.expected!s:>8}"
                         f"  computed {it.computed!s:>8}  ({it.source})")
        for n in self.notes:
            lines.append(f"  note: {n}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def canonical_json(obj) -> str:
    """The one JSON layout used everywhere, so emitted reports round-trip
    byte-for-byte through json.loads."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
