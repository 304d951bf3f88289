from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from .exact import format_rational, rational_from_json, rational_to_json

Discrepancy = Tuple[str, Fraction, Fraction]


@dataclass
class VerificationReport:
    """Outcome of one check: passes exactly when no discrepancy was recorded."""

    scope: str
    discrepancies: List[Discrepancy] = field(default_factory=list)
    checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.discrepancies

    def compare(self, location: str, expected, actual) -> bool:
        self.checked += 1
        if expected != actual:
            self.discrepancies.append((location, Fraction(expected), Fraction(actual)))
            return False
        return True

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        self.checked += other.checked
        self.discrepancies.extend(
            (f"{other.scope}: {loc}", e, a) for loc, e, a in other.discrepancies)
        return self

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {
            "scope": self.scope,
            "pass": self.passed,
            "checked": self.checked,
            "discrepancies": [
                {"location": loc, "expected": rational_to_json(e), "actual": rational_to_json(a)}
                for loc, e, a in self.discrepancies
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "VerificationReport":
        return cls(
            obj["scope"],
            [(d["location"], rational_from_json(d["expected"]), rational_from_json(d["actual"]))
             for d in obj["discrepancies"]],
            obj.get("checked", 0),
        )

    def render(self, limit: int = 20) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"[{status}] {self.scope} ({self.checked} checks)"]
        for loc, e, a in self.discrepancies[:limit]:
            lines.append(f"    at {loc}: expected {format_rational(e)}, got {format_rational(a)}")
        if len(self.discrepancies) > limit:
            lines.append(f"    ... {len(self.discrepancies) - limit} more")
        return "\n".join(lines)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)
