"""Check reports shared by the identity, dominance and gap checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .dyadic import Dyadic


def dyadic_json(v: Dyadic | None):
    return None if v is None else {"mantissa": v.mantissa, "exponent": v.exponent}


@dataclass
class CheckReport:
    """Per-string rows plus the strings that violate the check.

    ``ok`` is true iff ``violations`` is empty; the CLI maps this to its
    exit status.
    """

    check: str
    params: dict
    rows: list[dict] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        def enc(value):
            if isinstance(value, Dyadic):
                return dyadic_json(value)
            if isinstance(value, dict):
                return {k: enc(v) for k, v in value.items()}
            if isinstance(value, (list, tuple)):
                return [enc(v) for v in value]
            return value

        return {
            "check": self.check,
            "ok": self.ok,
            "params": enc(self.params),
            "violations": list(self.violations),
            "notes": list(self.notes),
            "rows": enc(self.rows),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)
