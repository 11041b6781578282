from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


@dataclass(frozen=True)
class CheckReport:
    """Outcome of checking one exact relation ``lhs <rel> rhs``."""

    name: str
    params: dict[str, Any]
    lhs: int | Fraction
    rhs: int | Fraction
    verdict: bool
    notes: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.verdict

    def describe(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        status = "ok" if self.verdict else "FAILED"
        return f"{self.name}({args}): lhs={self.lhs} rhs={self.rhs} {status}"
