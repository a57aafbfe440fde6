"""Verdict records and JSON-friendly rendering of exact values."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import TheoremViolation


def rational_doc(x) -> dict:
    """Exact rational as numerator/denominator plus an approximate decimal."""
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator, "approx": f"{float(x):.6g}"}


def to_jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return rational_doc(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value, key=repr) if isinstance(value, (set, frozenset)) else value
        return [to_jsonable(v) for v in items]
    if hasattr(value, "to_doc"):
        return value.to_doc()
    return value


@dataclass
class Verdict:
    """Outcome of one theorem check.

    ``applicable`` says whether the hypotheses hold; ``holds`` is ``None`` for
    inapplicable checks, which never fail a suite.
    """

    name: str
    applicable: bool
    holds: bool | None
    detail: dict = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return self.applicable and self.holds is False

    @property
    def status(self) -> str:
        if not self.applicable:
            return "n/a"
        return "pass" if self.holds else "fail"

    def require(self) -> "Verdict":
        if self.failed:
            raise TheoremViolation(self.name, self.detail)
        return self

    def to_doc(self) -> dict:
        return {
            "name": self.name,
            "applicable": self.applicable,
            "holds": self.holds,
            "detail": to_jsonable(self.detail),
        }


def not_applicable(name: str, reason: str, **detail) -> Verdict:
    return Verdict(name, False, None, {"reason": reason, **detail})


def check(name: str, ok: bool, **detail) -> Verdict:
    return Verdict(name, True, bool(ok), detail)
