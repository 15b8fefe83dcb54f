"""Numeric regimes: exact rationals versus floats compared with a tolerance.

Exact values are Python ``int`` or :class:`fractions.Fraction`. Anything else
(``float``, numpy scalars) puts a computation in the approximate regime.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from numbers import Real
from typing import Any

# absolute tolerance for deciding whether two floats name the same grid point
GRID_TOL = 1e-12
DEFAULT_TOLERANCE = 1e-9


def is_exact(x: Any) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def all_exact(values) -> bool:
    return all(is_exact(v) for v in values)


def same_point(x, y, tol: float = GRID_TOL) -> bool:
    """Grid-point identity: exact equality for rationals, ``|x-y| <= tol`` otherwise."""
    if is_exact(x) and is_exact(y):
        return x == y
    return abs(x - y) <= tol


def in_set(x, candidates, tol: float = GRID_TOL) -> bool:
    return any(same_point(x, c, tol) for c in candidates)


@dataclass(frozen=True)
class ScalarMode:
    """Arithmetic regime governing comparisons.

    In the exact regime every comparison is decided with zero tolerance. In
    the approximate regime ``tolerance`` is relative to the magnitude of the
    quantities compared (with an absolute floor of ``tolerance`` itself).
    """

    exact: bool = False
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        if not self.exact and not self.tolerance > 0:
            raise ValueError("approximate regime needs a positive tolerance")

    @property
    def name(self) -> str:
        return "exact" if self.exact else "approx"

    def slack(self, *values) -> float:
        if self.exact:
            return 0
        scale = max([1.0] + [abs(float(v)) for v in values])
        return self.tolerance * scale

    def leq(self, x, y) -> bool:
        if self.exact:
            return x <= y
        return x <= y + self.slack(x, y)

    def close(self, x, y) -> bool:
        if self.exact:
            return x == y
        return abs(x - y) <= self.slack(x, y)


EXACT = ScalarMode(exact=True)
APPROX = ScalarMode(exact=False)


def parse_number(raw: Any):
    """Read a number from its JSON form.

    JSON integers stay ``int``; JSON floats stay ``float``; strings such as
    ``"0.25"`` or ``"9/2"`` and objects ``{"num": p, "den": q}`` become
    exact :class:`Fraction` values.
    """
    if isinstance(raw, bool):
        raise TypeError(f"not a number: {raw!r}")
    if isinstance(raw, int):
        return raw
    if isinstance(raw, float):
        if not math.isfinite(raw):
            raise ValueError(f"non-finite number: {raw!r}")
        return raw
    if isinstance(raw, str):
        try:
            value = Fraction(raw.strip())
        except ValueError:
            raise ValueError(f"cannot parse number {raw!r}") from None
        return normalize(value)
    if isinstance(raw, dict) and set(raw) == {"num", "den"}:
        num, den = raw["num"], raw["den"]
        if not isinstance(num, int) or not isinstance(den, int) or isinstance(num, bool):
            raise TypeError(f"rational parts must be integers: {raw!r}")
        if den == 0:
            raise ZeroDivisionError("rational with zero denominator")
        return normalize(Fraction(num, den))
    if isinstance(raw, Decimal):
        return normalize(Fraction(raw))
    if isinstance(raw, Real):
        return float(raw)
    raise TypeError(f"not a number: {raw!r}")


def normalize(x):
    """Collapse integral fractions to ``int``; leave everything else alone."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def number_to_json(x):
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return x.numerator
        return {"num": x.numerator, "den": x.denominator}
    return float(x)


def format_number(x) -> str:
    """Text form used in reports: ``p/q`` for rationals, ``repr`` for floats."""
    if x is None:
        return ""
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    return repr(float(x))


def read_number(text: str, exact: bool):
    if text == "":
        return None
    if exact:
        return normalize(Fraction(text))
    return float(text)
