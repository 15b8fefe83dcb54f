"""Bounded time scales: finite sorted unions of closed intervals and isolated points.

A :class:`TimeScale` is immutable. Jump operators follow the usual boundary
convention ``sigma(max T) = max T`` and ``rho(min T) = min T``.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple, Sequence, Union

from .scalars import GRID_TOL, is_exact, number_to_json, parse_number


class NotInScaleError(ValueError):
    """A point was expected to lie on a time scale and does not."""


@dataclass(frozen=True)
class Interval:
    lo: object
    hi: object

    def __post_init__(self):
        _check_finite(self.lo)
        _check_finite(self.hi)
        if not self.lo < self.hi:
            raise ValueError(f"interval needs lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def dense(self) -> bool:
        return True


@dataclass(frozen=True)
class Point:
    x: object

    def __post_init__(self):
        _check_finite(self.x)

    @property
    def lo(self):
        return self.x

    @property
    def hi(self):
        return self.x

    @property
    def dense(self) -> bool:
        return False


Component = Union[Interval, Point]


class Jumps(NamedTuple):
    sigma: object
    rho: object
    mu: object
    nu: object


def _check_finite(x):
    if isinstance(x, bool):
        raise TypeError("booleans are not points")
    if not is_exact(x):
        try:
            ok = math.isfinite(x)
        except TypeError:
            raise TypeError(f"not a real number: {x!r}") from None
        if not ok:
            raise ValueError(f"non-finite endpoint: {x!r}")


@dataclass(frozen=True)
class TimeScale:
    """A normalized, bounded time scale.

    ``components`` must already be sorted, pairwise disjoint and non-touching;
    use :func:`build_timescale` to normalize arbitrary input.
    """

    components: tuple
    _lows: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("a time scale needs at least one component")
        for left, right in zip(comps, comps[1:]):
            if not left.hi < right.lo:
                raise ValueError(f"components {left} and {right} overlap or touch")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "_lows", tuple(c.lo for c in comps))

    # construction helpers -------------------------------------------------

    @classmethod
    def integers(cls, lo: int, hi: int) -> "TimeScale":
        if hi < lo:
            raise ValueError("empty integer range")
        return cls(tuple(Point(k) for k in range(lo, hi + 1)))

    @classmethod
    def real(cls, lo, hi) -> "TimeScale":
        return cls((Interval(lo, hi),))

    @classmethod
    def from_points(cls, points: Iterable) -> "TimeScale":
        return build_timescale([Point(p) for p in points])

    # basic queries --------------------------------------------------------

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    @property
    def min(self):
        return self.components[0].lo

    @property
    def max(self):
        return self.components[-1].hi

    @property
    def is_discrete(self) -> bool:
        return all(not c.dense for c in self.components)

    @property
    def is_exact(self) -> bool:
        return all(is_exact(c.lo) and is_exact(c.hi) for c in self.components)

    def points(self) -> tuple:
        """All points of a purely discrete scale, ascending."""
        if not self.is_discrete:
            raise ValueError("scale has interval components; it has no finite point list")
        return self._lows

    def grid_points(self) -> tuple:
        """Isolated points together with every interval endpoint, ascending."""
        out = []
        for c in self.components:
            out.append(c.lo)
            if c.dense:
                out.append(c.hi)
        return tuple(out)

    def locate(self, t, tol: float = GRID_TOL):
        """Return ``(component index, canonical point)`` for ``t`` on the scale.

        Floats within ``tol`` of a scattered point or interval endpoint are
        identified with it; rationals must match exactly.
        """
        slack = 0 if is_exact(t) else tol
        i = bisect.bisect_right(self._lows, t + slack) - 1
        for k in (i, i + 1):
            if 0 <= k < len(self.components):
                c = self.components[k]
                if c.lo - slack <= t <= c.hi + slack:
                    if not c.dense:
                        return k, c.x
                    if abs(t - c.lo) <= slack:
                        return k, c.lo
                    if abs(t - c.hi) <= slack:
                        return k, c.hi
                    return k, t
        raise NotInScaleError(f"{t!r} is not a point of the time scale")

    def __contains__(self, t) -> bool:
        try:
            self.locate(t)
        except (NotInScaleError, TypeError):
            return False
        return True

    def snap(self, t):
        return self.locate(t)[1]

    def sigma(self, t):
        k, t = self.locate(t)
        c = self.components[k]
        if c.dense and t < c.hi:
            return t
        if k + 1 < len(self.components):
            return self.components[k + 1].lo
        return t

    def rho(self, t):
        k, t = self.locate(t)
        c = self.components[k]
        if c.dense and t > c.lo:
            return t
        if k > 0:
            return self.components[k - 1].hi
        return t

    def mu(self, t):
        t = self.snap(t)
        return self.sigma(t) - t

    def nu(self, t):
        t = self.snap(t)
        return t - self.rho(t)

    def jumps(self, t) -> Jumps:
        t = self.snap(t)
        s, r = self.sigma(t), self.rho(t)
        return Jumps(s, r, s - t, t - r)

    def window(self, lo, hi) -> "TimeScale":
        """The part of the scale inside ``[lo, hi]``."""
        if hi < lo:
            raise ValueError("window needs lo <= hi")
        out = []
        for c in self.components:
            if c.hi < lo or c.lo > hi:
                continue
            if not c.dense:
                out.append(c)
                continue
            a, b = max(c.lo, lo), min(c.hi, hi)
            out.append(Interval(a, b) if a < b else Point(a))
        if not out:
            raise ValueError(f"window [{lo}, {hi}] misses the time scale")
        return TimeScale(tuple(out))

    # serialization --------------------------------------------------------

    def to_json(self) -> list:
        out = []
        for c in self.components:
            if c.dense:
                out.append({"interval": [number_to_json(c.lo), number_to_json(c.hi)]})
            else:
                out.append({"point": number_to_json(c.x)})
        return out

    @classmethod
    def from_json(cls, data: Sequence) -> "TimeScale":
        return build_timescale(components_from_json(data))


def components_from_json(data: Sequence) -> list:
    if not isinstance(data, (list, tuple)):
        raise TypeError("a time scale is a JSON array of components")
    comps = []
    for item in data:
        if not isinstance(item, dict) or len(item) != 1:
            raise ValueError(f"bad component {item!r}")
        (kind, value), = item.items()
        if kind == "interval":
            lo, hi = value
            comps.append(Interval(parse_number(lo), parse_number(hi)))
        elif kind == "point":
            comps.append(Point(parse_number(value)))
        elif kind == "integers":
            lo, hi = (parse_number(v) for v in value)
            if not (isinstance(lo, int) and isinstance(hi, int)):
                raise ValueError("integer range bounds must be integers")
            comps.extend(Point(k) for k in range(lo, hi + 1))
        else:
            raise ValueError(f"unknown component kind {kind!r}")
    return comps


def build_timescale(raw_components: Iterable[Component]) -> TimeScale:
    """Normalize components into a :class:`TimeScale`.

    Components are sorted; overlapping or touching intervals are merged and
    isolated points lying in (or on the boundary of) an interval are absorbed.
    """
    comps = list(raw_components)
    if not comps:
        raise ValueError("a time scale needs at least one component")
    for c in comps:
        if not isinstance(c, (Interval, Point)):
            raise TypeError(f"not a time-scale component: {c!r}")
    comps.sort(key=lambda c: (c.lo, c.dense))
    merged: list = []
    for c in comps:
        if merged and c.lo <= merged[-1].hi:
            last = merged[-1]
            if c.hi <= last.hi:
                continue
            # c starts inside (or touching) last and sticks out to the right
            merged[-1] = Interval(last.lo, c.hi)
            continue
        merged.append(c)
    return TimeScale(tuple(merged))


def jump_operators(T: TimeScale, t) -> Jumps:
    """``(sigma, rho, mu, nu)`` at a point of ``T``."""
    return T.jumps(t)


def image_timescale(T: TimeScale, f: Callable) -> TimeScale:
    """The image ``f(T)`` of a strictly monotone continuous function.

    Intervals map to intervals and isolated points to isolated points; for a
    decreasing function the component order is reversed. Raises
    :class:`~chronoscale.monotone.MonotonicityViolation` when images of
    different components collide or come out of order.
    """
    from .monotone import MonotonicityViolation

    images = []
    senses = set()
    for c in T.components:
        if c.dense:
            u, v = f(c.lo), f(c.hi)
            if u == v:
                raise MonotonicityViolation(f"f is constant across {c}")
            senses.add(u < v)
            images.append(Interval(min(u, v), max(u, v)))
        else:
            images.append(Point(f(c.x)))
    if len(images) > 1:
        senses.add(images[1].lo > images[0].hi)
    if len(senses) > 1:
        raise MonotonicityViolation("function changes direction on the scale")
    if senses == {False}:
        images.reverse()
    for left, right in zip(images, images[1:]):
        if not left.hi < right.lo:
            raise MonotonicityViolation("function values are not strictly monotone on the scale")
    return TimeScale(tuple(images))
