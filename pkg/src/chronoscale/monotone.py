"""Strictly monotone functions on time-scale windows, their inverses, and
piecewise-monotone composites.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .scalars import DEFAULT_TOLERANCE, EXACT, ScalarMode, all_exact, same_point
from .timescale import NotInScaleError, TimeScale, image_timescale

MESH_POINTS = 33
_HALVINGS = 60


class MonotonicityViolation(ValueError):
    """Two sample points of a declared-monotone function are out of order."""


class DiscontinuityDetected(ValueError):
    """A jump survived mesh refinement inside an interval component."""


class Direction(enum.Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"

    @property
    def sign(self) -> int:
        return 1 if self is Direction.INCREASING else -1


def _as_direction(d) -> Direction:
    if isinstance(d, Direction):
        return d
    return Direction(str(d).lower())


@dataclass(frozen=True, eq=False)
class MonotoneFn:
    """A continuous strictly monotone function on the window ``scale``.

    Build with :func:`make_monotone`, which validates the direction.
    """

    func: Callable
    direction: Direction
    scale: TimeScale
    inverse_func: Optional[Callable] = None
    image: TimeScale = field(init=False)
    _lookup: dict = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "image", image_timescale(self.scale, self.func))
        lookup = {}
        for c in self.scale.components:
            if not c.dense:
                lookup[self.func(c.x)] = c.x
        object.__setattr__(self, "_lookup", lookup)

    def __call__(self, t):
        return self.func(t)

    @property
    def increasing(self) -> bool:
        return self.direction is Direction.INCREASING

    @property
    def alpha1(self):
        return self.scale.min

    @property
    def alpha2(self):
        return self.scale.max

    @property
    def beta1(self):
        return self.func(self.scale.min)

    @property
    def is_exact(self) -> bool:
        """Discrete rational domain with rational values: the exact regime applies."""
        return self.scale.is_discrete and self.scale.is_exact and all_exact(self._lookup)

    def inverse(self, y):
        return inverse_eval(self, y)

    def rho_value(self, t):
        """``f(rho(t))`` on the window."""
        return self.func(self.scale.rho(t))


def make_monotone(
    func: Callable,
    direction=None,
    scale: TimeScale = None,
    lo=None,
    hi=None,
    inverse: Optional[Callable] = None,
    validate: bool = True,
) -> MonotoneFn:
    """Validate ``func`` as strictly monotone on ``scale`` restricted to ``[lo, hi]``.

    ``direction`` may be a :class:`Direction`, its string value, or ``None``
    to infer it from the values at the window ends. Validation checks every
    grid point plus a 33-point mesh on each interval component, then hunts
    for jumps by repeatedly halving each mesh cell. This is a sampling
    heuristic: a black-box callable cannot be certified monotone.
    """
    if scale is None:
        raise ValueError("a domain time scale is required")
    window = scale
    if lo is not None or hi is not None:
        window = scale.window(scale.min if lo is None else lo, scale.max if hi is None else hi)
    if direction is None:
        if window.min == window.max:
            raise ValueError("cannot infer a direction on a one-point window")
        direction = Direction.INCREASING if func(window.max) > func(window.min) else Direction.DECREASING
    direction = _as_direction(direction)
    if validate:
        _validate(func, direction, window)
    return MonotoneFn(func, direction, window, inverse)


def _validate(func, direction: Direction, window: TimeScale):
    sign = direction.sign
    xs = list(window.grid_points())
    values = [func(x) for x in xs]
    for (x0, v0), (x1, v1) in zip(zip(xs, values), zip(xs[1:], values[1:])):
        if not sign * (v1 - v0) > 0:
            raise MonotonicityViolation(
                f"f({x0!r}) = {v0!r}, f({x1!r}) = {v1!r} is not {direction.value}"
            )
    for c in window.components:
        if c.dense:
            _validate_interval(func, sign, direction, float(c.lo), float(c.hi))


def _validate_interval(func, sign, direction, lo, hi):
    mesh = np.linspace(lo, hi, MESH_POINTS)
    vals = [float(func(float(x))) for x in mesh]
    for i in range(len(mesh) - 1):
        if not sign * (vals[i + 1] - vals[i]) > 0:
            raise MonotonicityViolation(
                f"f({mesh[i]!r}) = {vals[i]!r}, f({mesh[i + 1]!r}) = {vals[i + 1]!r}"
                f" is not {direction.value}"
            )
    spread = abs(vals[-1] - vals[0])
    jump_tol = 1e-6 * max(1.0, spread)
    for i in range(len(mesh) - 1):
        a, b, fa, fb = float(mesh[i]), float(mesh[i + 1]), vals[i], vals[i + 1]
        for _ in range(_HALVINGS):
            if abs(fb - fa) <= jump_tol:
                break
            m = 0.5 * (a + b)
            if not a < m < b:
                break
            fm = float(func(m))
            if abs(fm - fa) >= abs(fb - fm):
                b, fb = m, fm
            else:
                a, fa = m, fm
        if abs(fb - fa) > jump_tol:
            raise DiscontinuityDetected(f"jump of {fb - fa!r} near t = {0.5 * (a + b)!r}")


def _bisect(func, lo: float, hi: float, y: float, increasing: bool) -> float:
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        below = func(mid) < y
        if below == increasing:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def inverse_eval(f: MonotoneFn, y):
    """The unique window point ``t`` with ``f(t) = y``.

    Isolated image points are looked up exactly. Inside interval components
    the closed-form inverse is used when supplied, otherwise bisection to
    floating-point resolution (well under 1e-12). ``y`` off the image grid is
    an error; it is never snapped to a neighbour.
    """
    j, y = f.image.locate(y)
    n = len(f.image.components)
    i = j if f.increasing else n - 1 - j
    c = f.scale.components[i]
    if not c.dense:
        return c.x
    ic = f.image.components[j]
    if y == ic.lo:
        return c.lo if f.increasing else c.hi
    if y == ic.hi:
        return c.hi if f.increasing else c.lo
    if f.inverse_func is not None:
        x = f.inverse_func(y)
        return min(max(x, c.lo), c.hi)
    return _bisect(f.func, float(c.lo), float(c.hi), float(y), f.increasing)


class PiecewiseMode(enum.Enum):
    SCALE_CONTINUOUS = "scale_continuous"
    REAL_JUMPS = "real_jumps"


@dataclass(frozen=True, eq=False)
class PiecewiseFn:
    """Knots ``a_1 < ... < a_{m+1}`` with a monotone piece on each ``[a_i, a_{i+1}]``.

    ``jumps`` lists ``(a_i, f_{i-1}(a_i), f_i(a_i))`` for interior knots.
    """

    knots: tuple
    pieces: tuple
    mode: PiecewiseMode
    scale: TimeScale
    jumps: tuple

    @property
    def m(self) -> int:
        return len(self.pieces)

    def piece_index(self, t) -> int:
        for i in range(self.m - 1, -1, -1):
            if t >= self.knots[i]:
                return i
        if t >= self.pieces[0].scale.min:
            return 0
        raise NotInScaleError(f"{t!r} lies left of the first piece")

    def __call__(self, t):
        return self.pieces[self.piece_index(t)](t)

    def jump_sum(self):
        """Sum of ``a_i * (f_i(a_i) - f_{i-1}(a_i))`` over interior knots."""
        return sum((a * (right - left) for a, left, right in self.jumps), 0)


def make_piecewise(
    knots: Sequence,
    pieces: Sequence,
    mode=PiecewiseMode.SCALE_CONTINUOUS,
    scale: Optional[TimeScale] = None,
    inverses: Optional[Sequence] = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> PiecewiseFn:
    """Assemble and validate a piecewise-monotone function.

    ``pieces`` are :class:`MonotoneFn` objects on ``[a_i, a_{i+1}]`` or plain
    callables (direction inferred, validated on that window of ``scale``).
    In scale-continuous mode the first piece lives on ``[rho(a_1), a_2]``.
    Without ``scale`` the domain is the real interval ``[a_1, a_{m+1}]``.
    """
    mode = PiecewiseMode(mode.value if isinstance(mode, PiecewiseMode) else mode)
    knots = tuple(knots)
    if len(knots) != len(pieces) + 1 or len(pieces) < 1:
        raise ValueError("need exactly one more knot than pieces")
    if any(not k0 < k1 for k0, k1 in zip(knots, knots[1:])):
        raise ValueError("knots must be strictly increasing")
    if scale is None:
        scale = TimeScale.real(knots[0], knots[-1])
    for k in knots:
        if k not in scale:
            raise NotInScaleError(f"knot {k!r} is not on the time scale")
    # on a time scale the first piece also covers rho(a_1), where f^rho(a_1) lives
    start = scale.rho(knots[0]) if mode is PiecewiseMode.SCALE_CONTINUOUS else knots[0]
    window = scale.window(start, knots[-1])
    if mode is PiecewiseMode.REAL_JUMPS and (len(window) != 1 or not window.components[0].dense):
        raise ValueError("real-jumps mode needs a single interval domain")
    inverses = list(inverses) if inverses is not None else [None] * len(pieces)
    built = []
    for i, p in enumerate(pieces):
        lo, hi = (start if i == 0 else knots[i]), knots[i + 1]
        if isinstance(p, MonotoneFn):
            if not (same_point(p.scale.min, lo) and same_point(p.scale.max, hi)):
                raise ValueError(f"piece {i + 1} is not defined on [{lo}, {hi}]")
            built.append(p)
        else:
            built.append(make_monotone(p, None, window, lo, hi, inverse=inverses[i]))
    jumps = []
    for i in range(1, len(built)):
        a = knots[i]
        left, right = built[i - 1](a), built[i](a)
        jumps.append((a, left, right))
    if mode is PiecewiseMode.SCALE_CONTINUOUS:
        regime = EXACT if all(p.is_exact for p in built) else ScalarMode(False, tolerance)
        for a, left, right in jumps:
            if not regime.close(left, right):
                raise ValueError(f"pieces disagree at knot {a!r}: {left!r} != {right!r}")
    return PiecewiseFn(knots, tuple(built), mode, window, tuple(jumps))
