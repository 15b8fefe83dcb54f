"""The Young functional on time scales and its two-sided bounds.

For a strictly increasing ``f`` on the window ``[alpha1, alpha2]_T`` with
``beta1 = f(alpha1)``::

    F(a, b) = int_{alpha1}^{a} f  delta-t  +  int_{beta1}^{b} f^{-1}  nabla-y
              - a*b + alpha1*beta1

is nonnegative and vanishes exactly when ``b`` is ``f(rho(a))`` or ``f(a)``.
For a strictly decreasing ``f`` the inverse integral runs over the image
with its orientation reversed (forward graininess weights), which makes
``F <= 0`` with the same zero set.

Equality flags in every report are grid predicates, never numeric
coincidences. They are the exact zero-set conditions of the underlying
identity ``bound - middle = F(x, y)`` for the relevant witness ``(x, y)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from .calculus import QUAD_TOL, _total, delta_integral, nabla_integral
from .monotone import MonotoneFn, PiecewiseFn, PiecewiseMode
from .scalars import APPROX, EXACT, GRID_TOL, ScalarMode, in_set, same_point


class Variant(enum.Enum):
    """Which witness points enter the product bounds.

    The first half picks the domain-side point, ``f^{-1}(b)`` (``RHO``) or
    ``sigma(f^{-1}(b))`` (``SIGMA``); the second half picks the image-side
    point, ``f(rho(a))`` (``RHO``) or ``f(a)`` (``F``). ``RHO_RHO`` is the
    primary form; the other three are the alternatives obtained from the
    same two-point inequality.
    """

    RHO_RHO = "rho_rho"
    RHO_F = "rho_f"
    SIGMA_RHO = "sigma_rho"
    SIGMA_F = "sigma_f"

    @property
    def uses_sigma(self) -> bool:
        return self in (Variant.SIGMA_RHO, Variant.SIGMA_F)

    @property
    def uses_rho(self) -> bool:
        return self in (Variant.RHO_RHO, Variant.SIGMA_RHO)


VARIANTS = (Variant.RHO_RHO, Variant.RHO_F, Variant.SIGMA_RHO, Variant.SIGMA_F)


@dataclass(frozen=True)
class BoundReport:
    """``lower <= middle <= upper``, or the reverse when ``reversed`` is set.

    ``lower`` and ``upper`` always hold the same expressions regardless of the
    direction of ``f``; a decreasing function flips the inequalities instead
    of swapping the fields.
    """

    lower: object
    middle: object
    upper: object
    equality_lower: bool
    equality_upper: bool
    reversed: bool = False
    variant: Optional[Variant] = None
    witnesses: dict = field(default_factory=dict, compare=False)
    regime: ScalarMode = APPROX

    @property
    def holds(self) -> bool:
        lo, hi = (self.upper, self.lower) if self.reversed else (self.lower, self.upper)
        return self.regime.leq(lo, self.middle) and self.regime.leq(self.middle, hi)


class YoungCheck(NamedTuple):
    value: object
    holds: bool
    equality: bool


class TwoPointBound(NamedTuple):
    lhs: object
    rhs: object
    equality: bool
    holds: bool


class YoungContext:
    """A monotone function together with its image scale and anchor point.

    The anchor is the left end of the function's window: ``alpha1 = min T``
    and ``beta1 = f(alpha1)``. The regime is exact when the window is
    discrete with rational points and rational values, unless overridden.
    """

    def __init__(self, f: MonotoneFn, mode: Optional[ScalarMode] = None, tol: float = QUAD_TOL):
        if mode is None:
            mode = EXACT if f.is_exact else APPROX
        elif mode.exact and not f.is_exact:
            raise ValueError("exact regime needs a discrete scale with rational points and values")
        self.f = f
        self.T = f.scale
        self.Timage = f.image
        self.alpha1 = f.alpha1
        self.beta1 = f.beta1
        self.mode = mode
        self.tol = tol
        self.increasing = f.increasing
        self._delta_cum = None
        self._inv_cum = None
        if self.T.is_discrete:
            self._build_prefix()
        self._anchor_delta: dict = {}
        self._anchor_inv: dict = {}

    def _build_prefix(self):
        pts = self.T.points()
        acc, cum = 0, {pts[0]: 0}
        for t, nxt in zip(pts, pts[1:]):
            acc = acc + (nxt - t) * self.f(t)
            cum[nxt] = acc
        self._delta_cum = cum
        ys = self.Timage.points()
        inv = self.f.inverse
        acc, cum = 0, {ys[0]: 0}
        if self.increasing:
            for prev, y in zip(ys, ys[1:]):
                acc = acc + (y - prev) * inv(y)
                cum[y] = acc
        else:
            for y, nxt in zip(ys, ys[1:]):
                acc = acc + (nxt - y) * inv(y)
                cum[nxt] = acc
        self._inv_cum = cum

    # integrals -------------------------------------------------------------

    def point(self, a):
        return self.T.snap(a)

    def image_point(self, b):
        return self.Timage.snap(b)

    def delta(self, x, y):
        """Delta integral of ``f`` from ``x`` to ``y`` on the window."""
        if self._delta_cum is not None:
            return self._delta_cum[self.point(y)] - self._delta_cum[self.point(x)]
        return delta_integral(self.T, self.f, x, y, self.tol)

    def inverse_integral(self, u, v):
        """Integral of ``f^{-1}`` from ``u`` to ``v`` along the image scale.

        Nabla weights for increasing ``f``; for decreasing ``f`` the image is
        traversed backwards, which turns them into delta weights.
        """
        if self._inv_cum is not None:
            return self._inv_cum[self.image_point(v)] - self._inv_cum[self.image_point(u)]
        integrate = nabla_integral if self.increasing else delta_integral
        return integrate(self.Timage, self.f.inverse, u, v, self.tol)

    def delta_from_anchor(self, a):
        a = self.point(a)
        if a not in self._anchor_delta:
            self._anchor_delta[a] = self.delta(self.alpha1, a)
        return self._anchor_delta[a]

    def inverse_from_anchor(self, b):
        b = self.image_point(b)
        if b not in self._anchor_inv:
            self._anchor_inv[b] = self.inverse_integral(self.beta1, b)
        return self._anchor_inv[b]

    # grid helpers ------------------------------------------------------------

    def f_rho(self, a):
        return self.f(self.T.rho(a))

    def on_zero_set(self, x, y) -> bool:
        """``y in {f(rho(x)), f(x)}``: the exact zero set of ``F(x, y)``."""
        x = self.point(x)
        return in_set(y, (self.f_rho(x), self.f(x)))

    def domain_witness(self, b, variant: Variant):
        x = self.f.inverse(b)
        return self.T.sigma(x) if variant.uses_sigma else x

    def image_witness(self, a, variant: Variant):
        return self.f_rho(a) if variant.uses_rho else self.f(self.point(a))


def make_context(f: MonotoneFn, mode: Optional[ScalarMode] = None) -> YoungContext:
    return YoungContext(f, mode)


def young_functional(ctx: YoungContext, a, b):
    """``F(a, b)`` relative to the context's anchor."""
    a, b = ctx.point(a), ctx.image_point(b)
    return ctx.delta_from_anchor(a) + ctx.inverse_from_anchor(b) - a * b + ctx.alpha1 * ctx.beta1


def young_check(ctx: YoungContext, a, b) -> YoungCheck:
    """Evaluate ``F(a, b)`` and test its sign.

    ``holds`` is ``F >= 0`` for increasing ``f`` and ``F <= 0`` for
    decreasing ``f``; ``equality`` is the grid test ``b in {f(rho(a)), f(a)}``.
    """
    value = young_functional(ctx, a, b)
    holds = ctx.mode.leq(0, value) if ctx.increasing else ctx.mode.leq(value, 0)
    return YoungCheck(value, holds, ctx.on_zero_set(a, b))


def phi_identity_check(ctx: YoungContext, a):
    """``F(a, f(a))``, which vanishes identically."""
    a = ctx.point(a)
    return young_functional(ctx, a, ctx.f(a))


def two_point_bound(ctx: YoungContext, a, b, alpha, beta) -> TwoPointBound:
    """``F(a, b) + F(alpha, beta) >= -(alpha - a)(beta - b)`` for increasing ``f``.

    Equality exactly when ``alpha in {f^{-1}(b), sigma(f^{-1}(b))}`` and
    ``beta in {f(rho(a)), f(a)}``.
    """
    a, alpha = ctx.point(a), ctx.point(alpha)
    b, beta = ctx.image_point(b), ctx.image_point(beta)
    lhs = young_functional(ctx, a, b) + young_functional(ctx, alpha, beta)
    rhs = -(alpha - a) * (beta - b)
    x = ctx.f.inverse(b)
    equality = in_set(alpha, (x, ctx.T.sigma(x))) and ctx.on_zero_set(a, beta)
    holds = ctx.mode.leq(rhs, lhs) if ctx.increasing else ctx.mode.leq(lhs, rhs)
    return TwoPointBound(lhs, rhs, equality, holds)


def _sandwich_middle(ctx: YoungContext, a, a_hat, b, b_hat):
    return ctx.delta(a_hat, a) + ctx.inverse_integral(b_hat, b) - a * b + a_hat * b_hat


def _bounds_for(ctx: YoungContext, a, a_hat, b, b_hat, variant: Variant):
    x, xh = ctx.domain_witness(b, variant), ctx.domain_witness(b_hat, variant)
    y, yh = ctx.image_witness(a, variant), ctx.image_witness(a_hat, variant)
    upper = (x - a) * (b - y)
    lower = (xh - a_hat) * (yh - b_hat)
    eq_upper = ctx.on_zero_set(a_hat, b_hat) and ctx.on_zero_set(x, y)
    eq_lower = ctx.on_zero_set(a, b) and ctx.on_zero_set(xh, yh)
    return lower, upper, eq_lower, eq_upper


def sandwich_bounds(ctx: YoungContext, a, a_hat, b, b_hat, variant: Variant = Variant.RHO_RHO) -> BoundReport:
    """Two-sided bound on ``int_{a_hat}^{a} f + int_{b_hat}^{b} f^{-1} - ab + a_hat*b_hat``.

    With the ``RHO_RHO`` variant::

        (f^{-1}(b_hat) - a_hat)(f(rho(a_hat)) - b_hat)  <=  middle
                                 <=  (f^{-1}(b) - a)(b - f(rho(a)))

    and the other variants substitute ``sigma(f^{-1}(.))`` and/or ``f(.)``.
    """
    variant = Variant(variant)
    a, a_hat = ctx.point(a), ctx.point(a_hat)
    b, b_hat = ctx.image_point(b), ctx.image_point(b_hat)
    middle = _sandwich_middle(ctx, a, a_hat, b, b_hat)
    lower, upper, eq_lower, eq_upper = _bounds_for(ctx, a, a_hat, b, b_hat, variant)
    return BoundReport(
        lower, middle, upper, eq_lower, eq_upper,
        reversed=not ctx.increasing, variant=variant,
        witnesses={"a": a, "a_hat": a_hat, "b": b, "b_hat": b_hat},
        regime=ctx.mode,
    )


def sandwich_all(ctx: YoungContext, a, a_hat, b, b_hat) -> tuple:
    """All four variants, sharing one evaluation of the middle term."""
    a, a_hat = ctx.point(a), ctx.point(a_hat)
    b, b_hat = ctx.image_point(b), ctx.image_point(b_hat)
    middle = _sandwich_middle(ctx, a, a_hat, b, b_hat)
    out = []
    for v in VARIANTS:
        lower, upper, eq_lower, eq_upper = _bounds_for(ctx, a, a_hat, b, b_hat, v)
        out.append(BoundReport(
            lower, middle, upper, eq_lower, eq_upper,
            reversed=not ctx.increasing, variant=v,
            witnesses={"a": a, "a_hat": a_hat, "b": b, "b_hat": b_hat},
            regime=ctx.mode,
        ))
    return tuple(out)


def best_upper_bound(ctx: YoungContext, a, a_hat, b, b_hat):
    """The tightest of the four upper bounds as ``(variant, value)``.

    Ties go to the earliest variant in :data:`VARIANTS`. For decreasing ``f``
    the upper expressions bound from below, so the largest one wins.
    """
    a, b = ctx.point(a), ctx.image_point(b)
    ctx.point(a_hat), ctx.image_point(b_hat)
    best = None
    for v in VARIANTS:
        value = (ctx.domain_witness(b, v) - a) * (b - ctx.image_witness(a, v))
        if best is None:
            best = (v, value)
        elif (value < best[1]) if ctx.increasing else (value > best[1]):
            best = (v, value)
    return best


def legendre_pair(ctx: YoungContext, g_anchor) -> tuple:
    """Antiderivative ``g`` of ``f`` and its time-scale conjugate ``g_star``.

    ``g(alpha1) = g_anchor`` and ``g_star`` is pinned so that
    ``g(alpha1) + g_star(beta1) = alpha1 * beta1``; then
    ``g(a) + g_star(b) - a*b`` equals ``F(a, b)`` at every grid pair.
    """

    def g(a):
        return g_anchor + ctx.delta_from_anchor(a)

    def g_star(b):
        return ctx.inverse_from_anchor(b) + ctx.alpha1 * ctx.beta1 - g_anchor

    return g, g_star


def inverse_free_sandwich(ctx: YoungContext, a, a_hat, alpha, alpha_hat) -> BoundReport:
    """Bounds that avoid evaluating ``f^{-1}``::

        (alpha_hat - a_hat)(f(rho(a_hat)) - f(alpha_hat))
            <=  int_{a_hat}^{a} f - int_{alpha_hat}^{alpha} f
                + (alpha - a) f(alpha) + (a_hat - alpha_hat) f(alpha_hat)
            <=  (alpha - a)(f(alpha) - f(rho(a)))
    """
    a, a_hat = ctx.point(a), ctx.point(a_hat)
    alpha, alpha_hat = ctx.point(alpha), ctx.point(alpha_hat)
    f = ctx.f
    fa, fah = f(alpha), f(alpha_hat)
    middle = ctx.delta(a_hat, a) - ctx.delta(alpha_hat, alpha) + (alpha - a) * fa + (a_hat - alpha_hat) * fah
    rho_a, rho_ah = ctx.f_rho(a), ctx.f_rho(a_hat)
    lower = (alpha_hat - a_hat) * (rho_ah - fah)
    upper = (alpha - a) * (fa - rho_a)
    eq_upper = ctx.on_zero_set(a_hat, fah) and ctx.on_zero_set(alpha, rho_a)
    eq_lower = ctx.on_zero_set(a, fa) and ctx.on_zero_set(alpha_hat, rho_ah)
    return BoundReport(
        lower, middle, upper, eq_lower, eq_upper,
        reversed=not ctx.increasing,
        witnesses={"a": a, "a_hat": a_hat, "alpha": alpha, "alpha_hat": alpha_hat},
        regime=ctx.mode,
    )


# piecewise-monotone functions -------------------------------------------------


def _piece_contexts(pf: PiecewiseFn):
    return [YoungContext(p) for p in pf.pieces]


def _path_inverse_integral(pf: PiecewiseFn, ctxs, b_first, b_last):
    m, knots = pf.m, pf.knots
    if m == 1:
        return ctxs[0].inverse_integral(b_first, b_last)
    parts = [ctxs[0].inverse_integral(b_first, pf.pieces[0](knots[1]))]
    for i in range(1, m - 1):
        p = pf.pieces[i]
        parts.append(ctxs[i].inverse_integral(p(knots[i]), p(knots[i + 1])))
    parts.append(ctxs[-1].inverse_integral(pf.pieces[-1](knots[m - 1]), b_last))
    return _total(parts)


def piecewise_sandwich(pf: PiecewiseFn, b_first, b_last) -> BoundReport:
    """Bounds for a continuous piecewise-monotone function on a time scale.

    ``middle`` is ``int_{a_1}^{a_{m+1}} f + int_{b_1}^{b_{m+1}} f^{-1}
    - a_{m+1} b_{m+1} + a_1 b_1``, the inverse integral taken piece by piece
    along the graph. With ``K_i = (a_i - f^{-1}(b_i))(f(rho(a_i)) - b_i)``:

    * end pieces with the same direction: ``-K_1 <= middle <= K_{m+1}``;
    * first increasing, last decreasing: ``K_{m+1} - K_1 <= middle <= 0``;

    each reversed when the first piece decreases. ``b_1`` must lie in the
    image of the first piece and ``b_{m+1}`` in that of the last.
    """
    if pf.mode is not PiecewiseMode.SCALE_CONTINUOUS:
        raise ValueError("piecewise_sandwich needs a scale-continuous function")
    ctxs = _piece_contexts(pf)
    first, last = ctxs[0], ctxs[-1]
    b_first, b_last = first.image_point(b_first), last.image_point(b_last)
    knots = pf.knots
    a_first, a_last = knots[0], knots[-1]
    integral = _total([c.delta(knots[i], knots[i + 1]) for i, c in enumerate(ctxs)])
    middle = integral + _path_inverse_integral(pf, ctxs, b_first, b_last) - a_last * b_last + a_first * b_first

    x_first, x_last = first.f.inverse(b_first), last.f.inverse(b_last)
    if x_first < a_first:
        raise ValueError(f"f^-1({b_first!r}) = {x_first!r} lies left of the first knot")
    rho_first, rho_last = first.f_rho(a_first), last.f_rho(a_last)
    k_first = (a_first - x_first) * (rho_first - b_first)
    k_last = (a_last - x_last) * (rho_last - b_last)
    same_direction = first.increasing == last.increasing

    # each end contributes between a zero extreme and a K extreme
    zero_tight = (first.on_zero_set(a_first, b_first), last.on_zero_set(a_last, b_last))
    k_tight = (first.on_zero_set(x_first, rho_first), last.on_zero_set(x_last, rho_last))
    if same_direction:
        lower, upper = -k_first, k_last
        eq_lower, eq_upper = k_tight[0] and zero_tight[1], zero_tight[0] and k_tight[1]
    else:
        lower, upper = k_last - k_first, 0
        eq_lower, eq_upper = k_tight[0] and k_tight[1], zero_tight[0] and zero_tight[1]
    exact = all(c.mode.exact for c in ctxs)
    return BoundReport(
        lower, middle, upper, eq_lower, eq_upper,
        reversed=not first.increasing,
        witnesses={"b_first": b_first, "b_last": b_last, "K_first": k_first, "K_last": k_last},
        regime=EXACT if exact else ctxs[0].mode,
    )


def piecewise_real_sandwich(pf: PiecewiseFn, b_first, b_last) -> BoundReport:
    """Bounds for a piecewise-continuous piecewise-monotone function on the reals.

    ``middle`` adds the jump correction ``sum a_i (f_i(a_i) - f_{i-1}(a_i))``
    and integrates ``f^{-1}`` only over the ranges of the pieces, piece by
    piece; the gaps opened by jumps contribute nothing. ``K_i`` uses ``f(a_i)``.
    """
    if pf.mode is not PiecewiseMode.REAL_JUMPS:
        raise ValueError("piecewise_real_sandwich needs a real-jumps function")
    ctxs = _piece_contexts(pf)
    first, last = ctxs[0], ctxs[-1]
    b_first, b_last = first.image_point(b_first), last.image_point(b_last)
    knots = pf.knots
    a_first, a_last = knots[0], knots[-1]
    integral = _total([c.delta(knots[i], knots[i + 1]) for i, c in enumerate(ctxs)])
    middle = (
        integral
        + _path_inverse_integral(pf, ctxs, b_first, b_last)
        - a_last * b_last
        + a_first * b_first
        + pf.jump_sum()
    )
    f_first, f_last = pf.pieces[0](a_first), pf.pieces[-1](a_last)
    k_first = (a_first - first.f.inverse(b_first)) * (f_first - b_first)
    k_last = (a_last - last.f.inverse(b_last)) * (f_last - b_last)
    if first.increasing == last.increasing:
        lower, upper = -k_first, k_last
    else:
        lower, upper = k_last - k_first, 0
    equality = same_point(b_first, f_first, GRID_TOL) and same_point(b_last, f_last, GRID_TOL)
    return BoundReport(
        lower, middle, upper, equality, equality,
        reversed=not first.increasing,
        witnesses={"b_first": b_first, "b_last": b_last, "K_first": k_first, "K_last": k_last},
        regime=APPROX,
    )


# exhaustive tables on discrete scales -------------------------------------------


@dataclass(frozen=True, eq=False)
class YoungTable:
    """Every grid value of ``F`` and of the four upper bounds, as arrays.

    Row ``i`` is the domain point ``points[i]``; column ``j`` is the image
    point ``values[j]`` (both ascending). In the exact regime entries are
    Python integers equal to the true value times ``scale``; otherwise they
    are floats and ``scale`` is 1. Lower bounds are negated upper bounds at
    the hatted pair: ``lower_v(i_hat, j_hat) = -upper_v(i_hat, j_hat)``.
    """

    points: tuple
    values: tuple
    scale: int
    exact: bool
    increasing: bool
    F: np.ndarray
    upper: dict
    zero: np.ndarray
    tight: dict

    def to_value(self, x):
        if self.exact:
            return Fraction(int(x), self.scale)
        return float(x)

    def sandwich(self, i, i_hat, j, j_hat, variant: Variant):
        """Vectorised :func:`sandwich_bounds` on index arrays.

        Returns scaled ``(lower, middle, upper, eq_lower, eq_upper)``.
        """
        middle = self.F[i, j] - self.F[i_hat, j_hat]
        up = self.upper[variant]
        tight = self.tight[variant]
        eq_lower = self.zero[i, j] & tight[i_hat, j_hat]
        eq_upper = self.zero[i_hat, j_hat] & tight[i, j]
        return -up[i_hat, j_hat], middle, up[i, j], eq_lower, eq_upper


def _common_denominator(values) -> int:
    den = 1
    for v in values:
        d = Fraction(v).denominator
        den = den * d // math.gcd(den, d)
    return den


def tabulate(ctx: YoungContext) -> YoungTable:
    """Tabulate ``F`` and all variant bounds over a discrete context.

    Exact contexts are tabulated in integer arithmetic over a common
    denominator, so the arrays are exact.
    """
    if not ctx.T.is_discrete:
        raise ValueError("tables need a purely discrete scale")
    pts = ctx.T.points()
    ys = ctx.Timage.points()
    n = len(pts)
    exact = ctx.mode.exact
    if exact:
        d_pts, d_ys = _common_denominator(pts), _common_denominator(ys)
        scale = d_pts * d_ys
        t = np.array([int(p * d_pts) for p in pts], dtype=object)
        y = np.array([int(v * d_ys) for v in ys], dtype=object)
        delta = np.array([int(ctx.delta_from_anchor(p) * scale) for p in pts], dtype=object)
        inv = np.array([int(ctx.inverse_from_anchor(v) * scale) for v in ys], dtype=object)
        const = int(ctx.alpha1 * ctx.beta1 * scale)
    else:
        scale = 1
        t = np.array([float(p) for p in pts])
        y = np.array([float(v) for v in ys])
        delta = np.array([float(ctx.delta_from_anchor(p)) for p in pts])
        inv = np.array([float(ctx.inverse_from_anchor(v)) for v in ys])
        const = float(ctx.alpha1 * ctx.beta1)
    F = delta[:, None] + inv[None, :] - np.outer(t, y) + const

    idx = np.arange(n)
    # value index of f(points[k]); point index of f^{-1}(values[j])
    vidx = idx if ctx.increasing else n - 1 - idx
    pidx = vidx
    rho_idx = np.maximum(idx - 1, 0)
    zero = (idx[None, :] == vidx[:, None]) | (idx[None, :] == vidx[rho_idx][:, None])
    upper, tight = {}, {}
    for v in VARIANTS:
        x_idx = np.minimum(pidx + 1, n - 1) if v.uses_sigma else pidx
        y_idx = vidx[rho_idx] if v.uses_rho else vidx
        upper[v] = (t[x_idx][None, :] - t[:, None]) * (y[None, :] - y[y_idx][:, None])
        tight[v] = zero[x_idx[None, :], y_idx[:, None]]
    return YoungTable(tuple(pts), tuple(ys), scale, exact, ctx.increasing, F, upper, zero, tight)
