"""Delta and nabla integration on bounded time scales, plus the monomials h_n.

Scattered points contribute graininess-weighted values; interval components
are integrated with a deterministic adaptive Simpson rule.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .scalars import is_exact
from .timescale import TimeScale

QUAD_TOL = 1e-11
QUAD_BUDGET = 400_000
MAX_MONOMIAL_DEGREE = 12


class QuadratureError(ArithmeticError):
    """Adaptive quadrature ran out of its evaluation budget."""


def _total(parts):
    if all(is_exact(p) for p in parts):
        return sum(parts, 0)
    return math.fsum(float(p) for p in parts)


def adaptive_simpson(g: Callable, lo, hi, tol: float = QUAD_TOL, budget: int = QUAD_BUDGET) -> float:
    """Integrate ``g`` over ``[lo, hi]`` to absolute tolerance ``tol``.

    Subdivision order is fixed, so results are reproducible bit for bit.
    Panels that shrink to floating-point resolution are accepted as they are.
    """
    a, b = float(lo), float(hi)
    if a == b:
        return 0.0
    if b < a:
        return -adaptive_simpson(g, b, a, tol, budget)
    m = 0.5 * (a + b)
    fa, fm, fb = float(g(a)), float(g(m)), float(g(b))
    evals = 3
    parts = []
    stack = [(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 0)]
    while stack:
        a, b, fa, fm, fb, whole, eps, depth = stack.pop()
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = float(g(lm)), float(g(rm))
        evals += 2
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        resolved = not (a < lm < m < rm < b)
        if resolved or (depth >= 3 and abs(delta) <= 15.0 * eps):
            parts.append(left + right + delta / 15.0)
            continue
        if evals > budget:
            raise QuadratureError(
                f"adaptive Simpson exceeded {budget} evaluations near [{a}, {b}]"
            )
        stack.append((m, b, fm, frm, fb, right, 0.5 * eps, depth + 1))
        stack.append((a, m, fa, flm, fm, left, 0.5 * eps, depth + 1))
    return math.fsum(parts)


def delta_integral(T: TimeScale, g: Callable, a, b, tol: float = QUAD_TOL):
    """Delta integral of ``g`` over ``[a, b)`` on ``T``.

    Right-scattered points ``t`` in ``[a, b)`` contribute ``mu(t) g(t)``;
    dense parts contribute their ordinary integral. ``a > b`` gives the
    negated integral over ``[b, a)``. Exact when ``T`` is discrete and ``g``
    returns rationals.
    """
    ia, a = T.locate(a)
    ib, b = T.locate(b)
    if a == b:
        return 0
    if b < a:
        return -delta_integral(T, g, b, a, tol)
    comps = T.components
    n_dense = sum(1 for c in comps[ia:ib + 1] if c.dense) or 1
    parts = []
    for k in range(ia, ib + 1):
        c = comps[k]
        if c.dense:
            lo, hi = max(c.lo, a), min(c.hi, b)
            if lo < hi:
                parts.append(adaptive_simpson(g, lo, hi, tol / n_dense))
        if a <= c.hi < b:
            parts.append((comps[k + 1].lo - c.hi) * g(c.hi))
    return _total(parts)


def nabla_integral(T: TimeScale, g: Callable, a, b, tol: float = QUAD_TOL):
    """Nabla integral of ``g`` over ``(a, b]`` on ``T``.

    Left-scattered points ``y`` in ``(a, b]`` contribute ``nu(y) g(y)``.
    """
    ia, a = T.locate(a)
    ib, b = T.locate(b)
    if a == b:
        return 0
    if b < a:
        return -nabla_integral(T, g, b, a, tol)
    comps = T.components
    n_dense = sum(1 for c in comps[ia:ib + 1] if c.dense) or 1
    parts = []
    for k in range(ia, ib + 1):
        c = comps[k]
        if a < c.lo <= b:
            parts.append((c.lo - comps[k - 1].hi) * g(c.lo))
        if c.dense:
            lo, hi = max(c.lo, a), min(c.hi, b)
            if lo < hi:
                parts.append(adaptive_simpson(g, lo, hi, tol / n_dense))
    return _total(parts)


# generalized monomials --------------------------------------------------------
#
# h_k(., s) is a polynomial on every interval component and a single value on
# every isolated point, so the recursion h_{k+1}(t, s) = int_s^t h_k(tau, s)
# delta-tau is carried out on coefficient lists: exact antiderivatives inside
# intervals, graininess steps across gaps.


def _div(c, n: int):
    return Fraction(c, n) if isinstance(c, int) else c / n


def _antiderivative(coeffs):
    return [0] + [_div(c, i + 1) for i, c in enumerate(coeffs)]


def _horner(coeffs, t):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _shifted(coeffs, value_at, t0):
    """``coeffs`` plus a constant so the polynomial equals ``value_at`` at ``t0``."""
    out = list(coeffs)
    out[0] = out[0] + value_at - _horner(coeffs, t0)
    return out


@lru_cache(maxsize=256)
def _monomial_pieces(T: TimeScale, n: int, s) -> tuple:
    comps = T.components
    i_s, s = T.locate(s)
    level = [[1] for _ in comps]
    for _ in range(n):
        nxt = [None] * len(comps)
        home = comps[i_s]
        nxt[i_s] = _shifted(_antiderivative(level[i_s]), 0, s) if home.dense else [0]
        for j in range(i_s + 1, len(comps)):
            prev, c = comps[j - 1], comps[j]
            r = prev.hi
            start = _horner(nxt[j - 1], r) + (c.lo - r) * _horner(level[j - 1], r)
            nxt[j] = _shifted(_antiderivative(level[j]), start, c.lo) if c.dense else [start]
        for j in range(i_s - 1, -1, -1):
            c, after = comps[j], comps[j + 1]
            r = c.hi
            at_r = _horner(nxt[j + 1], after.lo) - (after.lo - r) * _horner(level[j], r)
            nxt[j] = _shifted(_antiderivative(level[j]), at_r, r) if c.dense else [at_r]
        level = nxt
    return tuple(tuple(p) for p in level)


def h_n(T: TimeScale, n: int, t, s):
    """Generalized monomial ``h_n(t, s)`` on ``T``.

    ``h_0 = 1`` and ``h_{k+1}(t, s)`` is the delta integral of ``h_k(., s)``
    from ``s`` to ``t``. On ``T = Z`` this is ``(t-s)`` falling ``n`` over
    ``n!``; on an interval it is ``(t-s)**n / n!``.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError("n must be a nonnegative integer")
    if n > MAX_MONOMIAL_DEGREE:
        raise ValueError(f"n is capped at {MAX_MONOMIAL_DEGREE}")
    k, t = T.locate(t)
    s = T.snap(s)
    if n == 0:
        return 1
    pieces = _monomial_pieces(T, n, s)
    return _horner(list(pieces[k]), t)
