"""Independent reference computations used by the tests.

Nothing here calls into chronoscale: every value is recomputed from plain
lists, closed forms, or brute-force meshes.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np


def falling(t, n):
    out = 1
    for i in range(n):
        out *= t - i
    return out


class DiscreteOracle:
    """Brute-force Young functional on a finite point set.

    ``points`` ascending, ``values`` the function values on them (strictly
    increasing or strictly decreasing). Integrals are rebuilt from scratch on
    every call.
    """

    def __init__(self, points, values):
        self.points = list(points)
        self.values = list(values)
        self.increasing = self.values[-1] > self.values[0] if len(values) > 1 else True
        self.image = sorted(self.values)
        self.inv = dict(zip(self.values, self.points))
        self.f = dict(zip(self.points, self.values))

    def prev(self, t):
        i = self.points.index(t)
        return self.points[max(i - 1, 0)]

    def next(self, t):
        i = self.points.index(t)
        return self.points[min(i + 1, len(self.points) - 1)]

    def delta_sum(self, lo, hi):
        """sum over t in [lo, hi) of mu(t) f(t), signed."""
        if hi < lo:
            return -self.delta_sum(hi, lo)
        total = 0
        for t, nxt in zip(self.points, self.points[1:]):
            if lo <= t < hi:
                total += (nxt - t) * self.f[t]
        return total

    def inverse_sum(self, lo, hi):
        """Image-side integral of f^{-1}: backward weights if increasing, forward if not."""
        if hi < lo:
            return -self.inverse_sum(hi, lo)
        total = 0
        ys = self.image
        for k in range(len(ys) - 1):
            y0, y1 = ys[k], ys[k + 1]
            if self.increasing and lo < y1 <= hi:
                total += (y1 - y0) * self.inv[y1]
            if not self.increasing and lo <= y0 < hi:
                total += (y1 - y0) * self.inv[y0]
        return total

    def F(self, a, b):
        a1, b1 = self.points[0], self.values[0]
        return self.delta_sum(a1, a) + self.inverse_sum(b1, b) - a * b + a1 * b1

    def zero_set(self, a, b):
        return b in (self.f[self.prev(a)], self.f[a])


def trapezoid_refine(pieces, g, mesh=1e-4, vectorized=False):
    """Refine-and-sum for a mixed scale given as ``[(lo, hi), ...]`` intervals
    plus scattered jumps.

    ``pieces`` is a list of ``("interval", lo, hi)`` and ``("jump", t, weight)``
    entries. Interval parts are replaced by a uniform mesh of width about
    ``mesh``; the forward and backward mesh sums are averaged (trapezoid).
    With ``vectorized`` set, ``g`` is called once per interval on a numpy
    array of mesh points.
    """
    total = 0.0
    for kind, x, y in pieces:
        if kind == "jump":
            total += float(y) * float(g(x))
            continue
        lo, hi = float(x), float(y)
        n = max(1, math.ceil((hi - lo) / mesh))
        h = (hi - lo) / n
        if vectorized:
            vals = list(np.asarray(g(lo + h * np.arange(n + 1)), dtype=float))
        else:
            vals = [float(g(lo + i * h)) for i in range(n + 1)]
        total += h * (math.fsum(vals) - 0.5 * (vals[0] + vals[-1]))
    return total


def power_young_closed_form(p, a, b):
    """F(a, b) on [0, inf) for f(t) = t**(p-1): a^p/p + b^q/q - ab."""
    q = p / (p - 1)
    return a ** p / p + b ** q / q - a * b


def brute_zero(values_by_point, points, a, b):
    i = points.index(a)
    rho = points[max(i - 1, 0)]
    return b in (values_by_point[rho], values_by_point[a])


def frac_range(lo, hi):
    return [Fraction(k) for k in range(lo, hi + 1)]
