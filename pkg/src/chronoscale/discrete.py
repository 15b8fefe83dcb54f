"""Integer time scales: direct-summation bounds and the worked examples.

Everything here is written with plain sums over integer ranges rather than
through the general integrals, so it doubles as an independent check on the
general machinery.
"""
from __future__ import annotations

import enum
import math
from fractions import Fraction
from typing import NamedTuple

from .functions import falling_power
from .monotone import MonotoneFn
from .scalars import APPROX, EXACT, ScalarMode, normalize
from .young import BoundReport, Variant

DEFAULT_SPAN = 64
LEGENDRE_SPAN = 8


def falling_factorial(t: int, k: int) -> int:
    """``t (t-1) ... (t-k+1)``, with ``falling_factorial(t, 0) == 1``."""
    if not isinstance(k, int) or k < 0:
        raise ValueError("k must be a nonnegative integer")
    return falling_power(t, k)


def _integer_window(f: MonotoneFn) -> tuple:
    T = f.scale
    if not T.is_discrete:
        raise ValueError("needs a window of consecutive integers")
    pts = T.points()
    if any(not isinstance(p, int) for p in pts) or pts[-1] - pts[0] != len(pts) - 1:
        raise ValueError("needs a window of consecutive integers")
    return pts[0], pts[-1]


def _sum_range(f, lo: int, hi: int):
    """``sum_{t=lo}^{hi-1} f(t)``, negated when ``hi < lo``."""
    if hi < lo:
        return -_sum_range(f, hi, lo)
    return sum((f(t) for t in range(lo, hi)), 0)


def discrete_sandwich(f: MonotoneFn, a: int, a_hat: int, b, b_hat) -> BoundReport:
    """Summation form of the two-sided bound on an integer window::

        (f^{-1}(b_hat) - a_hat)(f(a_hat - 1) - b_hat)
            <= sum_{t=a_hat}^{a-1} f(t) + sum_{y in (b_hat, b]} f^{-1}(y) nu(y) - ab + a_hat*b_hat
            <= (f^{-1}(b) - a)(b - f(a - 1))

    ``nu(y)`` is the backward gap of the image. At the left end of the window
    ``a - 1`` is read as the window minimum.
    """
    lo, hi = _integer_window(f)
    if not f.increasing:
        raise ValueError("discrete_sandwich needs an increasing function")
    for t in (a, a_hat):
        if not (isinstance(t, int) and lo <= t <= hi):
            raise ValueError(f"{t!r} is not an integer of the window [{lo}, {hi}]")
    values = [f(t) for t in range(lo, hi + 1)]
    where = {v: lo + i for i, v in enumerate(values)}
    for y in (b, b_hat):
        if y not in where:
            raise ValueError(f"{y!r} is not a value of f on the window")

    def inv(y):
        return where[y]

    def prev(t):
        return max(t - 1, lo)

    image_sum = 0
    sign, top, bottom = (1, b, b_hat) if b >= b_hat else (-1, b_hat, b)
    for i in range(1, len(values)):
        y = values[i]
        if bottom < y <= top:
            image_sum += (y - values[i - 1]) * inv(y)
    middle = _sum_range(f, a_hat, a) + sign * image_sum - a * b + a_hat * b_hat
    upper = (inv(b) - a) * (b - f(prev(a)))
    lower = (inv(b_hat) - a_hat) * (f(prev(a_hat)) - b_hat)

    def zero(x, y):
        return y in (f(prev(x)), f(x))

    eq_upper = zero(a_hat, b_hat) and zero(inv(b), f(prev(a)))
    eq_lower = zero(a, b) and zero(inv(b_hat), f(prev(a_hat)))
    exact = f.is_exact
    return BoundReport(
        lower, middle, upper, eq_lower, eq_upper,
        variant=Variant.RHO_RHO,
        witnesses={"a": a, "a_hat": a_hat, "b": b, "b_hat": b_hat},
        regime=EXACT if exact else APPROX,
    )


def discrete_inverse_free(f, a: int, a_hat: int, alpha: int, alpha_hat: int, exact: bool = True) -> BoundReport:
    """Inverse-free summation bound for an increasing ``f`` on the integers::

        (alpha_hat - a_hat)[f(a_hat - 1) - f(alpha_hat)]
            <= sum_{a_hat}^{a-1} f - sum_{alpha_hat}^{alpha-1} f
               + (alpha - a) f(alpha) + (a_hat - alpha_hat) f(alpha_hat)
            <= (alpha - a)[f(alpha) - f(a - 1)]

    ``f`` is any callable increasing on the integers involved. Both bounds
    are attained exactly when ``alpha_hat`` is ``a_hat - 1`` or ``a_hat`` and
    ``alpha`` is ``a - 1`` or ``a``.
    """
    middle = (
        _sum_range(f, a_hat, a)
        - _sum_range(f, alpha_hat, alpha)
        + (alpha - a) * f(alpha)
        + (a_hat - alpha_hat) * f(alpha_hat)
    )
    lower = (alpha_hat - a_hat) * (f(a_hat - 1) - f(alpha_hat))
    upper = (alpha - a) * (f(alpha) - f(a - 1))
    equality = alpha_hat in (a_hat - 1, a_hat) and alpha in (a - 1, a)
    return BoundReport(
        lower, middle, upper, equality, equality,
        witnesses={"a": a, "a_hat": a_hat, "alpha": alpha, "alpha_hat": alpha_hat},
        regime=EXACT if exact else APPROX,
    )


# worked examples -------------------------------------------------------------


class ExampleName(enum.Enum):
    FALLING_FACTORIAL = "FallingFactorial"
    GEOMETRIC_B = "GeometricB"
    LEGENDRE_B = "LegendreB"
    SINE_K = "SineK"
    BINOMIAL_K = "BinomialK"


class ExampleRow(NamedTuple):
    instance: dict
    lhs: object
    mid: object
    rhs: object
    equality: bool
    regime: ScalarMode

    @property
    def holds(self) -> bool:
        return self.regime.leq(self.lhs, self.mid) and self.regime.leq(self.mid, self.rhs)


APPROX_EXAMPLES = ScalarMode(False, 1e-9)


def _check_k(params):
    k = params.get("k")
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise ValueError("k must be a positive integer")
    return k


def _check_base(params):
    B = params.get("B")
    if B is None or isinstance(B, bool) or not B > 1:
        raise ValueError("B must be a real number greater than 1")
    return B


def _pairs(lo: int, hi: int):
    for alpha in range(lo, hi + 1):
        for a in range(alpha, hi + 1):
            yield alpha, a


def _range(params, domain_min, span):
    """``params["range"]`` or ``[domain_min, domain_min + span]``; 0 stands in
    for the left end of examples defined on all of the integers."""
    start = 0 if domain_min is None else domain_min
    lo, hi = params.get("range", (start, start + span))
    if domain_min is not None and lo < domain_min:
        raise ValueError(f"range starts below {domain_min}")
    if hi < lo:
        raise ValueError("empty range")
    return lo, hi


def _falling_rows(params):
    k = _check_k(params)
    lo, hi = _range(params, k - 1, DEFAULT_SPAN)
    for alpha, a in _pairs(lo, hi):
        yield ExampleRow(
            {"k": k, "alpha": alpha, "a": a},
            (a - alpha) * falling_power(alpha, k),
            Fraction(falling_power(a, k + 1) - falling_power(alpha, k + 1), k + 1),
            (a - alpha) * falling_power(a - 1, k),
            alpha in (a - 1, a),
            EXACT,
        )


def _geometric_rows(params):
    B = _check_base(params)
    lo, hi = _range(params, None, DEFAULT_SPAN)
    exact = isinstance(B, (int, Fraction))
    B = Fraction(B) if exact else float(B)
    for alpha, a in _pairs(lo, hi):
        if a == alpha:
            lhs = mid = rhs = 0
        else:
            lhs, rhs = B ** alpha, B ** (a - 1)
            mid = (B ** a - B ** alpha) / ((a - alpha) * (B - 1))
        yield ExampleRow(
            {"B": B, "alpha": alpha, "a": a}, lhs, mid, rhs,
            alpha in (a - 1, a), EXACT if exact else APPROX_EXAMPLES,
        )


def _legendre_rows(params):
    B = float(_check_base(params))
    lo, hi = _range(params, None, LEGENDRE_SPAN)
    c = 1.0 / (B - 1.0)
    for alpha in range(lo, hi + 1):
        for i in range(lo, hi + 1):
            beta = B ** i
            for a in range(lo, hi + 1):
                for j in range(lo, hi + 1):
                    b = B ** j
                    mid = (B ** a - B ** alpha) * c + b * j - b * c + beta * (alpha + c - i) - a * b
                    lhs = (i - alpha) * (B ** (alpha - 1) - beta)
                    rhs = (j - a) * (b - B ** (a - 1))
                    equality = i in (alpha - 1, alpha) and j in (a - 1, a)
                    yield ExampleRow(
                        {"B": B, "alpha": alpha, "beta_exp": i, "a": a, "b_exp": j},
                        lhs, mid, rhs, equality, APPROX_EXAMPLES,
                    )


def _sine_rows(params):
    k = _check_k(params)
    lo, hi = _range(params, -k, 2 * k)
    if hi > k:
        raise ValueError(f"range must stay inside [-{k}, {k}]")
    q = math.pi / (4 * k)
    for alpha, a in _pairs(lo, hi):
        if a == alpha:
            lhs = mid = rhs = 0.0
        else:
            lhs = math.sin(2 * q * alpha)
            mid = (math.cos((2 * alpha - 1) * q) - math.cos((2 * a - 1) * q)) / (2 * (a - alpha) * math.sin(q))
            rhs = math.sin(2 * q * (a - 1))
        yield ExampleRow({"k": k, "alpha": alpha, "a": a}, lhs, mid, rhs, alpha in (a - 1, a), APPROX_EXAMPLES)


def _binomial_rows(params):
    k = _check_k(params)
    lo, hi = _range(params, k, DEFAULT_SPAN)
    fact = math.factorial(k)

    def C(t):
        return Fraction(falling_power(t, k), fact)

    for alpha, a in _pairs(lo, hi):
        if a == alpha:
            lhs = mid = rhs = 0
        else:
            lhs, rhs = C(alpha), C(a - 1)
            mid = ((a - k) * C(a) - (alpha - k) * C(alpha)) / ((a - alpha) * (k + 1))
        yield ExampleRow({"k": k, "alpha": alpha, "a": a}, lhs, mid, rhs, alpha in (a - 1, a), EXACT)


_SUITES = {
    ExampleName.FALLING_FACTORIAL: _falling_rows,
    ExampleName.GEOMETRIC_B: _geometric_rows,
    ExampleName.LEGENDRE_B: _legendre_rows,
    ExampleName.SINE_K: _sine_rows,
    ExampleName.BINOMIAL_K: _binomial_rows,
}


def example_suite(name, params: dict) -> list:
    """Evaluate one worked example's three-term chain over its range.

    ``params`` carries ``k`` or ``B`` and optionally ``range = (lo, hi)``,
    the integer interval over which ``alpha <= a`` (and, for ``LegendreB``,
    the exponents of ``beta`` and ``b``) run. Chains divided by ``a - alpha``
    are reported undivided, hence all zero, at ``a == alpha``.
    """
    name = ExampleName(name.value if isinstance(name, ExampleName) else name)
    rows = []
    for row in _SUITES[name](dict(params)):
        if row.regime.exact:
            row = row._replace(lhs=normalize(Fraction(row.lhs)), mid=normalize(Fraction(row.mid)),
                               rhs=normalize(Fraction(row.rhs)))
        rows.append(row)
    return rows
