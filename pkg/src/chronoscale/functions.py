"""Built-in monotone functions and their JSON specs.

Every builtin keeps rational inputs rational wherever the mathematics allows,
so discrete rational scales stay in the exact regime. Each comes with a
closed-form inverse used on interval components.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .scalars import is_exact, normalize, parse_number


@dataclass(frozen=True)
class FunctionSpec:
    """A named function with an optional closed-form inverse."""

    label: str
    func: Callable
    inverse: Optional[Callable] = None

    def __call__(self, t):
        return self.func(t)


def falling_power(t, k: int):
    """``t (t-1) ... (t-k+1)``; the empty product for ``k = 0``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = 1
    for i in range(k):
        out = out * (t - i)
    return out


def _root(y, k: int) -> float:
    y = float(y)
    r = abs(y) ** (1.0 / k)
    return math.copysign(r, y) if k % 2 else r


def identity() -> FunctionSpec:
    return FunctionSpec("identity", lambda t: t, lambda y: y)


def power(k: int) -> FunctionSpec:
    if k < 1:
        raise ValueError("power needs k >= 1")
    return FunctionSpec(f"power {k}", lambda t: t ** k, lambda y: _root(y, k))


def exponential(base) -> FunctionSpec:
    if not base > 0 or base == 1:
        raise ValueError("exponential base must be positive and not 1")
    log_b = math.log(base)

    def func(t):
        if isinstance(t, int) and is_exact(base):
            return normalize(Fraction(base) ** t)
        return float(base) ** float(t)

    return FunctionSpec(f"exp {base}", func, lambda y: math.log(y) / log_b)


def falling(k: int) -> FunctionSpec:
    if k < 1:
        raise ValueError("falling needs k >= 1")
    return FunctionSpec(f"falling {k}", lambda t: falling_power(t, k))


def binomial(k: int) -> FunctionSpec:
    if k < 1:
        raise ValueError("binomial needs k >= 1")
    fact = math.factorial(k)

    def func(t):
        num = falling_power(t, k)
        return normalize(Fraction(num) / fact) if is_exact(num) else num / fact

    return FunctionSpec(f"binomial {k}", func)


def sine(k: int) -> FunctionSpec:
    """``sin(pi t / (2k))``, increasing on ``[-k, k]``."""
    if k < 1:
        raise ValueError("sine needs k >= 1")
    c = math.pi / (2 * k)
    return FunctionSpec(
        f"sine {k}",
        lambda t: math.sin(c * float(t)),
        lambda y: math.asin(max(-1.0, min(1.0, float(y)))) / c,
    )


def affine(p, q) -> FunctionSpec:
    if p == 0:
        raise ValueError("affine slope must be nonzero")

    def func(t):
        return normalize(p * t + q) if is_exact(t) and is_exact(p) and is_exact(q) else float(p) * float(t) + float(q)

    def inverse(y):
        if is_exact(y) and is_exact(p) and is_exact(q):
            return normalize(Fraction(y - q) / p)
        return (float(y) - float(q)) / float(p)

    return FunctionSpec(f"affine {p} {q}", func, inverse)


def piecewise_linear(xs, ys) -> FunctionSpec:
    """Linear interpolation through ``(xs[i], ys[i])``; rational in, rational out."""
    xs, ys = list(xs), list(ys)
    if len(xs) != len(ys) or len(xs) < 2:
        raise ValueError("piecewise_linear needs matching x and y lists of length >= 2")
    if any(not x0 < x1 for x0, x1 in zip(xs, xs[1:])):
        raise ValueError("piecewise_linear x values must increase")
    steps = [y1 - y0 for y0, y1 in zip(ys, ys[1:])]
    if not (all(s > 0 for s in steps) or all(s < 0 for s in steps)):
        raise ValueError("piecewise_linear values must be strictly monotone")

    def interp(u, src, dst):
        ascending = src[0] < src[-1]
        key = u if ascending else -u
        keys = src if ascending else [-s for s in src]
        i = min(max(bisect.bisect_right(keys, key) - 1, 0), len(src) - 2)
        x0, x1, y0, y1 = src[i], src[i + 1], dst[i], dst[i + 1]
        if all(is_exact(v) for v in (u, x0, x1, y0, y1)):
            return normalize(y0 + Fraction(u - x0) * (y1 - y0) / (x1 - x0))
        return float(y0) + (float(u) - float(x0)) * (float(y1) - float(y0)) / (float(x1) - float(x0))

    return FunctionSpec(
        "piecewise_linear",
        lambda t: interp(t, xs, ys),
        lambda y: interp(y, ys, xs),
    )


_NAMED = {
    "identity": (identity, 0),
    "power": (power, 1),
    "exp": (exponential, 1),
    "falling": (falling, 1),
    "binomial": (binomial, 1),
    "sine": (sine, 1),
    "affine": (affine, 2),
}


def _int_param(value, name):
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValueError(f"{name} needs an integer parameter, got {value!r}")
    return value


def parse_function_spec(spec) -> FunctionSpec:
    """Build a :class:`FunctionSpec` from its JSON form.

    Accepted forms: ``"identity"``, ``"power 2"``, ``"exp 3/2"``,
    ``"exp base 2"``, ``"falling 3"``, ``"binomial 2"``, ``"sine 4"``, ``"affine 2 -1"``;
    the dict ``{"name": "power", "k": 2}`` (or ``"B"``, ``"p"``, ``"q"``);
    and ``{"piecewise_linear": {"x": [...], "y": [...]}}``.
    """
    if isinstance(spec, str):
        name, *args = spec.split()
        if name == "exp" and args[:1] == ["base"]:
            args = args[1:]
        if name not in _NAMED:
            raise ValueError(f"unknown function {name!r}")
        make, arity = _NAMED[name]
        if len(args) != arity:
            raise ValueError(f"{name} takes {arity} parameter(s)")
        params = [parse_number(a) for a in args]
    elif isinstance(spec, dict) and "piecewise_linear" in spec:
        body = spec["piecewise_linear"]
        return piecewise_linear([parse_number(x) for x in body["x"]], [parse_number(y) for y in body["y"]])
    elif isinstance(spec, dict) and "name" in spec:
        name = spec["name"]
        if name not in _NAMED:
            raise ValueError(f"unknown function {name!r}")
        make, arity = _NAMED[name]
        keys = {"identity": [], "power": ["k"], "exp": ["B"], "falling": ["k"],
                "binomial": ["k"], "sine": ["k"], "affine": ["p", "q"]}[name]
        missing = [k for k in keys if k not in spec]
        if missing:
            raise ValueError(f"{name} is missing {missing}")
        params = [parse_number(spec[k]) for k in keys]
    else:
        raise ValueError(f"bad function spec {spec!r}")
    if name in ("power", "falling", "binomial", "sine"):
        params = [_int_param(params[0], name)]
    return make(*params)
