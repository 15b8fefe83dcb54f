import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chronoscale import (
    DiscontinuityDetected,
    Direction,
    Interval,
    MonotonicityViolation,
    NotInScaleError,
    Point,
    TimeScale,
    build_timescale,
    inverse_eval,
    make_monotone,
    make_piecewise,
)
from chronoscale.functions import parse_function_spec, piecewise_linear


def test_make_monotone_accepts_and_rejects():
    f = make_monotone(lambda t: t * t, Direction.INCREASING, TimeScale.integers(0, 5))
    assert f.increasing
    with pytest.raises(MonotonicityViolation):
        make_monotone(lambda t: t * t, "increasing", TimeScale.integers(-3, 3))
    g = make_monotone(lambda t: -t, "decreasing", TimeScale.real(0, 1))
    assert not g.increasing


def test_direction_is_inferred():
    assert make_monotone(lambda t: -t, None, TimeScale.integers(0, 3)).direction is Direction.DECREASING


def test_mesh_catches_interior_wiggle():
    with pytest.raises(MonotonicityViolation):
        make_monotone(lambda t: t + 0.2 * math.sin(40 * t), "increasing", TimeScale.real(0, 1))


def test_jump_inside_interval_is_detected():
    step = lambda t: t + (1.0 if t > 0.3001 else 0.0)  # noqa: E731
    with pytest.raises(DiscontinuityDetected):
        make_monotone(step, "increasing", TimeScale.real(0, 1))


def test_inverse_eval_examples():
    sq = make_monotone(lambda t: t * t, None, TimeScale.integers(0, 5))
    assert inverse_eval(sq, 9) == 3
    ex = make_monotone(lambda t: 2 ** t, None, TimeScale.integers(0, 4))
    assert inverse_eval(ex, 8) == 3
    cube = make_monotone(lambda t: t ** 3, None, TimeScale.real(0, 2))
    assert inverse_eval(cube, 5) == pytest.approx(5 ** (1 / 3), abs=1e-12)


def test_inverse_eval_never_snaps():
    sq = make_monotone(lambda t: t * t, None, TimeScale.integers(0, 5))
    with pytest.raises(NotInScaleError):
        inverse_eval(sq, 10)


def test_inverse_on_mixed_decreasing_scale():
    T = build_timescale([Interval(0, 1), Point(2), Interval(3, 4)])
    f = make_monotone(lambda t: 10 - t * t, None, T)
    assert f.image.components == (Interval(-6, 1), Point(6), Interval(9, 10))
    for t in (0, 0.25, 1, 2, 3, 3.5, 4):
        assert inverse_eval(f, f(t)) == pytest.approx(t, abs=1e-12)


@given(st.lists(st.integers(-100, 100), min_size=2, max_size=15, unique=True), st.booleans())
def test_inverse_round_trip_and_monotone(values, increasing):
    pts = list(range(len(values)))
    vals = sorted(values) if increasing else sorted(values, reverse=True)
    table = dict(zip(pts, vals))
    f = make_monotone(table.__getitem__, None, TimeScale.integers(0, len(pts) - 1))
    ys = f.image.points()
    inv = [inverse_eval(f, y) for y in ys]
    assert [f(t) for t in inv] == list(ys)
    diffs = [b - a for a, b in zip(inv, inv[1:])]
    assert all((d > 0) == increasing for d in diffs)


def test_piecewise_scale_continuous():
    Z = TimeScale.integers(0, 4)
    pf = make_piecewise([0, 2, 4], [lambda t: t, lambda t: 2 * t - 2], scale=Z)
    assert pf.m == 2 and pf(3) == 4
    with pytest.raises(ValueError):
        make_piecewise([0, 2, 4], [lambda t: t, lambda t: t - 1], scale=Z)


def test_piecewise_real_jumps_bookkeeping():
    pf = make_piecewise([0, 1, 2], [lambda x: x, lambda x: x + 1], mode="real_jumps")
    assert pf.jumps == ((1, 1, 2),)
    assert pf.jump_sum() == 1


def test_piecewise_rejects_bad_knots():
    with pytest.raises(ValueError):
        make_piecewise([0, 2, 1], [lambda t: t, lambda t: t])
    with pytest.raises(ValueError):
        make_piecewise([0, 1], [lambda t: t, lambda t: t])
    with pytest.raises(ValueError):
        make_piecewise([0, 1, 2], [lambda t: t, lambda t: t], mode="real_jumps", scale=TimeScale.integers(0, 2))


@pytest.mark.parametrize(
    "spec, t, value",
    [
        ("identity", 3, 3),
        ("power 3", 2, 8),
        ("exp 3/2", 2, Fraction(9, 4)),
        ("exp base 2", 3, 8),
        ("falling 3", 5, 60),
        ("binomial 2", 5, 10),
        ("affine 2 -1", Fraction(1, 2), 0),
        ({"name": "exp", "B": 2}, -1, Fraction(1, 2)),
        ({"piecewise_linear": {"x": [0, 1, 3], "y": [0, 2, 3]}}, 2, Fraction(5, 2)),
    ],
)
def test_builtin_functions_stay_exact(spec, t, value):
    f = parse_function_spec(spec)
    assert f(t) == value and type(f(t)) in (int, Fraction)


def test_builtin_inverses():
    assert parse_function_spec("sine 2").inverse(math.sin(math.pi / 8)) == pytest.approx(0.5)
    assert parse_function_spec("power 3").inverse(-8) == pytest.approx(-2)
    pl = piecewise_linear([0, 1, 3], [5, 3, 2])
    assert pl.inverse(Fraction(5, 2)) == 2
    with pytest.raises(ValueError):
        parse_function_spec("power 1/2")
    with pytest.raises(ValueError):
        parse_function_spec("cosh 2")
