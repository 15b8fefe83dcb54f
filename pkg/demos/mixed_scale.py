"""
A scale with both intervals and isolated points
===============================================

On ``T = [0, 1] u {2, 3} u [4, 5]`` the delta integral is an ordinary
integral over the intervals plus a graininess-weighted sum at the
right-scattered points 1, 2 and 3. The image scale inherits the same
structure, so the inverse integral mixes both as well.
"""

from chronoscale import (
    Interval,
    Point,
    YoungContext,
    build_timescale,
    delta_integral,
    make_monotone,
    nabla_integral,
    phi_identity_check,
    sandwich_bounds,
)

T = build_timescale([Interval(0, 1), Point(2), Point(3), Interval(4, 5)])
f = make_monotone(lambda t: t ** 3 + t, None, T)
print("image scale:", f.image.to_json())

# int_0^5 f delta = int_0^1 f + f(1) + f(2) + f(3) + int_4^5 f
print(f"delta integral of f over [0, 5): {delta_integral(T, f, 0, 5):.10f}")
print(f"nabla integral of f over (0, 5]: {nabla_integral(T, f, 0, 5):.10f}")

ctx = YoungContext(f)
for a in (0.5, 2, 4.5):
    print(f"F(a, f(a)) at a={a}: {phi_identity_check(ctx, a):+.2e}")

rep = sandwich_bounds(ctx, 4.5, 0.5, f(2), f(1))
print(f"\nbounds: {rep.lower:.6f} <= {rep.middle:.6f} <= {rep.upper:.6f}  holds={rep.holds}")
