"""
Piecewise-monotone functions
============================

When ``f`` changes direction at knots ``a_1 < ... < a_{m+1}``, the inverse
integral is taken piece by piece along the graph and only the two end
pieces contribute slack. On the reals a piecewise function may also jump;
the jumps enter through ``sum a_i (f_i(a_i) - f_{i-1}(a_i))``.
"""

from chronoscale import TimeScale, make_piecewise, piecewise_real_sandwich, piecewise_sandwich

# a tent on Z: up on [0, 3], down on [3, 6]
Z = TimeScale.integers(0, 6)
tent = make_piecewise([0, 3, 6], [lambda t: t, lambda t: 6 - t], scale=Z)
print("tent on Z (increasing then decreasing: K_last - K_first <= I <= 0)")
for b_first, b_last in [(0, 0), (1, 0), (0, 2), (2, 3)]:
    rep = piecewise_sandwich(tent, b_first, b_last)
    print(f"  b_first={b_first} b_last={b_last}:  {rep.lower} <= {rep.middle} <= {rep.upper}   holds={rep.holds}")

# two increasing pieces on R with a jump of 1 at x = 1
steps = make_piecewise(
    [0, 1, 2], [lambda x: x, lambda x: x + 1], mode="real_jumps",
    inverses=[lambda y: y, lambda y: y - 1],
)
print("\nstep on R (both pieces increasing: -K_first <= F <= K_last)")
for b_last in (3.0, 2.5, 2.0):
    rep = piecewise_real_sandwich(steps, 0.0, b_last)
    print(f"  b_last={b_last}:  {rep.lower:+.4f} <= {rep.middle:+.4f} <= {rep.upper:+.4f}")
