"""
Two-sided bounds and the four bound variants
============================================

For ``a, a_hat`` in the scale and ``b, b_hat`` in the image, the difference
``F(a, b) - F(a_hat, b_hat)`` sits between a lower and an upper product
bound. The upper bound comes in four variants depending on whether the
witnesses use ``sigma`` on the domain side and ``rho`` on the image side.
"""

from fractions import Fraction

from chronoscale import TimeScale, YoungContext, best_upper_bound, make_monotone, sandwich_all

# an irregular discrete scale with rational points and a convex-ish f
points = [Fraction(0), Fraction(1, 2), Fraction(3, 2), Fraction(2), Fraction(7, 2), Fraction(5)]
values = [1, 2, 4, 7, 11, 16]
f = make_monotone(dict(zip(points, values)).__getitem__, None, TimeScale.from_points(points))
ctx = YoungContext(f)

a, a_hat, b, b_hat = Fraction(7, 2), Fraction(1, 2), 16, 2
print(f"a={a}, a_hat={a_hat}, b={b}, b_hat={b_hat}")
for rep in sandwich_all(ctx, a, a_hat, b, b_hat):
    print(f"  {rep.variant.value:10s} {str(rep.lower):>6} <= {str(rep.middle):>6} <= {str(rep.upper):>6}"
          f"   equality lower={rep.equality_lower} upper={rep.equality_upper}")

variant, value = best_upper_bound(ctx, a, a_hat, b, b_hat)
print(f"tightest upper bound: {variant.value} = {value}")

# on the staircase both bounds collapse onto the middle value
rep = sandwich_all(ctx, Fraction(2), Fraction(1, 2), 4, 1)[0]
print(f"\nb = f(rho(a)), b_hat = f(rho(a_hat)): {rep.lower} = {rep.middle} = {rep.upper}")
