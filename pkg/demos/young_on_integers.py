"""
Young's inequality on the integers
==================================

On the reals, ``F(a, b) = int_0^a f + int_0^b f^{-1} - ab`` is nonnegative
and vanishes only on the graph ``b = f(a)``. On a time scale the integrals
become sums, and the zero set thickens: it is the "staircase"
``b in {f(rho(a)), f(a)}``.
"""

from chronoscale import TimeScale, YoungContext, make_monotone, young_check

# f(t) = t on the integer window [0, 8]
ctx = YoungContext(make_monotone(lambda t: t, None, TimeScale.integers(0, 8)))

# F(a, b) = (a - b)(a - b - 1) / 2 here; print the table with the zero set marked
print("F(a, b) on Z, rows a = 0..8, columns b = 0..8 (* marks F = 0)")
for a in range(9):
    cells = []
    for b in range(9):
        value, holds, equality = young_check(ctx, a, b)
        assert holds
        cells.append(f"{str(value) + ('*' if equality else ''):>4}")
    print(f"a={a}  " + "".join(cells))

# the same function on the reals has zeros only on the diagonal
real = YoungContext(make_monotone(lambda t: t, None, TimeScale.real(0, 8)))
value, _, _ = young_check(real, 3.0, 2.0)
print(f"\non R, F(3, 2) = {value:.12f}; on Z it is 0, since 2 = f(rho(3))")
