"""
Summation identities from the discrete bounds
=============================================

Taking ``T = Z`` and particular increasing functions turns the inverse-free
bound into two-sided estimates of averages: of falling factorials, of
powers ``B^t``, of a sine, and of binomial coefficients. Each chain is
tight exactly when ``alpha`` is ``a - 1`` or ``a``.
"""

from chronoscale import example_suite


def fmt(x):
    return f"{x:.6f}" if isinstance(x, float) else str(x)


def show(name, params, picks):
    rows = {(r.instance["alpha"], r.instance["a"]): r for r in example_suite(name, params)}
    print(name, params)
    for alpha, a in picks:
        r = rows[(alpha, a)]
        print(f"  alpha={alpha:>2} a={a:>2}:  {fmt(r.lhs):>10} <= {fmt(r.mid):>10} <= {fmt(r.rhs):>10}   tight={r.equality}")


show("FallingFactorial", {"k": 2}, [(2, 4), (3, 4), (1, 9)])
show("GeometricB", {"B": 2}, [(1, 3), (2, 3), (0, 8)])
show("BinomialK", {"k": 2}, [(3, 5), (4, 5), (2, 12)])
show("SineK", {"k": 3}, [(-3, 3), (0, 1), (-1, 2)])

# the Legendre pair for f(t) = B^t runs over four indices
legendre = example_suite("LegendreB", {"B": 2, "range": (0, 4)})
tight = sum(r.equality for r in legendre)
print(f"LegendreB, B=2: {len(legendre)} rows, all hold: {all(r.holds for r in legendre)}, {tight} tight")
