"""Improper inputs: numerator degree >= denominator degree.

The engine rewrites x^l as x^(l-m+1) * x^(m-1), decomposes the proper part,
and finishes each pole with a symbolic polynomial division.  The result is a
quotient polynomial plus proper pole terms.
"""

from partfrac import (
    Constant,
    RationalFunctionSpec,
    decompose,
    poly_div,
    serialize,
    symbols,
)

(a,) = symbols("a")

# x^3 / (x - a): plain long division, done symbolically.
spec = RationalFunctionSpec(3, ((a, 1),))
d = decompose(spec)
print("x^3/(x - a)      =", serialize(d))

# x^5 / ((x - 1)(x - 2)^2): numeric roots fold the quotient to plain numbers.
spec2 = RationalFunctionSpec(5, ((Constant(1), 1), (Constant(2), 2)))
d2 = decompose(spec2)
print("x^5/((x-1)(x-2)^2) =", serialize(d2))
print("quotient terms:", [(m.degree, str(m.coefficient)) for m in d2.monomials])

# poly_div is exposed directly: coefficient * x^p / (x - root)^q.
fragment = poly_div(Constant(1), 4, 2, a)
print()
print("x^4/(x - a)^2    =", serialize(fragment))
