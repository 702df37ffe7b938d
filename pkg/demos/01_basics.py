"""First steps: decompose small rational functions with numeric roots.

Everything is exact: coefficients are fractions of arbitrary-precision
integers, never floats.
"""

from fractions import Fraction

from partfrac import Constant, RationalFunctionSpec, decompose, serialize

# 1/((x + 1)(x + 2)(x + 3)): three simple poles at -1, -2, -3.
spec = RationalFunctionSpec(
    numerator_degree=0,
    factors=((Constant(-1), 1), (Constant(-2), 1), (Constant(-3), 1)),
)
d = decompose(spec)

print("f(x) = 1/((x + 1)(x + 2)(x + 3))")
print("decomposed:", serialize(d))
for pole in d.poles:
    root = d.roots[pole.pole_index]
    print(f"  residue at x = {root}: {pole.coefficient}")

# A repeated root: x / ((x - 1/2)^2 (x + 3)).
spec2 = RationalFunctionSpec(
    numerator_degree=1,
    factors=((Constant(Fraction(1, 2)), 2), (Constant(-3), 1)),
)
print()
print("f(x) = x/((x - 1/2)^2 (x + 3))")
print("decomposed:", serialize(decompose(spec2)))
