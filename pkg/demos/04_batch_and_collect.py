"""Weighted sums of rational functions, merged term collection.

decompose_batch treats a linear combination term by term and then gathers
everything by (root, pole order); x-independent weights multiply straight
through.  collect() does the same gathering for decompositions you assembled
yourself.
"""

from partfrac import (
    Constant,
    Decomposition,
    PoleTerm,
    RationalFunctionSpec,
    collect,
    decompose_batch,
    serialize,
    symbols,
)

a, b, w = symbols("a b w")

left = RationalFunctionSpec(0, ((a, 1), (b, 1)))
right = RationalFunctionSpec(0, ((a, 1),))

print("w/((x-a)(x-b)) + 1/(x-a), gathered by pole:")
d = decompose_batch([(w, left), (Constant(1), right)])
print("  ", serialize(d))
print()

print("perfect cancellation leaves nothing behind:")
d2 = decompose_batch([(Constant(1), left), (Constant(-1), left)])
print("  ", serialize(d2))
print()

print("collect() merges duplicate terms in hand-built decompositions:")
raw = Decomposition(
    roots=(a,),
    monomials=(),
    poles=(PoleTerm(0, 1, b), PoleTerm(0, 1, 2 * b), PoleTerm(0, 1, Constant(5))),
)
print("   before:", serialize(raw))
print("   after: ", serialize(collect(raw)))
