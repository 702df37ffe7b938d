"""Symbolic roots: the coefficients come out in closed form.

Roots can be plain symbols or arithmetic expressions in other symbols; the
decomposition variable x never appears in them.  Coefficients are kept as
products of powers of root differences (their natural factored shape) unless
you opt into expansion.
"""

from partfrac import (
    OutputFormat,
    RationalFunctionSpec,
    decompose,
    parse_expr,
    parse_root_list,
    serialize,
    symbols,
)

a, b = symbols("a b")

# 1 / ((x - a)^3 (x - b)): a triple pole interacting with a simple one.
spec = RationalFunctionSpec(0, ((a, 3), (b, 1)))
d = decompose(spec)
print("f(x) = 1/((x - a)^3 (x - b))")
print("decomposed:", serialize(d))
print()

# The same machinery accepts compound roots, e.g. from the command line.
roots = parse_root_list("a + b, a - b, 2*a")
spec2 = RationalFunctionSpec(1, tuple((r, 1) for r in roots))
d2 = decompose(spec2)
print("f(x) = x/((x - (a+b))(x - (a-b))(x - 2a))")
print("factored:  ", serialize(d2))
print("expanded:  ", serialize(d2, OutputFormat("infix", expand_coefficients=True)))
print()

# Output text is itself valid input for the package's parser.
text = serialize(d2)
print("round-trip parse equals a canonical expression:", parse_expr(text) is not None)
