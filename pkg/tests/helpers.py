"""Shared builders for randomized test inputs."""

from __future__ import annotations

import random
from fractions import Fraction

from partfrac import Constant, RationalFunctionSpec, Symbol


def distinct_rationals(rng: random.Random, n: int) -> list[Fraction]:
    values: set[Fraction] = set()
    while len(values) < n:
        values.add(Fraction(rng.randint(-30, 30), rng.randint(1, 8)))
    out = sorted(values)
    rng.shuffle(out)
    return out


def random_rational_spec(
    rng: random.Random,
    max_n: int = 6,
    max_mult: int = 3,
    numerator: str = "proper",
) -> RationalFunctionSpec:
    """Spec with rational roots.  numerator: 'proper' draws l < m,
    'improper' draws l in [m, 2m], 'any' draws l in [0, 2m]."""
    n = rng.randint(1, max_n)
    mults = [rng.randint(1, max_mult) for _ in range(n)]
    m = sum(mults)
    if numerator == "proper":
        l = rng.randint(0, m - 1)
    elif numerator == "improper":
        l = rng.randint(m, 2 * m)
    else:
        l = rng.randint(0, 2 * m)
    roots = distinct_rationals(rng, n)
    return RationalFunctionSpec(l, tuple((Constant(r), mult) for r, mult in zip(roots, mults)))


def random_symbolic_spec(
    rng: random.Random,
    max_n: int = 5,
    max_mult: int = 3,
    numerator: str = "any",
) -> RationalFunctionSpec:
    """Spec whose roots are distinct symbolic atoms."""
    n = rng.randint(1, max_n)
    mults = [rng.randint(1, max_mult) for _ in range(n)]
    m = sum(mults)
    if numerator == "proper":
        l = rng.randint(0, m - 1)
    elif numerator == "improper":
        l = rng.randint(m, 2 * m)
    else:
        l = rng.randint(0, 2 * m)
    roots = [Symbol(f"a{i + 1}") for i in range(n)]
    return RationalFunctionSpec(l, tuple(zip(roots, mults)))
