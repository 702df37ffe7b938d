import io
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partfrac import (
    ONE,
    Constant,
    Decomposition,
    MonomialTerm,
    OutputFormat,
    PoleTerm,
    StreamBuffer,
    StreamWriteError,
    collect,
    decompose,
    decomposition_value,
    evaluate,
    parse_expr,
    render_expr,
    serialize,
    symbols,
    term_chunks,
    write_decomposition,
    write_streaming,
)
from helpers import random_rational_spec, random_symbolic_spec

a, b = symbols("a b")

WORKED_EXAMPLE = Decomposition(
    roots=(Constant(-1), Constant(-2), Constant(-3)),
    monomials=(),
    poles=(
        PoleTerm(0, 1, Constant(Fraction(1, 2))),
        PoleTerm(1, 1, Constant(-1)),
        PoleTerm(2, 1, Constant(Fraction(1, 2))),
    ),
)


# --- collect -------------------------------------------------------------------


def test_collect_merges_shared_pole():
    d = Decomposition(
        roots=(a,),
        monomials=(),
        poles=(PoleTerm(0, 1, b), PoleTerm(0, 1, 2 * b)),
    )
    assert collect(d).poles == (PoleTerm(0, 1, 3 * b),)


def test_collect_cancels_to_empty():
    d = Decomposition(
        roots=(a,),
        monomials=(),
        poles=(PoleTerm(0, 1, ONE), PoleTerm(0, 1, Constant(-1))),
    )
    out = collect(d)
    assert out.poles == () and out.monomials == ()


def test_collect_idempotent_on_collected_input():
    d = decompose_sample()
    assert collect(d) == d
    assert collect(collect(d)) == collect(d)


def decompose_sample():
    rng = random.Random(17)
    return decompose(random_symbolic_spec(rng, max_n=3, max_mult=3, numerator="any"))


def test_collect_sorts_and_merges_monomials():
    d = Decomposition(
        roots=(),
        monomials=(
            MonomialTerm(2, ONE),
            MonomialTerm(0, a),
            MonomialTerm(2, Constant(-1)),
        ),
        poles=(),
    )
    assert collect(d).monomials == (MonomialTerm(0, a),)


def test_collect_preserves_value():
    rng = random.Random(23)
    spec = random_symbolic_spec(rng, max_n=3, max_mult=2, numerator="any")
    d = decompose(spec)
    doubled = Decomposition(d.roots, d.monomials + d.monomials, d.poles + d.poles)
    merged = collect(doubled)
    bind = {name: Fraction(rng.randint(1, 100), 3) for name in "a1 a2 a3".split()}
    x = Fraction(1009, 10)
    assert decomposition_value(merged, bind, x) == decomposition_value(doubled, bind, x)


# --- serialize -----------------------------------------------------------------


def test_serialize_worked_example_golden_string():
    assert (
        serialize(WORKED_EXAMPLE)
        == "(1/2)*(x + 1)^(-1) - (x + 2)^(-1) + (1/2)*(x + 3)^(-1)"
    )


def test_serialize_empty_is_zero():
    assert serialize(Decomposition((), (), ())) == "0"


def test_serialize_structured_unit_pole():
    d = Decomposition((a,), (), (PoleTerm(0, 1, ONE),))
    assert serialize(d, OutputFormat("structured")) == "P 1 1 1\n"


def test_serialize_structured_records():
    d = Decomposition(
        roots=(a, b),
        monomials=(MonomialTerm(0, Constant(Fraction(1, 2))), MonomialTerm(2, ONE)),
        poles=(PoleTerm(0, 2, -b), PoleTerm(1, 1, a + b)),
    )
    assert serialize(d, OutputFormat("structured")) == (
        "M 0 1/2\n"
        "M 2 1\n"
        "P 1 2 -b\n"
        "P 2 1 a + b\n"
    )


def test_serialize_monomials_first_then_poles_by_factor():
    d = Decomposition(
        roots=(b, a),
        monomials=(MonomialTerm(0, ONE), MonomialTerm(1, a), MonomialTerm(3, 2 * a)),
        poles=(PoleTerm(0, 1, ONE), PoleTerm(1, 2, Constant(-3))),
    )
    assert serialize(d) == "1 + a*x + 2*a*x^3 + (x - b)^(-1) - 3*(x - a)^(-2)"


def test_serialize_symbolic_root_forms():
    cases = [
        (a, "(x - a)^(-1)"),
        (-a, "(x + a)^(-1)"),
        (2 * a, "(x - 2*a)^(-1)"),
        (a + b, "(x - (a + b))^(-1)"),
        (a - b, "(x - (a - b))^(-1)"),
        (b - a, "(x - (b - a))^(-1)"),
        (-a - b, "(x - (-a - b))^(-1)"),
        (Constant(Fraction(1, 2)), "(x - 1/2)^(-1)"),
        (Constant(Fraction(-1, 2)), "(x + 1/2)^(-1)"),
    ]
    for root, expected in cases:
        d = Decomposition((root,), (), (PoleTerm(0, 1, ONE),))
        assert serialize(d) == expected, root


def test_serialize_negative_leading_term():
    d = Decomposition((a,), (), (PoleTerm(0, 1, Constant(-1)),))
    assert serialize(d) == "-(x - a)^(-1)"
    d2 = Decomposition((a,), (), (PoleTerm(0, 1, -b),))
    assert serialize(d2) == "-b*(x - a)^(-1)"


def test_serialize_sum_coefficient_parenthesized():
    d = Decomposition((a,), (), (PoleTerm(0, 1, a + b),))
    assert serialize(d) == "(a + b)*(x - a)^(-1)"


def test_expand_coefficients_mode():
    coeff = (a + b) ** 2
    d = Decomposition((a,), (), (PoleTerm(0, 1, coeff),))
    text = serialize(d, OutputFormat("infix", expand_coefficients=True))
    # canonical child order: Powers sort before Products
    assert text == "(a^2 + b^2 + 2*a*b)*(x - a)^(-1)"
    # value unchanged
    plain = parse_expr(serialize(d))
    expanded = parse_expr(text)
    bind = {"a": Fraction(3, 7), "b": Fraction(5, 11), "x": Fraction(9)}
    assert evaluate(plain, bind) == evaluate(expanded, bind)


def test_serialized_output_reparses_to_same_value():
    rng = random.Random(51)
    for _ in range(10):
        spec = random_symbolic_spec(rng, max_n=4, max_mult=2, numerator="any")
        d = decompose(spec)
        e = parse_expr(serialize(d))
        names = [f"a{i+1}" for i in range(len(spec.factors))]
        bind = {name: Fraction(rng.randint(1, 10**4), rng.randint(1, 100)) for name in names}
        if len(set(evaluate(r, bind) for r in d.roots)) != len(d.roots):
            continue
        x = Fraction(10**6 + 3, 7)
        bind_x = dict(bind, x=x)
        assert evaluate(e, bind_x) == decomposition_value(d, bind, x)


def test_coefficient_round_trip_through_parser():
    rng = random.Random(52)
    for _ in range(10):
        spec = random_symbolic_spec(rng, max_n=4, max_mult=3, numerator="any")
        d = decompose(spec)
        for term in (*d.monomials, *d.poles):
            assert parse_expr(render_expr(term.coefficient)) == term.coefficient


# --- streaming -----------------------------------------------------------------


def test_streaming_matches_serialize_small_buffer():
    text = serialize(WORKED_EXAMPLE)
    sink = io.BytesIO()
    buf = StreamBuffer(capacity=16)
    n = write_streaming(term_chunks(WORKED_EXAMPLE), sink, buf)
    assert sink.getvalue().decode() == text
    assert n == len(text)
    assert buf.flush_count > 1
    assert buf.peak_pending <= 16


def test_streaming_empty_stream_writes_zero():
    sink = io.BytesIO()
    buf = StreamBuffer(capacity=64)
    n = write_streaming(term_chunks(Decomposition((), (), ())), sink, buf)
    assert sink.getvalue() == b"0"
    assert n == 1
    assert buf.flush_count == 1


def test_streaming_random_capacities_byte_identical():
    rng = random.Random(53)
    for _ in range(12):
        spec = random_rational_spec(rng, max_n=4, max_mult=3, numerator="any")
        d = decompose(spec)
        fmt = OutputFormat(rng.choice(["infix", "structured"]))
        text = serialize(d, fmt)
        capacity = rng.randint(8, 4096)
        sink = io.BytesIO()
        buf = StreamBuffer(capacity=capacity)
        n = write_decomposition(d, sink, fmt, buf)
        assert sink.getvalue().decode() == text
        assert n == len(text.encode())
        assert buf.peak_pending <= capacity


def test_streaming_oversized_term_passes_through():
    # coefficient with a 100-digit numerator makes a chunk way over capacity
    huge = Constant(Fraction(10**100 + 7, 3))
    d = Decomposition((a,), (MonomialTerm(0, huge),), (PoleTerm(0, 1, ONE),))
    text = serialize(d)
    assert len(text) > 100
    sink = io.BytesIO()
    buf = StreamBuffer(capacity=32)
    write_streaming(term_chunks(d), sink, buf)
    assert sink.getvalue().decode() == text
    assert buf.peak_pending <= 32


class _FlakySink:
    """Accepts the first ``good`` writes, then fails."""

    def __init__(self, good: int):
        self.good = good
        self.data = b""

    def write(self, payload: bytes):
        if self.good == 0:
            raise OSError("disk full")
        self.good -= 1
        self.data += payload


def test_stream_write_error_carries_progress():
    chunks = ["A" * 10, "B" * 10, "C" * 10]
    sink = _FlakySink(good=2)
    with pytest.raises(StreamWriteError) as err:
        write_streaming(chunks, sink, StreamBuffer(capacity=10))
    assert err.value.bytes_written == 20
    assert sink.data == b"A" * 10 + b"B" * 10


def test_stream_buffer_validation():
    with pytest.raises(ValueError):
        StreamBuffer(capacity=0)
    with pytest.raises(ValueError):
        OutputFormat("yaml")


@settings(max_examples=60)
@given(
    st.lists(st.text(alphabet="abc123+-*() ", max_size=30), max_size=8),
    st.integers(1, 64),
)
def test_streaming_equals_join_for_arbitrary_chunks(chunks, capacity):
    sink = io.BytesIO()
    n = write_streaming(chunks, sink, StreamBuffer(capacity=capacity))
    joined = "".join(chunks).encode("ascii")
    assert sink.getvalue() == joined
    assert n == len(joined)
