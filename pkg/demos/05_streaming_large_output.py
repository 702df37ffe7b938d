"""Streaming very large results through a fixed-size buffer.

A 23-factor denominator with four triple roots produces a ~400 KB result.
The streaming writer keeps resident memory bounded by the buffer capacity
(plus one term when a single term exceeds it), yet the file is byte-for-byte
identical to the in-memory serialization.
"""

import io
import time

from partfrac import (
    RationalFunctionSpec,
    StreamBuffer,
    Symbol,
    decompose,
    serialize,
    term_chunks,
    write_streaming,
)

roots = [Symbol(f"r{i}") for i in range(1, 24)]
mults = [1] * 19 + [3] * 4
spec = RationalFunctionSpec(0, tuple(zip(roots, mults)))

t0 = time.perf_counter()
d = decompose(spec)
print(f"decomposed 23 factors in {time.perf_counter() - t0:.2f} s "
      f"({len(d.poles)} pole terms)")

sink = io.BytesIO()
buf = StreamBuffer(capacity=4096)
n = write_streaming(term_chunks(d), sink, buf)

print(f"streamed {n} bytes through a {buf.capacity} B buffer")
print(f"   flushes: {buf.flush_count}, peak buffered: {buf.peak_pending} B")
print("byte-identical to serialize():", sink.getvalue() == serialize(d).encode())
