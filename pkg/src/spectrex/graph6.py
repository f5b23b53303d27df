"""graph6 encoding (bit-exact with the nauty/networkx format)."""

from __future__ import annotations

from .errors import Graph6Error
from .graph import Graph

HEADER = ">>graph6<<"


def _encode_order(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    return "~~" + "".join(chr(63 + (n >> s & 63)) for s in (30, 24, 18, 12, 6, 0))


def graph6_encode(g: Graph) -> str:
    """Encode ``g`` without header or trailing newline."""
    out = [_encode_order(g.n)]
    acc = 0
    nbits = 0
    rows = g.rows
    # upper triangle, column by column: x(0,1), x(0,2), x(1,2), x(0,3), ...
    for j in range(1, g.n):
        col = rows[j]
        for i in range(j):
            acc = (acc << 1) | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + acc))
                acc = nbits = 0
    if nbits:
        out.append(chr(63 + (acc << (6 - nbits))))
    return "".join(out)


def graph6_decode(text: str) -> Graph:
    s = text.strip()
    base = 0
    if s.startswith(HEADER):
        base = len(HEADER)
        s = s[base:]
    if not s:
        raise Graph6Error("empty graph6 string", base)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ch!r} outside the graph6 range 63..126", base + i)

    def group(i: int) -> int:
        return ord(s[i]) - 63

    if s[0] != "~":
        n, pos = group(0), 1
    elif len(s) >= 2 and s[1] == "~":
        if len(s) < 8:
            raise Graph6Error("truncated 8-byte order field", base + len(s))
        n, pos = 0, 8
        for i in range(2, 8):
            n = (n << 6) | group(i)
    else:
        if len(s) < 4:
            raise Graph6Error("truncated 4-byte order field", base + len(s))
        n, pos = 0, 4
        for i in range(1, 4):
            n = (n << 6) | group(i)

    nbits = n * (n - 1) // 2
    expected = pos + (nbits + 5) // 6
    if len(s) != expected:
        raise Graph6Error(
            f"order {n} needs {expected} bytes, got {len(s)}", base + min(len(s), expected)
        )
    if nbits % 6 and group(expected - 1) & ((1 << (6 - nbits % 6)) - 1):
        raise Graph6Error("nonzero padding bits", base + expected - 1)

    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = group(pos + k // 6)
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, rows, check=False)
