"""graph6 encoding (header-free, one graph per string).

Layout: N(n) followed by the upper triangle of the adjacency matrix read
column by column, ``x(0,1) x(0,2) x(1,2) x(0,3) ...``, packed big-endian
into 6-bit groups, each offset by 63. ``N(n)`` is one byte for n <= 62,
otherwise ``~`` plus three bytes.
"""

from __future__ import annotations

from .graph import MAX_VERTICES, CapacityError, Graph

HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> shift) & 63) + 63) for shift in (12, 6, 0))
    raise CapacityError(f"n={n} too large for graph6")


def to_graph6(g: Graph) -> str:
    out = [_encode_n(g.n)]
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        col = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def from_graph6(text: str) -> Graph:
    s = text.strip()
    base = len(text) - len(text.lstrip())
    if s.startswith(HEADER):
        s = s[len(HEADER):]
        base += len(HEADER)
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside the printable range 63..126", base + pos)
    if not s:
        raise Graph6Error("empty graph6 string", base)
    if s[0] != "~":
        n, start = ord(s[0]) - 63, 1
    else:
        if len(s) < 4:
            raise Graph6Error("truncated vertex count", base + len(s))
        if s[1] == "~":
            raise Graph6Error("vertex counts above 258047 are not supported", base + 1)
        n = 0
        for ch in s[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        start = 4
    if n > MAX_VERTICES:
        raise CapacityError(f"graph6 string encodes n={n}, capacity is {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    body = s[start:]
    if len(body) != nbytes:
        raise Graph6Error(
            f"expected {nbytes} data bytes for n={n}, found {len(body)}",
            base + start + min(len(body), nbytes),
        )
    pad = nbytes * 6 - nbits
    if pad and (ord(body[-1]) - 63) & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits", base + start + nbytes - 1)

    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(body[k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))
