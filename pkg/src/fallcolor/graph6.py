"""graph6 encoding and decoding (bit-exact with the nauty format).

Only the plain graph6 form is handled: an optional ``>>graph6<<`` header,
the vertex-count prefix, then the upper triangle of the adjacency matrix in
column order (x(0,1), x(0,2), x(1,2), x(0,3), ...), packed six bits per byte.
"""

from __future__ import annotations

from .graph import Graph

HEADER = ">>graph6<<"
MAX_N = 68719476735


class Graph6Error(ValueError):
    """Base class for malformed graph6 input."""


class Graph6LengthError(Graph6Error):
    """The vertex-count prefix is malformed or inconsistent."""


class Graph6CharacterError(Graph6Error):
    """A byte outside the printable range 63..126."""


class Graph6TruncatedError(Graph6Error):
    """Fewer adjacency bytes than the vertex count requires."""


class Graph6TrailingDataError(Graph6Error):
    """More adjacency bytes than the vertex count requires."""


class Graph6PaddingError(Graph6Error):
    """A nonzero bit in the padding of the final byte."""


def _encode_n(n: int) -> str:
    if n < 0 or n > MAX_N:
        raise ValueError(f"graph6 cannot encode n={n}")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def _decode_n(data: bytes) -> tuple[int, int]:
    """Return (n, bytes consumed)."""
    if not data:
        raise Graph6LengthError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6LengthError("8-byte size field is truncated")
        chunk, used = data[2:8], 8
    else:
        if len(data) < 4:
            raise Graph6LengthError("4-byte size field is truncated")
        chunk, used = data[1:4], 4
    n = 0
    for b in chunk:
        if not 63 <= b <= 126:
            raise Graph6LengthError(f"byte {b!r} is not a valid size byte")
        n = (n << 6) | (b - 63)
    if used == 4 and n <= 62:
        raise Graph6LengthError(f"n={n} must use the 1-byte size form")
    if used == 8 and n <= 258047:
        raise Graph6LengthError(f"n={n} must use the 4-byte size form")
    return n, used


def to_graph6(g: Graph, header: bool = False) -> str:
    out = [HEADER] if header else []
    out.append(_encode_n(g.n))
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def parse_graph6(text: str | bytes) -> Graph:
    if isinstance(text, str):
        try:
            data = text.strip().encode("ascii")
        except UnicodeEncodeError as exc:
            raise Graph6CharacterError("graph6 text must be ASCII") from exc
    else:
        data = text.strip()
    if data.startswith(HEADER.encode()):
        data = data[len(HEADER):]
    for pos, b in enumerate(data):
        if not 63 <= b <= 126:
            raise Graph6CharacterError(f"byte {b} at offset {pos} outside 63..126")
    n, used = _decode_n(data)
    if n < 1:
        raise Graph6LengthError("graph6 encodes the null graph; at least one vertex is required")
    body = data[used:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) < need:
        raise Graph6TruncatedError(f"expected {need} adjacency bytes for n={n}, got {len(body)}")
    if len(body) > need:
        raise Graph6TrailingDataError(f"{len(body) - need} unexpected trailing byte(s) after n={n} graph")
    pad = need * 6 - nbits
    if pad and (body[-1] - 63) & ((1 << pad) - 1):
        raise Graph6PaddingError("nonzero padding bits in final byte")

    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))
