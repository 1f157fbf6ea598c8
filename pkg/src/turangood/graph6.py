"""graph6 encoding (the nauty ASCII format) for :class:`Graph`."""

from __future__ import annotations

from typing import Iterable, TextIO

from .graphs import Graph


class Graph6Error(ValueError):
    pass


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise Graph6Error(f"order {n} too large for graph6")


def encode(g: Graph) -> str:
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _encode_n(g.n) + body


def decode(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise Graph6Error("empty graph6 string")
    if any(not 63 <= ord(c) <= 126 for c in s):
        raise Graph6Error(f"invalid graph6 character in {text!r}")
    if s[0] != "~":
        n, rest = ord(s[0]) - 63, s[1:]
    elif len(s) > 1 and s[1] != "~":
        n = 0
        for c in s[1:4]:
            n = (n << 6) | (ord(c) - 63)
        rest = s[4:]
    else:
        raise Graph6Error("graph6 orders >= 258048 are not supported")
    need = n * (n - 1) // 2
    if len(rest) != -(-need // 6):
        raise Graph6Error(f"graph6 body length {len(rest)} does not match order {n}")
    bits = []
    for c in rest:
        v = ord(c) - 63
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    if any(bits[need:]):
        raise Graph6Error("nonzero padding bits")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def write_lines(graphs: Iterable[Graph], fh: TextIO) -> None:
    for g in graphs:
        fh.write(encode(g) + "\n")


def read_lines(fh: TextIO) -> list[Graph]:
    return [decode(line) for line in fh if line.strip() and not line.startswith("#")]
