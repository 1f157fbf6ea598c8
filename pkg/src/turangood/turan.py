"""Exact P3 and K4 counts for Turán and complete multipartite graphs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, prod
from typing import Iterator, Sequence

from .graphs import Graph, _bits, _popcount, clique_number


@dataclass(frozen=True)
class PartVector:
    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.sizes:
            raise ValueError("a part vector needs at least one part")
        if any(s < 0 for s in self.sizes):
            raise ValueError("part sizes must be nonnegative")

    @classmethod
    def parse(cls, text: str) -> "PartVector":
        return cls(tuple(int(x) for x in text.split(",") if x.strip()))

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def r(self) -> int:
        return len(self.sizes)

    def is_balanced(self) -> bool:
        return max(self.sizes) - min(self.sizes) <= 1

    def moved(self, src: int, dst: int) -> "PartVector":
        if self.sizes[src] < 1:
            raise ValueError(f"part {src} is empty")
        s = list(self.sizes)
        s[src] -= 1
        s[dst] += 1
        return PartVector(tuple(s))

    def graph(self) -> Graph:
        """Complete multipartite graph with parts laid out consecutively."""
        owner = [i for i, s in enumerate(self.sizes) for _ in range(s)]
        return _multipartite(owner)


@dataclass(frozen=True)
class TuranSpec:
    r: int
    n: int

    def __post_init__(self) -> None:
        if self.r < 1 or self.n < 0:
            raise ValueError("need r >= 1 and n >= 0")

    def parts(self) -> PartVector:
        q, rem = divmod(self.n, self.r)
        return PartVector(tuple(q + 1 if i < rem else q for i in range(self.r)))


def _multipartite(owner: Sequence[int]) -> Graph:
    n = len(owner)
    rows = []
    for v in range(n):
        rows.append(sum(1 << u for u in range(n) if owner[u] != owner[v]))
    return Graph(n, tuple(rows))


def turan_graph(spec: TuranSpec) -> Graph:
    """T_r(n) with vertex v in part v mod r."""
    return _multipartite([v % spec.r for v in range(spec.n)])


def triangle_count(g: Graph) -> int:
    return sum(_popcount(g.adj[u] & g.adj[v]) for u, v in g.edges()) // 3


def count_p3_fast(g: Graph) -> int:
    """Paths with three edges: central-edge sum minus the 3 closed walks per triangle."""
    deg = g.degrees()
    s = sum((deg[u] - 1) * (deg[v] - 1) for u, v in g.edges())
    return s - 3 * triangle_count(g)


def multipartite_p3(parts: PartVector | Sequence[int]) -> int:
    sizes = parts.sizes if isinstance(parts, PartVector) else tuple(parts)
    n = sum(sizes)
    total = 0
    for a, b in itertools.combinations(sizes, 2):
        total += a * b * ((a - 1) * (b - 1) + (n - a - b) * (n - 3))
    return total


def delta_other_parts_weighted(parts: PartVector, src: int, dst: int) -> int:
    """Move formula with the other parts weighted by x(n - 2 - x).

    Kept for comparison only. The recount minus this value is
    (a - b - 1)(S(n - 2) - sum of squares of the other parts), S their total.
    """
    s = parts.sizes
    n = parts.n
    a, b = s[src], s[dst]
    rest = sum(x * (n - 2 - x) for i, x in enumerate(s) if i not in (src, dst))
    return (a - b - 1) * ((n - a - b) * (n - 3) + 2 * (a - 1) * b + rest)


def delta_closed_form(parts: PartVector, src: int, dst: int) -> int:
    """Change in P3 count when one vertex moves from part ``src`` (size a) to ``dst`` (size b).

    (a - b - 1) * (2(a-1)b + (n-a-b)(3n-7) - 2 * sum of squares of the other parts)
    """
    s = parts.sizes
    n = parts.n
    a, b = s[src], s[dst]
    squares = sum(x * x for i, x in enumerate(s) if i not in (src, dst))
    return (a - b - 1) * (2 * (a - 1) * b + (n - a - b) * (3 * n - 7) - 2 * squares)


def delta_p3(parts: PartVector, src: int, dst: int) -> int:
    """Recount difference for the move; checked against the closed form."""
    if src == dst:
        raise ValueError("source and destination parts must differ")
    if parts.sizes[src] < 1:
        raise ValueError(f"part {src} is empty")
    diff = multipartite_p3(parts.moved(src, dst)) - multipartite_p3(parts)
    closed = delta_closed_form(parts, src, dst)
    if diff != closed:
        raise AssertionError(f"move formula disagrees with recount: {closed} != {diff}")
    return diff


def opt_density(r: int) -> Fraction:
    return 12 * Fraction(r - 1, r) ** 3


def turan_p3(r: int, n: int) -> int:
    return multipartite_p3(TuranSpec(r, n).parts())


def turan_p3_main_term(r: int, n: int) -> Fraction:
    """Leading-order P3 count for T_r(n) as if r divided n."""
    m = Fraction(n, r)
    return comb(r, 2) * m * m * ((m - 1) ** 2 + (n - 2 * m) * (n - 3))


def p3_density_times_24(r: int, n: int) -> Fraction:
    """24 nu(P3, T_r(n)) / (n)_4, which tends to the optimum density."""
    return Fraction(24 * turan_p3(r, n), n * (n - 1) * (n - 2) * (n - 3))


CSV_HEADER = "r,n,nu_p3,density_times_24,opt,gap"


@dataclass(frozen=True)
class ConvergenceRow:
    r: int
    n: int
    nu_p3: int
    density: Fraction
    opt: Fraction

    @property
    def gap(self) -> Fraction:
        return self.density - self.opt

    def csv(self) -> str:
        return f"{self.r},{self.n},{self.nu_p3},{self.density},{self.opt},{self.gap}"


def convergence_table(r: int, ns: Iterator[int] | Sequence[int]) -> list[ConvergenceRow]:
    opt = opt_density(r)
    rows = []
    for n in ns:
        if n < 4:
            raise ValueError("convergence rows need n >= 4")
        rows.append(ConvergenceRow(r, n, turan_p3(r, n), p3_density_times_24(r, n), opt))
    return rows


def zykov_k4(spec: TuranSpec) -> int:
    return sum(prod(c) for c in itertools.combinations(spec.parts().sizes, 4))


def zykov_bound(r: int) -> Fraction:
    return Fraction(r**3 - 6 * r**2 + 11 * r - 6, r**3)


def turan_k4_density(r: int, n: int) -> Fraction:
    return Fraction(zykov_k4(TuranSpec(r, n)), comb(n, 4))


# ---------------------------------------------------------------------------
# per-vertex counts and the clone gadget


def isolate(g: Graph, vs: Sequence[int]) -> Graph:
    mask = sum(1 << v for v in vs)
    rows = tuple(0 if v in vs else row & ~mask for v, row in enumerate(g.adj))
    return Graph(g.n, rows)


def per_vertex_p3(g: Graph, v: int) -> int:
    """Number of P3 subgraphs through ``v``."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    return count_p3_fast(g) - count_p3_fast(isolate(g, [v]))


def pair_p3(g: Graph, u: int, v: int) -> int:
    """Number of P3 subgraphs through both ``u`` and ``v`` (inclusion-exclusion)."""
    return (
        count_p3_fast(g)
        - count_p3_fast(isolate(g, [u]))
        - count_p3_fast(isolate(g, [v]))
        + count_p3_fast(isolate(g, [u, v]))
    )


def clone_replace(g: Graph, u: int, v: int) -> Graph:
    """Replace ``v`` by a non-adjacent twin of ``u`` (neighbourhood N(u) minus v)."""
    if u == v:
        raise ValueError("clone_replace needs two distinct vertices")
    nbrs = g.adj[u] & ~(1 << v)
    base = isolate(g, [v])
    rows = list(base.adj)
    for w in _bits(nbrs):
        rows[w] |= 1 << v
    rows[v] = nbrs
    return Graph(g.n, tuple(rows))


def clone_gain_estimate(g: Graph, u: int, v: int) -> int:
    """nu(G) + nu_G(u) - nu_G(u, v) - nu_G(v).

    This ignores P3s that pass through both ``u`` and its clone, so it is a
    lower bound for the clone's count, exact when no such path exists.
    """
    return count_p3_fast(g) + per_vertex_p3(g, u) - pair_p3(g, u, v) - per_vertex_p3(g, v)


def clone_preserves_clique_bound(g: Graph, u: int, v: int) -> bool:
    return clique_number(clone_replace(g, u, v)) <= clique_number(g)


def per_vertex_lower_bound(r: int, n: int) -> Fraction:
    """(OPT - r^-10) C(n-1, 3) - n^3 / r^4, the extremal per-vertex floor."""
    return (opt_density(r) - Fraction(1, r**10)) * comb(n - 1, 3) - Fraction(n**3, r**4)


def compositions(n: int, r: int) -> Iterator[tuple[int, ...]]:
    """Nonincreasing part vectors with exactly ``r`` entries (zeros allowed) summing to ``n``."""

    def rec(left: int, k: int, cap: int) -> Iterator[tuple[int, ...]]:
        if k == 0:
            if left == 0:
                yield ()
            return
        for s in range(min(left, cap), -1, -1):
            if s * k < left:
                break
            for tail in rec(left - s, k - 1, s):
                yield (s,) + tail

    return rec(n, r, n)
