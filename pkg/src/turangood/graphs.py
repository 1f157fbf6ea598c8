"""Small-graph kernel.

Graphs are stored as tuples of neighbour bitsets, one int per vertex, so a
graph on at most 32 vertices fits comfortably in machine words and every
value is hashable and immutable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

MAX_ORDER = 32
MAX_ENUMERATION_ORDER = 8


class GraphSizeError(ValueError):
    """A graph or enumeration exceeds the supported size."""


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_ORDER:
            raise GraphSizeError(f"graph order {self.n} outside 0..{MAX_ORDER}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour index >= n")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in _bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if not 0 <= n <= MAX_ORDER:
            raise GraphSizeError(f"graph order {n} outside 0..{MAX_ORDER}")
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @classmethod
    def path(cls, edges: int) -> "Graph":
        """Path with the given number of edges (``edges + 1`` vertices)."""
        return cls.from_edges(edges + 1, [(i, i + 1) for i in range(edges)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return _popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [_popcount(row) for row in self.adj]

    def neighbours(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in _bits(self.adj[v] & ((1 << v) - 1))]

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Subgraph induced on ``vertices``; vertex ``vertices[i]`` becomes ``i``."""
        rows = []
        for v in vertices:
            row = 0
            for i, u in enumerate(vertices):
                if self.adj[v] >> u & 1:
                    row |= 1 << i
            rows.append(row)
        return Graph(len(vertices), tuple(rows))

    def relabel(self, order: Sequence[int]) -> "Graph":
        """Graph whose vertex ``i`` is old vertex ``order[i]``; ``order`` is a permutation."""
        if sorted(order) != list(range(self.n)):
            raise ValueError("relabel needs a permutation of all vertices")
        return self.induced(order)

    def with_edge(self, u: int, v: int, present: bool = True) -> "Graph":
        if u == v:
            raise ValueError("self-loop")
        rows = list(self.adj)
        if present:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        else:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def add_vertex(self, neighbours: int) -> "Graph":
        """Append a vertex adjacent to the bitset ``neighbours``."""
        new = self.n
        rows = [row | ((neighbours >> v & 1) << new) for v, row in enumerate(self.adj)]
        rows.append(neighbours)
        return Graph(self.n + 1, tuple(rows))

    def delete_vertex(self, v: int) -> "Graph":
        return self.induced([u for u in range(self.n) if u != v])

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.adj)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# ---------------------------------------------------------------------------
# canonical labelling


@dataclass(frozen=True)
class CanonGraph:
    """Canonical representative of an isomorphism class.

    ``order[i]`` is the vertex of the input graph placed at position ``i``.
    Two graphs are isomorphic iff their ``graph`` fields are equal.
    """

    graph: Graph
    order: tuple[int, ...]

    @property
    def key(self) -> tuple[int, tuple[int, ...]]:
        return (self.graph.n, self.graph.adj)


def _refine(cells: list[list[int]], adj: Sequence[int]) -> list[list[int]]:
    # Equitable refinement: split every cell by neighbour counts into each
    # splitter cell until stable. Sub-cells are ordered by count, which keeps
    # the result label-invariant.
    while True:
        for splitter in cells:
            if len(cells) == len(adj):
                return cells
            smask = 0
            for v in splitter:
                smask |= 1 << v
            new: list[list[int]] = []
            split = False
            for cell in cells:
                if len(cell) == 1:
                    new.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault(_popcount(adj[v] & smask), []).append(v)
                if len(groups) == 1:
                    new.append(cell)
                else:
                    new.extend(groups[c] for c in sorted(groups))
                    split = True
            if split:
                cells = new
                break
        else:
            return cells


def _leaf_rows(adj: Sequence[int], order: Sequence[int]) -> tuple[int, ...]:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    rows = []
    for v in order:
        row = 0
        for u in _bits(adj[v]):
            row |= 1 << pos[u]
        rows.append(row)
    return tuple(rows)


def _orbits(n: int, generators: list[tuple[int, ...]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in generators:
        for x in range(n):
            a, b = find(x), find(g[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(x) for x in range(n)]


def canonical_labelling(g: Graph, cells: Sequence[Sequence[int]] | None = None) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Canonical vertex order of ``g`` respecting an ordered initial partition.

    Returns ``(order, rows)`` where ``rows`` is the adjacency of the relabelled
    graph. Individualisation-refinement with automorphism pruning; the chosen
    leaf is the one with lexicographically largest ``rows``.
    """
    n = g.n
    if n == 0:
        return (), ()
    adj = g.adj
    start = [list(c) for c in cells] if cells is not None else [list(range(n))]
    start = [c for c in start if c]
    if sum(len(c) for c in start) != n:
        raise ValueError("initial partition must cover every vertex exactly once")

    best_rows: tuple[int, ...] | None = None
    best_order: tuple[int, ...] = ()
    first_rows: tuple[int, ...] | None = None
    first_order: tuple[int, ...] = ()
    generators: list[tuple[int, ...]] = []

    def automorphism(src: tuple[int, ...], dst: tuple[int, ...]) -> tuple[int, ...]:
        perm = [0] * n
        for a, b in zip(src, dst):
            perm[a] = b
        return tuple(perm)

    def search(part: list[list[int]], path: tuple[int, ...]) -> None:
        nonlocal best_rows, best_order, first_rows, first_order
        part = _refine(part, adj)
        if len(part) == n:
            order = tuple(c[0] for c in part)
            rows = _leaf_rows(adj, order)
            if first_rows is None:
                first_rows, first_order = rows, order
                best_rows, best_order = rows, order
                return
            if rows == first_rows:
                generators.append(automorphism(order, first_order))
            elif rows == best_rows:
                generators.append(automorphism(order, best_order))
            elif rows > best_rows:
                best_rows, best_order = rows, order
            return
        idx = next(i for i, c in enumerate(part) if len(c) > 1)
        cell = part[idx]
        tried: list[int] = []
        for v in sorted(cell):
            if tried:
                stab = [p for p in generators if all(p[x] == x for x in path)]
                if stab:
                    orb = _orbits(n, stab)
                    if any(orb[v] == orb[t] for t in tried):
                        continue
            tried.append(v)
            child = part[:idx] + [[v], [u for u in cell if u != v]] + part[idx + 1:]
            search(child, path + (v,))

    search(start, ())
    assert best_rows is not None
    return best_order, best_rows


def canonical_form(g: Graph) -> CanonGraph:
    order, rows = canonical_labelling(g)
    return CanonGraph(Graph(g.n, rows), order)


def canonical_key(g: Graph) -> tuple[int, tuple[int, ...]]:
    return (g.n, canonical_labelling(g)[1])


def brute_canonical_key(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Exhaustive-permutation canonical key; an independent oracle for n <= 7."""
    if g.n > 8:
        raise GraphSizeError("exhaustive canonical form is limited to n <= 8")
    best = max(_leaf_rows(g.adj, p) for p in itertools.permutations(range(g.n))) if g.n else ()
    return (g.n, best)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.num_edges() == h.num_edges() and canonical_key(g) == canonical_key(h)


# ---------------------------------------------------------------------------
# enumeration


@dataclass(frozen=True)
class GraphFamily:
    n: int
    graphs: tuple[Graph, ...]

    def __len__(self) -> int:
        return len(self.graphs)

    def __getitem__(self, i: int) -> Graph:
        return self.graphs[i]

    def __iter__(self) -> Iterator[Graph]:
        return iter(self.graphs)

    def index(self, g: Graph) -> int:
        return self._index()[canonical_key(g)]

    def _index(self) -> dict:
        cache = self.__dict__.get("_idx")
        if cache is None:
            cache = {(h.n, h.adj): i for i, h in enumerate(self.graphs)}
            object.__setattr__(self, "_idx", cache)
        return cache


def family_order(g: Graph) -> tuple:
    """Total order on canonical graphs: edge count, then canonical rows."""
    return (g.num_edges(), g.adj)


@lru_cache(maxsize=None)
def enumerate_graphs(n: int) -> GraphFamily:
    """All isomorphism classes of graphs on ``n`` vertices (0 <= n <= 8)."""
    if not 0 <= n <= MAX_ENUMERATION_ORDER:
        raise GraphSizeError(f"exhaustive enumeration supports 0 <= n <= {MAX_ENUMERATION_ORDER}")
    if n == 0:
        return GraphFamily(0, (Graph.empty(0),))
    seen: dict[tuple, Graph] = {}
    for parent in enumerate_graphs(n - 1):
        for nbrs in range(1 << (n - 1)):
            child = canonical_form(parent.add_vertex(nbrs)).graph
            seen.setdefault(child.adj, child)
    return GraphFamily(n, tuple(sorted(seen.values(), key=family_order)))


# The 4-vertex basis F0..F10 is pinned by (edges, degree sequence, P3 count).
F4_SIGNATURES: tuple[tuple[str, int, tuple[int, ...], int], ...] = (
    ("empty", 0, (0, 0, 0, 0), 0),
    ("K2+2K1", 1, (0, 0, 1, 1), 0),
    ("P3+K1", 2, (0, 1, 1, 2), 0),
    ("K1,3", 3, (1, 1, 1, 3), 0),
    ("2K2", 2, (1, 1, 1, 1), 0),
    ("K3+K1", 3, (0, 2, 2, 2), 0),
    ("P4", 3, (1, 1, 2, 2), 1),
    ("paw", 4, (1, 2, 2, 3), 2),
    ("C4", 4, (2, 2, 2, 2), 4),
    ("diamond", 5, (2, 2, 3, 3), 6),
    ("K4", 6, (3, 3, 3, 3), 12),
)
F4_NAMES = tuple(s[0] for s in F4_SIGNATURES)
TIGHT_F4 = (0, 3, 8, 9, 10)


@lru_cache(maxsize=None)
def f4_basis() -> GraphFamily:
    """The eleven 4-vertex graphs in the pinned F0..F10 order."""
    family = enumerate_graphs(4)
    by_sig = {}
    for g in family:
        sig = (g.num_edges(), tuple(sorted(g.degrees())), count_subgraphs(P3, g))
        by_sig[sig] = g
    ordered = []
    for name, m, degs, nu in F4_SIGNATURES:
        try:
            ordered.append(by_sig[(m, degs, nu)])
        except KeyError:
            raise AssertionError(f"no 4-vertex graph matches signature of {name}") from None
    if len(set(g.adj for g in ordered)) != 11 or len(family) != 11:
        raise AssertionError("pinned 4-vertex basis is not a bijection")
    return GraphFamily(4, tuple(ordered))


# ---------------------------------------------------------------------------
# counting


def _embeddings(t: Graph, g: Graph) -> int:
    """Number of injective maps V(t) -> V(g) sending edges to edges."""
    if t.n > g.n:
        return 0
    # place high-degree pattern vertices first; back[i] lists earlier
    # positions adjacent to the vertex at position i
    order = sorted(range(t.n), key=lambda v: -t.degree(v))
    back = [[j for j in range(i) if t.has_edge(order[i], order[j])] for i in range(t.n)]
    image = [0] * t.n
    full = (1 << g.n) - 1
    total = 0

    def extend(i: int, used: int) -> None:
        nonlocal total
        if i == t.n:
            total += 1
            return
        cand = full & ~used
        for j in back[i]:
            cand &= g.adj[image[j]]
        for w in _bits(cand):
            image[i] = w
            extend(i + 1, used | 1 << w)

    extend(0, 0)
    return total


def automorphism_count(t: Graph) -> int:
    return _embeddings(t, t)


def count_subgraphs(t: Graph, g: Graph) -> int:
    """Number of (not necessarily induced) subgraphs of ``g`` isomorphic to ``t``."""
    if t.n > g.n:
        return 0
    emb = _embeddings(t, g)
    aut = automorphism_count(t)
    assert emb % aut == 0
    return emb // aut


def induced_count(h: Graph, g: Graph) -> int:
    if h.n > g.n:
        return 0
    if h.num_edges() > g.num_edges():
        return 0
    key = canonical_key(h)
    m = h.num_edges()
    total = 0
    for sub in itertools.combinations(range(g.n), h.n):
        s = g.induced(sub)
        if s.num_edges() == m and canonical_key(s) == key:
            total += 1
    return total


def induced_density(h: Graph, g: Graph) -> Fraction:
    """Fraction of ``|h|``-subsets of ``V(g)`` inducing a copy of ``h`` (0 if ``|h| > |g|``)."""
    if h.n > g.n:
        return Fraction(0)
    return Fraction(induced_count(h, g), comb(g.n, h.n))


def induced_profile(g: Graph, m: int) -> dict[tuple, Fraction]:
    """Induced densities of every ``m``-vertex class in ``g``, keyed by canonical key."""
    if m > g.n:
        return {}
    counts: dict[tuple, int] = {}
    for sub in itertools.combinations(range(g.n), m):
        key = canonical_key(g.induced(sub))
        counts[key] = counts.get(key, 0) + 1
    total = comb(g.n, m)
    return {k: Fraction(c, total) for k, c in counts.items()}


def f4_densities(g: Graph) -> list[Fraction]:
    """``P(F_i, g)`` for the pinned basis F0..F10."""
    prof = induced_profile(g, 4)
    return [prof.get((4, f.adj), Fraction(0)) for f in f4_basis()]


# ---------------------------------------------------------------------------
# structure


def find_induced_cocherry(g: Graph) -> tuple[int, int, int] | None:
    """A vertex triple spanning exactly one edge, or None if there is none."""
    for a, b, c in itertools.combinations(range(g.n), 3):
        if g.has_edge(a, b) + g.has_edge(a, c) + g.has_edge(b, c) == 1:
            return (a, b, c)
    return None


def multipartite_classes(g: Graph) -> list[list[int]] | None:
    """Non-adjacency classes if ``g`` is complete multipartite, else None."""
    full = (1 << g.n) - 1
    classes: list[list[int]] = []
    seen = 0
    for v in range(g.n):
        if seen >> v & 1:
            continue
        cls_mask = full & ~g.adj[v]
        members = list(_bits(cls_mask))
        for u in members:
            if full & ~g.adj[u] != cls_mask:
                return None
        seen |= cls_mask
        classes.append(members)
    return classes


def multipartite_parts(g: Graph) -> tuple[int, ...] | None:
    classes = multipartite_classes(g)
    if classes is None:
        return None
    return tuple(sorted((len(c) for c in classes), reverse=True))


def clique_number(g: Graph) -> int:
    best = 0

    def expand(size: int, cand: int) -> None:
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        if size + _popcount(cand) <= best:
            return
        pivot = max(_bits(cand), key=lambda u: _popcount(g.adj[u] & cand))
        for v in list(_bits(cand & ~g.adj[pivot])):
            expand(size + 1, cand & g.adj[v])
            cand &= ~(1 << v)

    expand(0, (1 << g.n) - 1)
    return best


def is_kq_free(g: Graph, q: int) -> bool:
    return clique_number(g) < q


P3 = Graph.path(3)
