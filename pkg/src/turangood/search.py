"""Exhaustive search for generalized Turán numbers ex(n, T, F) at small n.

Two independent routes:

* ``exhaustive`` walks every isomorphism class from :func:`enumerate_graphs`.
* ``augmentation`` grows F-free graphs one vertex at a time, deduplicating by
  canonical form after each level and pruning by density.

The density prune is exact. For a graph G on m > |T| vertices, averaging
nu(T, G - v) over v gives nu(T, G) (m - |T|) / m, so some deletion does not
lower d(T, .) = nu(T, .) / C(m, |T|). Iterating from a maximizer on n vertices
yields a chain of induced subgraphs, one per level, each with density at least
that of the maximizer. Keeping every level-j graph whose density is at least
the incumbent's density (ties included) therefore keeps every such chain, and
every maximizer is generated.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Iterable

from . import graph6
from .graphs import (
    MAX_ENUMERATION_ORDER,
    Graph,
    canonical_form,
    canonical_key,
    clique_number,
    count_subgraphs,
    enumerate_graphs,
    is_isomorphic,
    multipartite_classes,
)
from .turan import TuranSpec, clone_replace, count_p3_fast, turan_graph

MAX_SEARCH_ORDER = 10
CHECKPOINT_HEADER = "turangood-search-checkpoint 1"


class SearchError(ValueError):
    pass


def named_graph(text: str) -> Graph:
    """Parse ``P3`` (path with 3 edges), ``K5``, ``C4``, ``E3`` (edgeless) or a graph6 string."""
    s = text.strip()
    if len(s) >= 2 and s[0] in "PKCE" and s[1:].isdigit():
        k = int(s[1:])
        if s[0] == "P":
            return Graph.path(k)
        if s[0] == "K":
            return Graph.complete(k)
        if s[0] == "C":
            if k < 3:
                raise SearchError("cycles need at least 3 vertices")
            return Graph.cycle(k)
        return Graph.empty(k)
    try:
        return graph6.decode(s)
    except graph6.Graph6Error as exc:
        raise SearchError(f"cannot parse graph {text!r}: {exc}") from None


def _is_complete(g: Graph) -> bool:
    return g.num_edges() == g.n * (g.n - 1) // 2


@dataclass(frozen=True)
class SearchProblem:
    n: int
    target: Graph
    forbidden: Graph
    mode: str = "augmentation"

    def __post_init__(self) -> None:
        if self.mode not in ("exhaustive", "augmentation"):
            raise SearchError(f"unknown mode {self.mode!r}")
        if not 1 <= self.n <= MAX_SEARCH_ORDER:
            raise SearchError(f"search supports 1 <= n <= {MAX_SEARCH_ORDER}")
        if self.mode == "exhaustive" and self.n > MAX_ENUMERATION_ORDER:
            raise SearchError(f"exhaustive mode supports n <= {MAX_ENUMERATION_ORDER}")
        if self.target.n == 0:
            raise SearchError("target graph must have at least one vertex")
        if self.forbidden.num_edges() == 0:
            raise SearchError("an edgeless forbidden graph makes the problem infeasible")

    def describe(self) -> str:
        return (
            f"n={self.n} target={graph6.encode(self.target)} "
            f"forbidden={graph6.encode(self.forbidden)} mode={self.mode}"
        )

    # the counting and freeness oracles are picked once per problem

    def count(self, g: Graph) -> int:
        t = self.target
        if t.n == 4 and t.num_edges() == 3 and canonical_key(t) == _P3_KEY:
            return count_p3_fast(g)
        return count_subgraphs(t, g)

    def is_free(self, g: Graph) -> bool:
        f = self.forbidden
        if _is_complete(f):
            return clique_number(g) < f.n
        return count_subgraphs(f, g) == 0


_P3_KEY = canonical_key(Graph.path(3))


@dataclass
class SearchResult:
    problem: SearchProblem
    optimum: int
    witnesses: list[Graph]
    nodes: int
    elapsed: float = 0.0
    levels: list[int] = field(default_factory=list)

    @property
    def num_classes(self) -> int:
        return len(self.witnesses)

    def witness_graph6(self) -> list[str]:
        return [graph6.encode(w) for w in self.witnesses]

    def as_dict(self, timing: bool = True) -> dict:
        out = {
            "n": self.problem.n,
            "target": graph6.encode(self.problem.target),
            "forbidden": graph6.encode(self.problem.forbidden),
            "mode": self.problem.mode,
            "optimum": self.optimum,
            "num_classes": self.num_classes,
            "witnesses": self.witness_graph6(),
            "nodes": self.nodes,
            "frontier_sizes": self.levels,
        }
        if timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out


def _witness_order(g: Graph) -> tuple:
    return canonical_key(g)


def incumbent(p: SearchProblem) -> int:
    """Best F-free Turán graph on n vertices; a valid lower bound for the optimum."""
    best = 0
    for k in range(1, p.n + 1):
        g = turan_graph(TuranSpec(k, p.n))
        if p.is_free(g):
            best = max(best, p.count(g))
    return best


def _solve_exhaustive(p: SearchProblem) -> SearchResult:
    best = -1
    wits: list[Graph] = []
    nodes = 0
    for g in enumerate_graphs(p.n):
        nodes += 1
        if not p.is_free(g):
            continue
        c = p.count(g)
        if c > best:
            best, wits = c, [g]
        elif c == best:
            wits.append(g)
    return SearchResult(p, best, sorted(wits, key=_witness_order), nodes)


def _children(args: tuple[SearchProblem, list[Graph]]) -> tuple[dict[tuple, Graph], int]:
    p, parents = args
    out: dict[tuple, Graph] = {}
    nodes = 0
    for g in parents:
        for nbrs in range(1 << g.n):
            nodes += 1
            child = canonical_form(g.add_vertex(nbrs)).graph
            if child.adj in out:
                continue
            if p.is_free(child):
                out[child.adj] = child
    return out, nodes


def _keep(p: SearchProblem, g: Graph, floor: int | None) -> bool:
    t = p.target.n
    if floor is None or g.n < t or g.n == p.n:
        return True
    # d(T, g) >= floor / C(n, t)
    return p.count(g) * comb(p.n, t) >= floor * comb(g.n, t)


@dataclass
class _State:
    level: int
    floor: int | None
    frontier: list[Graph]
    nodes: int
    levels: list[int]


def _write_checkpoint(path: Path, p: SearchProblem, st: _State) -> None:
    lines = [
        CHECKPOINT_HEADER,
        f"problem {p.describe()}",
        f"level {st.level}",
        f"floor {'none' if st.floor is None else st.floor}",
        f"nodes {st.nodes}",
        f"levels {json.dumps(st.levels)}",
    ]
    lines += [graph6.encode(g) for g in st.frontier]
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text("\n".join(lines) + "\n")
    tmp.replace(path)


def _read_checkpoint(path: Path, p: SearchProblem) -> _State:
    lines = path.read_text().splitlines()
    if not lines or lines[0] != CHECKPOINT_HEADER:
        raise SearchError(f"{path} is not a search checkpoint (or has another version)")
    meta = {}
    for line in lines[1:6]:
        k, _, v = line.partition(" ")
        meta[k] = v
    if meta.get("problem") != p.describe():
        raise SearchError("checkpoint belongs to a different problem")
    frontier = [graph6.decode(s) for s in lines[6:] if s.strip()]
    floor = None if meta["floor"] == "none" else int(meta["floor"])
    return _State(int(meta["level"]), floor, frontier, int(meta["nodes"]), json.loads(meta["levels"]))


def _solve_augmentation(
    p: SearchProblem, workers: int = 1, checkpoint: Path | None = None, prune: bool = True
) -> SearchResult:
    if checkpoint is not None and checkpoint.exists():
        st = _read_checkpoint(checkpoint, p)
    else:
        start = [Graph.empty(1)] if p.is_free(Graph.empty(1)) else []
        st = _State(1, incumbent(p) if prune else None, start, 1, [len(start)])

    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while st.level < p.n:
            if pool is None:
                kids, nodes = _children((p, st.frontier))
            else:
                step = max(1, -(-len(st.frontier) // (4 * workers)))
                chunks = [(p, st.frontier[k:k + step]) for k in range(0, len(st.frontier), step)]
                kids, nodes = {}, 0
                for part, cnt in pool.map(_children, chunks):
                    kids.update(part)
                    nodes += cnt
            st.nodes += nodes
            st.level += 1
            st.frontier = sorted(
                (g for g in kids.values() if _keep(p, g, st.floor)), key=_witness_order
            )
            st.levels.append(len(st.frontier))
            if checkpoint is not None:
                _write_checkpoint(checkpoint, p, st)
    finally:
        if pool is not None:
            pool.shutdown()

    best = -1
    wits: list[Graph] = []
    for g in st.frontier:
        c = p.count(g)
        if c > best:
            best, wits = c, [g]
        elif c == best:
            wits.append(g)
    return SearchResult(p, best, sorted(wits, key=_witness_order), st.nodes, levels=st.levels)


def solve(
    p: SearchProblem, workers: int = 1, checkpoint: Path | None = None, prune: bool = True
) -> SearchResult:
    """ex(n, T, F) with every extremal isomorphism class.

    ``prune=False`` disables the density prune (augmentation mode only) and
    visits every F-free class; it exists to cross-check the prune.
    """
    t0 = time.perf_counter()
    if p.mode == "exhaustive":
        res = _solve_exhaustive(p)
    else:
        res = _solve_augmentation(p, workers, checkpoint, prune)
    res.elapsed = time.perf_counter() - t0
    for w in res.witnesses:
        if not p.is_free(w) or count_subgraphs(p.target, w) != res.optimum:
            raise AssertionError("search returned an invalid witness")
    return res


@dataclass
class ZykovResult:
    result: SearchResult
    turan: Graph

    @property
    def witness_is_turan(self) -> bool:
        return any(is_isomorphic(w, self.turan) for w in self.result.witnesses)

    @property
    def unique(self) -> bool:
        return self.result.num_classes == 1 and self.witness_is_turan


def solve_zykov(n: int, t: int, q: int, mode: str = "augmentation", workers: int = 1) -> ZykovResult:
    """ex(n, K_t, K_q) and whether T_{q-1}(n) is its unique maximizer."""
    if t >= q:
        raise SearchError("need t < q")
    if t < 1:
        raise SearchError("need t >= 1")
    p = SearchProblem(n, Graph.complete(t), Graph.complete(q), mode)
    return ZykovResult(solve(p, workers), turan_graph(TuranSpec(q - 1, n)))


# ---------------------------------------------------------------------------
# local improvement


def _rebalance_moves(g: Graph) -> Iterable[Graph]:
    classes = multipartite_classes(g)
    if classes is None:
        return
    for a in classes:
        for b in classes:
            if len(a) >= len(b) + 2:
                # moving a vertex from a to b is cloning a member of b over it
                yield clone_replace(g, b[0], a[0])


def local_improve(g: Graph, r: int, max_rounds: int = 1000) -> Graph:
    """Hill-climb nu(P3, .) with clone moves and part rebalancing, staying K_{r+1}-free."""
    if clique_number(g) > r:
        raise SearchError(f"start graph is not K_{r + 1}-free")
    cur, val = g, count_p3_fast(g)
    for _ in range(max_rounds):
        best, best_val = None, val
        cands: list[Graph] = list(_rebalance_moves(cur))
        cands += [clone_replace(cur, u, v) for u in range(cur.n) for v in range(cur.n) if u != v]
        for h in cands:
            hv = count_p3_fast(h)
            if hv > best_val and clique_number(h) <= r:
                best, best_val = h, hv
        if best is None:
            return cur
        cur, val = best, best_val
    return cur


def write_witnesses(res: SearchResult, path: Path) -> None:
    with path.open("w") as fh:
        graph6.write_lines(res.witnesses, fh)


def read_witnesses(path: Path) -> list[Graph]:
    with path.open() as fh:
        return graph6.read_lines(fh)
