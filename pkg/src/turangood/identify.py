"""Identify the named 3-vertex flags A, B, C, D, E by matching expansions.

The squares are fixed in shape:

    P1 = 6 [[((r-1) A - B)^2]]              over the non-edge type
    P2 = 6 [[(C - D)^2]]                    over the edge type
    P3 = 6 [[((r-2) C + (r-2) D - 2 E)^2]]  over the edge type

Every ordered choice of distinct flags is expanded and compared entry by entry
against the transcribed targets in :mod:`turangood.reference`. The winning
assignment is frozen in a text fixture shipped with the package.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

from . import graph6, reference
from .exactmath import R, RationalFunction, rf
from .flags import (
    SIGMA1,
    SIGMA2,
    Flag,
    FlagVector,
    Type,
    enumerate_flags,
    f4_coefficients,
    flag_product,
    make_flag,
    square_expand,
    unlabel,
)
from .graphs import Graph

FIXTURE_VERSION = 1
FIXTURE_NAME = "flag_identification.txt"
SCALE = 6


def square_shapes() -> dict[int, tuple[Type, tuple[str, ...], tuple[RationalFunction, ...]]]:
    """Square index -> (type, flag names, coefficients in r)."""
    one = rf(1)
    return {
        1: (SIGMA1, ("A", "B"), (rf(R - 1), -one)),
        2: (SIGMA2, ("C", "D"), (one, -one)),
        3: (SIGMA2, ("C", "D", "E"), (rf(R - 2), rf(R - 2), rf(-2))),
    }


@lru_cache(maxsize=None)
def _product_table(t: Type) -> dict[tuple[Flag, Flag], tuple[Fraction, ...]]:
    """unlabel(f * g) on F0..F10 for every pair of 3-vertex flags of ``t``."""
    basis = enumerate_flags(t, 3)
    out = {}
    for f, g in itertools.product(basis, repeat=2):
        vec = unlabel(flag_product(FlagVector.single(f), FlagVector.single(g)))
        out[f, g] = tuple(c(0) for c in f4_coefficients(vec))
    return out


def fast_square(t: Type, flags: tuple[Flag, ...], coeffs: tuple[RationalFunction, ...]) -> list[RationalFunction]:
    """Same as ``square_expand`` but via the cached pairwise product table."""
    table = _product_table(t)
    acc = [rf(0)] * 11
    for (f, a), (g, b) in itertools.product(zip(flags, coeffs), repeat=2):
        ab = a * b * SCALE
        for i, q in enumerate(table[f, g]):
            if q:
                acc[i] = acc[i] + ab * q
    return acc


def expand_square(t: Type, flags: tuple[Flag, ...], coeffs: tuple[RationalFunction, ...]) -> list[RationalFunction]:
    """First-principles expansion: combine, multiply, unlabel, collect."""
    a = FlagVector(t, {})
    for f, c in zip(flags, coeffs):
        a = a + FlagVector.single(f, c)
    return f4_coefficients(square_expand(a, SCALE))


def mismatches(vec: list[RationalFunction], target: list[RationalFunction]) -> list[int]:
    return [i for i, (x, y) in enumerate(zip(vec, target)) if x != y]


@dataclass
class Identification:
    flags: dict[str, Flag]
    expansions: dict[int, list[RationalFunction]]
    discrepancies: dict[int, list[int]]
    best_score: int
    # assignments reaching best_score, as name -> flag maps
    optimal: list[dict[str, Flag]]
    # optimal assignments after quotienting by symmetries that fix every square
    distinct_optimal: int

    @property
    def exact(self) -> bool:
        return self.best_score == 0

    @property
    def unique(self) -> bool:
        return self.distinct_optimal == 1


def _edge_type_symmetric(a: dict[str, Flag], b: dict[str, Flag]) -> bool:
    # P2 and P3 are both invariant under C <-> D
    return a["E"] == b["E"] and {a["C"], a["D"]} == {b["C"], b["D"]}


def identify() -> Identification:
    """Search every ordered assignment and score it against the targets."""
    shapes = square_shapes()
    targets = {j: reference.expansion(j) for j in shapes}

    t1, _, c1 = shapes[1]
    scored1 = []
    for a, b in itertools.permutations(enumerate_flags(t1, 3), 2):
        bad = mismatches(fast_square(t1, (a, b), c1), targets[1])
        scored1.append((len(bad), {"A": a, "B": b}))

    scored2 = []
    for c, d, e in itertools.permutations(enumerate_flags(SIGMA2, 3), 3):
        bad = len(mismatches(fast_square(SIGMA2, (c, d), shapes[2][2]), targets[2]))
        bad += len(mismatches(fast_square(SIGMA2, (c, d, e), shapes[3][2]), targets[3]))
        scored2.append((bad, {"C": c, "D": d, "E": e}))

    best1 = min(s for s, _ in scored1)
    best2 = min(s for s, _ in scored2)
    opt1 = [m for s, m in scored1 if s == best1]
    opt2 = [m for s, m in scored2 if s == best2]
    classes2: list[dict[str, Flag]] = []
    for m in opt2:
        if not any(_edge_type_symmetric(m, k) for k in classes2):
            classes2.append(m)

    chosen = {**opt1[0], **classes2[0]}
    expansions = {}
    discrepancies = {}
    for j, (t, names, coeffs) in shapes.items():
        vec = expand_square(t, tuple(chosen[x] for x in names), coeffs)
        expansions[j] = vec
        discrepancies[j] = mismatches(vec, targets[j])
    return Identification(
        flags=chosen,
        expansions=expansions,
        discrepancies=discrepancies,
        best_score=best1 + best2,
        optimal=[{**x, **y} for x in opt1 for y in opt2],
        distinct_optimal=len(opt1) * len(classes2),
    )


# ---------------------------------------------------------------------------
# fixture


def _flag_line(name: str, f: Flag) -> str:
    return f"flag {name} k={f.k} graph6={graph6.encode(f.graph)}"


def render_fixture(ident: Identification) -> str:
    lines = ["# flag identification fixture", f"version {FIXTURE_VERSION}"]
    for name in ("A", "B", "C", "D", "E"):
        lines.append(_flag_line(name, ident.flags[name]))
    for j in sorted(ident.expansions):
        for i, c in enumerate(ident.expansions[j]):
            if not c.is_zero():
                lines.append(f"P{j} F{i} {c.render()}")
    return "\n".join(lines) + "\n"


def fixture_path() -> Path:
    return Path(str(resources.files("turangood") / "data" / FIXTURE_NAME))


def write_fixture(ident: Identification, path: Path | None = None) -> Path:
    path = path or fixture_path()
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_fixture(ident))
    return path


@dataclass
class Fixture:
    flags: dict[str, Flag]
    expansions: dict[int, list[RationalFunction]]
    sha256: str


class FixtureError(ValueError):
    pass


def load_fixture(path: Path | None = None) -> Fixture:
    path = path or fixture_path()
    text = path.read_text()
    flags: dict[str, Flag] = {}
    expansions: dict[int, list[RationalFunction]] = {}
    version = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        if head == "version":
            version = int(rest)
        elif head == "flag":
            name, k, g6 = rest.split()
            g = graph6.decode(g6.removeprefix("graph6="))
            flags[name] = make_flag(g, range(int(k.removeprefix("k="))))
        elif head.startswith("P"):
            idx, expr = rest.split(" ", 1)
            vec = expansions.setdefault(int(head[1:]), [rf(0)] * 11)
            vec[int(idx[1:])] = reference.rf(expr)
        else:
            raise FixtureError(f"unrecognised fixture line: {raw!r}")
    if version != FIXTURE_VERSION:
        raise FixtureError(f"fixture version {version}, expected {FIXTURE_VERSION}")
    return Fixture(flags, expansions, hashlib.sha256(text.encode()).hexdigest())


def fixture_flags() -> dict[str, Flag]:
    return load_fixture().flags


def named_square(j: int, flags: dict[str, Flag] | None = None) -> list[RationalFunction]:
    """Expansion of square ``j`` from first principles using the frozen flags."""
    flags = flags or fixture_flags()
    t, names, coeffs = square_shapes()[j]
    return expand_square(t, tuple(flags[x] for x in names), coeffs)


def flag_by_attachment(t: Type, attach: tuple[bool, bool]) -> Flag:
    """3-vertex flag whose free vertex is adjacent to the labels flagged in ``attach``."""
    edges = [(i, 2) for i in range(2) if attach[i]]
    if t.graph.has_edge(0, 1):
        edges.append((0, 1))
    return make_flag(Graph.from_edges(3, edges), (0, 1))
