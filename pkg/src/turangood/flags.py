"""Flags over a fully labelled type: densities, products and unlabelling.

A flag is stored canonically: its labelled vertices are ``0..k-1`` in label
order and the remaining vertices are in canonical order under permutations
that fix the labels pointwise. Flag equality is therefore flag isomorphism.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, perm
from typing import Iterable, Iterator, Mapping, Union

from .exactmath import RationalFunction, rf
from .graphs import Graph, canonical_labelling, f4_basis, family_order

MAX_FLAG_ORDER = 8


class TypeMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class Type:
    graph: Graph
    name: str = field(default="", compare=False)

    @property
    def k(self) -> int:
        return self.graph.n


SIGMA0 = Type(Graph.empty(0), "empty")
SIGMA1 = Type(Graph.empty(2), "nonedge")
SIGMA2 = Type(Graph.complete(2), "edge")


@dataclass(frozen=True)
class Flag:
    graph: Graph
    k: int

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def type(self) -> Type:
        return Type(self.graph.induced(range(self.k)))

    def sort_key(self) -> tuple:
        return family_order(self.graph)

    def __repr__(self) -> str:
        return f"Flag(k={self.k}, n={self.n}, edges={self.graph.edges()})"


def make_flag(g: Graph, theta: Iterable[int] = ()) -> Flag:
    """Canonical flag of ``g`` with label ``i`` on vertex ``theta[i]``."""
    theta = list(theta)
    if len(set(theta)) != len(theta):
        raise ValueError("embedding must be injective")
    rest = [v for v in range(g.n) if v not in theta]
    h = g.induced(theta + rest)
    k = len(theta)
    cells = [[i] for i in range(k)] + ([list(range(k, g.n))] if g.n > k else [])
    _, rows = canonical_labelling(h, cells)
    return Flag(Graph(g.n, rows), k)


def type_as_flag(t: Type) -> Flag:
    return make_flag(t.graph, range(t.k))


def _check_type(*flags: Flag) -> None:
    first = flags[0]
    for f in flags[1:]:
        if f.k != first.k or f.graph.induced(range(f.k)) != first.graph.induced(range(first.k)):
            raise TypeMismatchError("flags are over different types")


@lru_cache(maxsize=None)
def enumerate_flags(t: Type, n: int) -> tuple[Flag, ...]:
    """All ``t``-flags on ``n`` vertices up to flag isomorphism."""
    if n < t.k:
        raise ValueError(f"flags over a {t.k}-vertex type need n >= {t.k}")
    if n > MAX_FLAG_ORDER:
        raise ValueError(f"flag enumeration supports n <= {MAX_FLAG_ORDER}")
    if n == t.k:
        return (type_as_flag(t),)
    seen: dict[Flag, None] = {}
    for parent in enumerate_flags(t, n - 1):
        for nbrs in range(1 << (n - 1)):
            child = make_flag(parent.graph.add_vertex(nbrs), range(t.k))
            seen.setdefault(child)
    return tuple(sorted(seen, key=Flag.sort_key))


def flag_density(h: Flag, g: Flag) -> Fraction:
    """Probability that a random ``(|h|-k)``-set of unlabelled vertices of ``g`` induces ``h``."""
    _check_type(h, g)
    k = h.k
    if h.n > g.n:
        return Fraction(0)
    labels = list(range(k))
    hits = 0
    for xs in itertools.combinations(range(k, g.n), h.n - k):
        if make_flag(g.graph.induced(labels + list(xs)), labels) == h:
            hits += 1
    return Fraction(hits, comb(g.n - k, h.n - k))


def _pair_counts(g: Flag, a: int, b: int) -> dict[tuple[Flag, Flag], int]:
    """Counts of (flag on X1, flag on X2) over ordered disjoint (a, b)-sets."""
    k = g.k
    labels = list(range(k))
    free = range(k, g.n)
    sub: dict[tuple[int, ...], Flag] = {}

    def cls(xs: tuple[int, ...]) -> Flag:
        f = sub.get(xs)
        if f is None:
            f = sub[xs] = make_flag(g.graph.induced(labels + list(xs)), labels)
        return f

    out: dict[tuple[Flag, Flag], int] = {}
    for x1 in itertools.combinations(free, a):
        rest = [v for v in free if v not in x1]
        f1 = cls(x1)
        for x2 in itertools.combinations(rest, b):
            key = (f1, cls(tuple(sorted(x2))))
            out[key] = out.get(key, 0) + 1
    return out


def joint_density(h: Flag, j: Flag, g: Flag) -> Fraction:
    """Probability that disjoint random sets realise ``h`` and ``j`` simultaneously."""
    _check_type(h, j, g)
    k = g.k
    a, b = h.n - k, j.n - k
    if a + b > g.n - k:
        raise ValueError("joint density needs |h| + |j| - k <= |g|")
    total = comb(g.n - k, a) * comb(g.n - k - a, b)
    return Fraction(_pair_counts(g, a, b).get((h, j), 0), total)


def labelling_probability(f: Flag) -> Fraction:
    """Probability that a uniformly random injective labelling of ``f``'s graph gives ``f``."""
    k = f.k
    hits = sum(
        1 for theta in itertools.permutations(range(f.n), k) if make_flag(f.graph, theta) == f
    )
    return Fraction(hits, perm(f.n, k))


# ---------------------------------------------------------------------------
# formal linear combinations

Scalar = Union[RationalFunction, int, Fraction]


class FlagVector:
    """Finite combination of flags over one type with RationalFunction coefficients."""

    __slots__ = ("type", "coeffs")

    def __init__(self, t: Type, coeffs: Mapping[Flag, Scalar] | None = None) -> None:
        self.type = t
        clean: dict[Flag, RationalFunction] = {}
        for f, c in (coeffs or {}).items():
            if f.k != t.k or f.graph.induced(range(f.k)) != t.graph:
                raise TypeMismatchError(f"{f!r} is not a flag over {t!r}")
            c = rf(c)
            if not c.is_zero():
                clean[f] = c
        orders = {f.n for f in clean}
        if len(orders) > 1:
            raise ValueError("all flags in a FlagVector must have the same order")
        self.coeffs = clean

    @classmethod
    def single(cls, f: Flag, c: Scalar = 1) -> "FlagVector":
        return cls(f.type, {f: c})

    @property
    def n(self) -> int | None:
        return next(iter(self.coeffs)).n if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __iter__(self) -> Iterator[tuple[Flag, RationalFunction]]:
        return iter(sorted(self.coeffs.items(), key=lambda kv: kv[0].sort_key()))

    def __getitem__(self, f: Flag) -> RationalFunction:
        return self.coeffs.get(f, rf(0))

    def _same_type(self, other: "FlagVector") -> None:
        if other.type.graph != self.type.graph:
            raise TypeMismatchError("flag vectors over different types")

    def __add__(self, other: "FlagVector") -> "FlagVector":
        self._same_type(other)
        out = dict(self.coeffs)
        for f, c in other.coeffs.items():
            out[f] = out[f] + c if f in out else c
        return FlagVector(self.type, out)

    def __neg__(self) -> "FlagVector":
        return FlagVector(self.type, {f: -c for f, c in self.coeffs.items()})

    def __sub__(self, other: "FlagVector") -> "FlagVector":
        return self + (-other)

    def scale(self, s: Scalar) -> "FlagVector":
        s = rf(s)
        return FlagVector(self.type, {f: c * s for f, c in self.coeffs.items()})

    def __mul__(self, other: "FlagVector | Scalar") -> "FlagVector":
        if isinstance(other, FlagVector):
            return flag_product(self, other)
        return self.scale(other)

    def __rmul__(self, other: Scalar) -> "FlagVector":
        return self.scale(other)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FlagVector)
            and other.type.graph == self.type.graph
            and self.coeffs == other.coeffs
        )

    def __repr__(self) -> str:
        terms = ", ".join(f"{c.render()}: {f.graph.edges()}" for f, c in self)
        return f"FlagVector({self.type.name or self.type.graph}, {{{terms}}})"


def flag_product(a: FlagVector, b: FlagVector) -> FlagVector:
    """Product expanded over flags on ``|a| + |b| - k`` vertices."""
    a._same_type(b)
    if a.is_zero() or b.is_zero():
        return FlagVector(a.type)
    k = a.type.k
    na, nb = a.n, b.n
    assert na is not None and nb is not None
    n = na + nb - k
    total = comb(n - k, na - k)
    out: dict[Flag, RationalFunction] = {}
    for h in enumerate_flags(a.type, n):
        acc = rf(0)
        for (f, g), cnt in _pair_counts(h, na - k, nb - k).items():
            if f in a.coeffs and g in b.coeffs:
                acc = acc + a.coeffs[f] * b.coeffs[g] * Fraction(cnt, total)
        if not acc.is_zero():
            out[h] = acc
    return FlagVector(a.type, out)


def unlabel(a: FlagVector) -> FlagVector:
    """Average out the labels: each flag becomes ``q(F) * F'`` over the empty type."""
    out: dict[Flag, RationalFunction] = {}
    for f, c in a.coeffs.items():
        g = make_flag(f.graph)
        term = c * labelling_probability(f)
        out[g] = out[g] + term if g in out else term
    return FlagVector(SIGMA0, out)


def square_expand(a: FlagVector, scale: Scalar = 1) -> FlagVector:
    """``scale * unlabel(a * a)``."""
    if a.is_zero():
        return FlagVector(SIGMA0)
    return unlabel(flag_product(a, a)).scale(scale)


def f4_coefficients(v: FlagVector) -> list[RationalFunction]:
    """Coefficients of an empty-type vector on the pinned 4-vertex basis F0..F10."""
    if v.type.k != 0:
        raise TypeMismatchError("expected a vector over the empty type")
    if v.n not in (None, 4):
        raise ValueError("expected a vector over 4-vertex graphs")
    return [v[Flag(g, 0)] for g in f4_basis()]


def from_f4_coefficients(coeffs: list[Scalar]) -> FlagVector:
    return FlagVector(SIGMA0, {Flag(g, 0): c for g, c in zip(f4_basis(), coeffs)})


def evaluate_on_graph(v: FlagVector, g: Graph, r: int | Fraction) -> Fraction:
    """``sum_F coeff_F(r) * P(F, g)`` for an empty-type vector."""
    from .graphs import induced_profile

    if v.is_zero():
        return Fraction(0)
    assert v.n is not None
    prof = induced_profile(g, v.n)
    return sum(
        (c(r) * prof.get((f.n, f.graph.adj), Fraction(0)) for f, c in v.coeffs.items()),
        Fraction(0),
    )
