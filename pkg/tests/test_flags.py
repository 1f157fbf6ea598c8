import itertools
import random
from fractions import Fraction
from math import comb

import pytest

from turangood.exactmath import rf
from turangood.flags import (
    SIGMA0,
    SIGMA1,
    SIGMA2,
    Flag,
    FlagVector,
    TypeMismatchError,
    enumerate_flags,
    evaluate_on_graph,
    flag_density,
    flag_product,
    joint_density,
    labelling_probability,
    make_flag,
    square_expand,
    type_as_flag,
    unlabel,
)
from turangood.graphs import Graph, f4_basis
from turangood.identify import flag_by_attachment
from turangood.turan import TuranSpec, turan_graph

C = flag_by_attachment(SIGMA2, (False, True))  # free vertex on label 2 only
D = flag_by_attachment(SIGMA2, (True, False))
E = flag_by_attachment(SIGMA2, (True, True))
LONE = flag_by_attachment(SIGMA2, (False, False))


def random_graph(rng, n, p=0.5):
    return Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def test_flag_counts():
    assert len(enumerate_flags(SIGMA0, 4)) == 11
    assert len(enumerate_flags(SIGMA1, 3)) == 4
    assert len(enumerate_flags(SIGMA2, 3)) == 4
    assert len(enumerate_flags(SIGMA1, 4)) == 20
    assert len(enumerate_flags(SIGMA2, 4)) == 20
    assert enumerate_flags(SIGMA2, 2) == (type_as_flag(SIGMA2),)
    with pytest.raises(ValueError):
        enumerate_flags(SIGMA2, 1)
    with pytest.raises(ValueError):
        enumerate_flags(SIGMA0, 9)


def test_empty_type_flags_are_the_four_vertex_basis():
    assert {f.graph for f in enumerate_flags(SIGMA0, 4)} == {make_flag(g).graph for g in f4_basis()}


def test_make_flag_respects_labels():
    path = Graph.path(3)  # 0-1-2-3
    assert make_flag(path, (1, 2)) == make_flag(path.relabel([3, 2, 1, 0]), (2, 1))
    assert make_flag(path, (0, 1)) != make_flag(path, (1, 2))
    with pytest.raises(ValueError):
        make_flag(path, (1, 1))


def test_worked_density_example():
    # labelled edge 0-1; vertex 2 on label 1, vertex 3 on label 2, vertex 4 on both
    g = make_flag(Graph.from_edges(5, [(0, 1), (0, 2), (1, 3), (0, 4), (1, 4)]), (0, 1))
    for f in (C, D, E):
        assert flag_density(f, g) == Fraction(1, 3)
    assert flag_density(LONE, g) == 0


def test_densities_are_probabilities():
    rng = random.Random(2)
    for _ in range(15):
        g = random_graph(rng, rng.randint(4, 7))
        if not g.has_edge(0, 1):
            g = g.with_edge(0, 1)
        host = make_flag(g, (0, 1))
        for m in (3, 4):
            ds = [flag_density(h, host) for h in enumerate_flags(SIGMA2, m)]
            assert all(0 <= d <= 1 for d in ds)
            assert sum(ds) == 1


def test_joint_density_with_the_bare_type_is_the_flag_density():
    rng = random.Random(4)
    bare = type_as_flag(SIGMA2)
    for _ in range(10):
        g = random_graph(rng, 6).with_edge(0, 1)
        host = make_flag(g, (0, 1))
        for h in enumerate_flags(SIGMA2, 3):
            assert joint_density(h, bare, host) == flag_density(h, host)


def test_joint_density_against_brute_force():
    rng = random.Random(6)
    for _ in range(8):
        g = random_graph(rng, 6).with_edge(0, 1)
        host = make_flag(g, (0, 1))
        free = range(2, 6)
        pairs = [(x, y) for x, y in itertools.permutations(free, 2)]
        for h, j in itertools.product(enumerate_flags(SIGMA2, 3), repeat=2):
            hits = sum(
                make_flag(g.induced([0, 1, x]), (0, 1)) == h and make_flag(g.induced([0, 1, y]), (0, 1)) == j
                for x, y in pairs
            )
            assert joint_density(h, j, host) == Fraction(hits, len(pairs))


def test_product_example():
    prod = FlagVector.single(C) * FlagVector.single(D)
    p4 = make_flag(Graph.from_edges(4, [(0, 1), (1, 2), (0, 3)]), (0, 1))
    c4 = make_flag(Graph.from_edges(4, [(0, 1), (1, 2), (0, 3), (2, 3)]), (0, 1))
    assert prod == FlagVector(SIGMA2, {p4: Fraction(1, 2), c4: Fraction(1, 2)})


def test_product_is_commutative_and_bilinear():
    flags = enumerate_flags(SIGMA1, 3)
    rng = random.Random(8)

    def vec():
        return FlagVector(SIGMA1, {f: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for f in flags})

    for _ in range(5):
        a, b, c = vec(), vec(), vec()
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a * 3) * b == (a * b) * 3
    assert flag_product(FlagVector(SIGMA1), vec()).is_zero()


def test_all_ones_square_measures_the_type():
    rng = random.Random(10)
    def edge_density(g):
        return Fraction(g.num_edges(), comb(g.n, 2))

    for t, want in ((SIGMA1, lambda g: 1 - edge_density(g)), (SIGMA2, edge_density)):
        ones = FlagVector(t, {f: 1 for f in enumerate_flags(t, 3)})
        sq = unlabel(ones * ones)
        for _ in range(5):
            g = random_graph(rng, rng.randint(4, 8))
            assert evaluate_on_graph(sq, g, 0) == want(g)
    ones0 = FlagVector(SIGMA0, {f: 1 for f in enumerate_flags(SIGMA0, 2)})
    # 1 * 1 = 1, written over the 4-vertex basis
    assert unlabel(ones0 * ones0) == FlagVector(SIGMA0, {f: 1 for f in enumerate_flags(SIGMA0, 4)})


def test_unlabel_examples():
    c4 = make_flag(Graph.cycle(4), (0, 1))
    out = unlabel(FlagVector.single(c4))
    assert list(out) == [(make_flag(Graph.cycle(4)), rf(Fraction(4, 6)))]
    assert labelling_probability(c4) == Fraction(2, 3)
    assert unlabel(FlagVector(SIGMA2)).is_zero()


def test_type_mismatch():
    a = FlagVector.single(flag_by_attachment(SIGMA1, (True, False)))
    b = FlagVector.single(C)
    with pytest.raises(TypeMismatchError):
        a + b
    with pytest.raises(TypeMismatchError):
        a * b
    with pytest.raises(TypeMismatchError):
        flag_density(C, make_flag(Graph.empty(4), (0, 1)))
    with pytest.raises(TypeMismatchError):
        FlagVector(SIGMA1, {C: 1})


def _one_vertex_gap_bound(host: Flag) -> Fraction:
    m = host.n - host.k
    return Fraction(1, 4 * (m - 1))


def test_joint_minus_product_bound_on_turan_flags():
    worst = Fraction(0)
    for r in (2, 3, 4):
        for n in range(4, 9):
            g = turan_graph(TuranSpec(r, n))
            for theta in ((0, 1), (0, r) if r < n else (0, 1)):
                host = make_flag(g, theta)
                t = host.type
                flags = enumerate_flags(t, 3)
                for h, j in itertools.product(flags, repeat=2):
                    gap = abs(joint_density(h, j, host) - flag_density(h, host) * flag_density(j, host))
                    assert gap <= _one_vertex_gap_bound(host)
                    worst = max(worst, gap * 4 * (host.n - 3))
    assert worst == 1  # attained, so the constant cannot be lowered


def test_joint_minus_product_bound_on_random_flags():
    rng = random.Random(12)
    for _ in range(30):
        g = random_graph(rng, rng.randint(4, 8), rng.random())
        host = make_flag(g, (0, 1))
        flags = enumerate_flags(host.type, 3)
        for h, j in itertools.product(flags, repeat=2):
            gap = abs(joint_density(h, j, host) - flag_density(h, host) * flag_density(j, host))
            assert gap <= _one_vertex_gap_bound(host)


def _square_by_labellings(a: FlagVector, g: Graph, scale: int) -> Fraction:
    """Average over ordered vertex pairs of the labelled joint expectation."""
    total = Fraction(0)
    pairs = list(itertools.permutations(range(g.n), 2))
    for theta in pairs:
        host = make_flag(g, theta)
        if host.type.graph != a.type.graph:
            continue
        for (f, cf), (h, ch) in itertools.product(a, repeat=2):
            total += cf(0) * ch(0) * joint_density(f, h, host)
    return scale * total / len(pairs)


def test_square_evaluation_matches_labelled_average_and_bound():
    rng = random.Random(14)
    for _ in range(12):
        t = rng.choice([SIGMA1, SIGMA2])
        a = FlagVector(t, {f: Fraction(rng.randint(-3, 3)) for f in enumerate_flags(t, 3)})
        if a.is_zero():
            continue
        g = random_graph(rng, rng.randint(4, 7), rng.random())
        value = evaluate_on_graph(square_expand(a, 6), g, 0)
        assert value == _square_by_labellings(a, g, 6)
        biggest = max(c(0) ** 2 for _, c in a)
        assert value >= -6 * biggest / (g.n - 3)
