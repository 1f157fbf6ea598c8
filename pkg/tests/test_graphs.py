import itertools
import random
from fractions import Fraction
from math import comb

import pytest

from turangood.graphs import (
    F4_NAMES,
    P3,
    TIGHT_F4,
    Graph,
    GraphSizeError,
    brute_canonical_key,
    canonical_form,
    canonical_key,
    clique_number,
    count_subgraphs,
    enumerate_graphs,
    f4_basis,
    f4_densities,
    find_induced_cocherry,
    induced_density,
    induced_profile,
    is_isomorphic,
    is_kq_free,
    multipartite_parts,
)
from turangood.turan import TuranSpec, turan_graph


def random_graph(rng, n, p=0.5):
    return Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def all_labelled(n):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [e for k, e in enumerate(pairs) if mask >> k & 1])


PAW = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)])
DIAMOND = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
COCHERRY = Graph.from_edges(3, [(0, 1)])


def test_graph_rejects_bad_adjacency():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))  # asymmetric
    with pytest.raises(ValueError):
        Graph(2, (0b01, 0))  # loop
    with pytest.raises(ValueError):
        Graph(2, (0b100, 0))  # neighbour out of range
    with pytest.raises(GraphSizeError):
        Graph.empty(33)


def test_path_relabelings_share_canonical_form():
    forms = {canonical_form(P3.relabel(p)).graph for p in itertools.permutations(range(4))}
    assert len(forms) == 1


def test_canonical_form_is_idempotent_and_order_is_consistent():
    rng = random.Random(1)
    for _ in range(50):
        g = random_graph(rng, rng.randint(1, 9))
        c = canonical_form(g)
        assert canonical_form(c.graph).graph == c.graph
        assert g.relabel(list(c.order)) == c.graph


def test_canonical_form_invariant_under_all_permutations():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(1, 6)
        g = random_graph(rng, n, rng.random())
        key = canonical_key(g)
        for perm in itertools.permutations(range(n)):
            assert canonical_key(g.relabel(perm)) == key


def test_canonical_key_agrees_with_permutation_oracle():
    # the two keys pick different representatives; they must induce the same classes
    for n in range(0, 6):
        graphs = list(all_labelled(n))
        fast = {}
        brute = {}
        for i, g in enumerate(graphs):
            fast.setdefault(canonical_key(g), set()).add(i)
            brute.setdefault(brute_canonical_key(g), set()).add(i)
        assert sorted(map(sorted, fast.values())) == sorted(map(sorted, brute.values()))
    rng = random.Random(3)
    for _ in range(40):
        g = random_graph(rng, 7, rng.random())
        h = g.relabel(rng.sample(range(7), 7)) if rng.random() < 0.5 else random_graph(rng, 7, rng.random())
        assert (canonical_key(g) == canonical_key(h)) == (brute_canonical_key(g) == brute_canonical_key(h))


def test_class_counts_match_brute_force():
    for n in range(0, 6):
        brute = {brute_canonical_key(g) for g in all_labelled(n)}
        assert len(enumerate_graphs(n)) == len(brute)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156), (7, 1044)])
def test_enumeration_counts(n, count):
    assert len(enumerate_graphs(n)) == count


def test_enumeration_is_deterministic_and_distinct():
    fam = enumerate_graphs(5)
    assert len({g.adj for g in fam}) == len(fam)
    assert [fam.index(g) for g in fam] == list(range(len(fam)))


def test_enumeration_size_limit():
    with pytest.raises(GraphSizeError):
        enumerate_graphs(9)
    with pytest.raises(GraphSizeError):
        enumerate_graphs(-1)


def test_f4_basis_signatures():
    basis = f4_basis()
    assert len(basis) == 11
    assert [count_subgraphs(P3, f) for f in basis] == [0, 0, 0, 0, 0, 0, 1, 2, 4, 6, 12]
    assert [F4_NAMES[i] for i in TIGHT_F4] == ["empty", "K1,3", "C4", "diamond", "K4"]
    assert is_isomorphic(basis[7], PAW)
    assert is_isomorphic(basis[9], DIAMOND)
    assert is_isomorphic(basis[6], P3)


def _brute_p3(g):
    # ordered vertex sequences w-x-y-z with the three path edges, halved for reversal
    total = 0
    for w, x, y, z in itertools.permutations(range(g.n), 4):
        if g.has_edge(w, x) and g.has_edge(x, y) and g.has_edge(y, z):
            total += 1
    return total // 2


def test_count_subgraphs_examples():
    assert count_subgraphs(P3, Graph.complete(4)) == 12
    assert count_subgraphs(P3, Graph.empty(4)) == 0
    k222 = turan_graph(TuranSpec(3, 6))
    assert count_subgraphs(P3, k222) == 84 == _brute_p3(k222)
    assert count_subgraphs(Graph.complete(5), Graph.complete(4)) == 0


def test_count_subgraphs_triangles_and_edges():
    rng = random.Random(11)
    for _ in range(30):
        g = random_graph(rng, rng.randint(3, 9))
        tri = sum(1 for a, b, c in itertools.combinations(range(g.n), 3)
                  if g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c))
        assert count_subgraphs(Graph.complete(3), g) == tri
        assert count_subgraphs(Graph.complete(2), g) == g.num_edges()


def test_induced_density_examples():
    assert induced_density(Graph.complete(4), Graph.complete(5)) == 1
    assert induced_density(COCHERRY, PAW) == Fraction(1, 4)
    assert induced_density(Graph.complete(5), Graph.complete(4)) == 0


def test_f4_densities_sum_to_one():
    rng = random.Random(5)
    for _ in range(30):
        g = random_graph(rng, rng.randint(4, 9), rng.random())
        assert sum(f4_densities(g)) == 1


def test_law_of_total_probability_for_four_vertex_targets():
    rng = random.Random(9)
    basis = f4_basis()
    for _ in range(20):
        g = random_graph(rng, rng.randint(4, 8), rng.random())
        dens = f4_densities(g)
        for t in basis:
            lhs = Fraction(count_subgraphs(t, g), comb(g.n, 4))
            rhs = sum(d * count_subgraphs(t, f) for d, f in zip(dens, basis))
            assert lhs == rhs


def test_chain_rule_three_through_four():
    rng = random.Random(13)
    threes = list(enumerate_graphs(3))
    fours = list(enumerate_graphs(4))
    for _ in range(20):
        g = random_graph(rng, rng.randint(4, 7), rng.random())
        prof4 = induced_profile(g, 4)
        for f in threes:
            direct = induced_density(f, g)
            via = sum(induced_density(f, h) * prof4.get(canonical_key(h), 0) for h in fours)
            assert direct == via


def test_cocherry_examples():
    assert find_induced_cocherry(Graph.cycle(4)) is None
    assert find_induced_cocherry(Graph.empty(5)) is None
    tri = find_induced_cocherry(PAW)
    assert tri is not None
    a, b, c = tri
    assert PAW.has_edge(a, b) + PAW.has_edge(a, c) + PAW.has_edge(b, c) == 1


def test_multipartite_parts_examples():
    assert multipartite_parts(turan_graph(TuranSpec(3, 6))) == (2, 2, 2)
    assert multipartite_parts(DIAMOND) == (2, 1, 1)
    assert multipartite_parts(P3) is None
    assert multipartite_parts(Graph.empty(3)) == (3,)


def test_cocherry_iff_multipartite_up_to_seven():
    for n in range(0, 8):
        for g in enumerate_graphs(n):
            assert (find_induced_cocherry(g) is None) == (multipartite_parts(g) is not None)


def test_clique_number_examples():
    assert clique_number(turan_graph(TuranSpec(4, 8))) == 4
    assert clique_number(Graph.cycle(5)) == 2
    assert clique_number(DIAMOND) == 3
    assert clique_number(Graph.empty(0)) == 0
    assert clique_number(Graph.empty(3)) == 1


def test_clique_number_against_brute_force():
    rng = random.Random(17)
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 9), rng.random())
        best = max(
            (k for k in range(1, g.n + 1) for s in itertools.combinations(range(g.n), k)
             if all(g.has_edge(u, v) for u, v in itertools.combinations(s, 2))),
            default=0,
        )
        assert clique_number(g) == best
        for q in range(1, 6):
            assert is_kq_free(g, q) == (best < q)


def test_p3_count_monotone_under_edge_addition():
    rng = random.Random(19)
    for _ in range(40):
        g = random_graph(rng, rng.randint(4, 8), 0.4)
        non_edges = [e for e in itertools.combinations(range(g.n), 2) if not g.has_edge(*e)]
        if non_edges:
            u, v = rng.choice(non_edges)
            assert count_subgraphs(P3, g.with_edge(u, v)) >= count_subgraphs(P3, g)
