"""Brute-force reference computations shared by several test modules."""

import itertools
from fractions import Fraction


def attachment_weights(j, r):
    """(type is a non-edge, weight by (adjacent to label 1, adjacent to label 2)) for square j."""
    if j == 1:
        return True, {(False, False): r - 1, (True, True): -1}
    if j == 2:
        return False, {(False, True): 1, (True, False): -1}
    return False, {(False, True): r - 2, (True, False): r - 2, (True, True): -2}


def square_value(j, g, r):
    """Six times square j evaluated on g, averaging pair products over ordered labellings."""
    nonedge, weight = attachment_weights(j, r)
    total = Fraction(0)
    labellings = list(itertools.permutations(range(g.n), 2))
    for u, v in labellings:
        if g.has_edge(u, v) == nonedge:
            continue
        free = [x for x in range(g.n) if x not in (u, v)]
        w = {x: weight.get((g.has_edge(u, x), g.has_edge(v, x)), 0) for x in free}
        pairs = list(itertools.permutations(free, 2))
        total += Fraction(sum(w[x] * w[y] for x, y in pairs), len(pairs))
    return 6 * total / len(labellings)


def p3_count(g):
    """Ordered walks w-x-y-z on distinct vertices along edges, halved for reversal."""
    total = 0
    for w, x, y, z in itertools.permutations(range(g.n), 4):
        if g.has_edge(w, x) and g.has_edge(x, y) and g.has_edge(y, z):
            total += 1
    return total // 2
