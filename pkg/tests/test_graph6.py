import io
import itertools
import random

import pytest
from hypothesis import given, strategies as st

from turangood.graph6 import Graph6Error, decode, encode, read_lines, write_lines
from turangood.graphs import Graph


def test_known_strings():
    assert encode(Graph.complete(4)) == "C~"
    assert encode(Graph.path(3)) == "Ch"
    assert encode(Graph.empty(0)) == "?"
    assert decode("C~") == Graph.complete(4)
    assert decode(">>graph6<<Ch") == Graph.path(3)


@st.composite
def graphs(draw, max_n=32):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, b in zip(pairs, bits) if b])


@given(graphs())
def test_round_trip(g):
    assert decode(encode(g)) == g


def test_round_trip_text_file():
    rng = random.Random(0)
    gs = [Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.4])
          for n in range(1, 12)]
    buf = io.StringIO()
    write_lines(gs, buf)
    buf.seek(0)
    assert read_lines(io.StringIO("# comment\n" + buf.getvalue())) == gs


@pytest.mark.parametrize("bad", ["", "C", "C~~", "C\x7f", "B~"])
def test_rejects_malformed(bad):
    # "B~" sets padding bits past the three edge slots of an order-3 graph
    with pytest.raises(Graph6Error):
        decode(bad)
