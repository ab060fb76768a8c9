import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ramanujan_ldpc.errors import InvalidFactor, InvalidPlan
from ramanujan_ldpc.graph import ACYCLIC, girth, graph_from_edges, is_bipartite, is_connected, two_coloring
from ramanujan_ldpc.lps import LpsParameters, lps_graph
from ramanujan_ldpc.transforms import (
    DETERMINISTIC,
    RANDOM,
    SplitPlan,
    bipartite_double,
    plan_split,
    split_all,
    split_vertex,
    split_vertices,
)

from .oracles import girth_by_edge_deletion
from .strategies import simple_graphs


def cycle(n):
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def _gir(g):
    return girth_by_edge_deletion(g.n_vertices, g.edges)


def test_double_cover_examples():
    tri = bipartite_double(cycle(3))
    assert tri.n_vertices == 6 and girth(tri).girth == 6 and is_connected(tri)
    edge = bipartite_double(graph_from_edges(2, [(0, 1)]))
    assert edge.n_vertices == 4 and edge.edge_count == 2 and not is_connected(edge)
    assert sorted(map(tuple, edge.edges.tolist())) == [(0, 3), (1, 2)]
    hexes = bipartite_double(cycle(6))
    assert hexes.n_vertices == 12 and not is_connected(hexes) and girth(hexes).girth == 6


def test_plan_split_deterministic_blocks():
    # star with edge ids placed so vertex 0 has incident ids {2, 4, 7, 9}
    rows = []
    nxt = 1
    for e in range(10):
        if e in (2, 4, 7, 9):
            rows.append((0, nxt))
        else:
            rows.append((nxt, nxt + 1))
            nxt += 1
        nxt += 1
    g = graph_from_edges(nxt, rows)
    assert sorted(g.incident_edges(0).tolist()) == [2, 4, 7, 9]
    plan = plan_split(g, 0, 2)
    assert plan.parts == ((2, 4), (7, 9))


def test_split_vertex_examples():
    g = graph_from_edges(7, [(0, i) for i in range(1, 7)])
    h = split_vertex(g, plan_split(g, 0, 2))
    assert sorted(h.degrees.tolist()) == [1] * 6 + [3, 3] and h.edge_count == 6
    c = cycle(5)
    broken = split_vertex(c, plan_split(c, 0, 2))
    assert girth(broken).girth is ACYCLIC


def test_split_vertex_rejects_bad_plans():
    g = cycle(4)
    with pytest.raises(InvalidPlan):
        split_vertex(g, SplitPlan(0, ((0,), (0,))))
    with pytest.raises(InvalidPlan):
        split_vertex(g, SplitPlan(0, ((0,),)))
    with pytest.raises(InvalidFactor):
        plan_split(g, 0, 3)


def test_split_all_examples():
    g = lps_graph(LpsParameters.create(5, 13))
    assert split_all(g, 1) == g
    h = split_all(g, 2)
    assert h.n_vertices == 4368 and h.is_regular(3) and girth(h, witness=False).girth >= 6
    with pytest.raises(InvalidFactor):
        split_all(g, 4)
    hr = split_all(g, 2, RANDOM, seed=3)
    assert hr == split_all(g, 2, RANDOM, seed=3) and hr.is_regular(3)


@settings(max_examples=150)
@given(simple_graphs(max_vertices=12), st.integers(0, 2**32 - 1))
def test_transforms_preserve_girth_and_edges(g, seed):
    base = _gir(g)
    d = bipartite_double(g)
    assert _gir(d) >= base
    assert d.edge_count == 2 * g.edge_count and two_coloring(d) is not None and d.is_simple
    rng = np.random.default_rng(seed)
    deg = g.degrees
    candidates = [v for v in range(g.n_vertices) if deg[v] >= 2]
    if candidates:
        v = int(rng.choice(candidates))
        divisors = [k for k in range(2, int(deg[v]) + 1) if deg[v] % k == 0]
        k = int(rng.choice(divisors))
        mode = RANDOM if seed % 2 else DETERMINISTIC
        h = split_vertex(g, plan_split(g, v, k, mode, seed))
        assert _gir(h) >= base
        assert h.edge_count == g.edge_count and h.degrees.sum() == g.degrees.sum() and h.is_simple


@settings(max_examples=60)
@given(simple_graphs(max_vertices=10), st.integers(0, 1000))
def test_split_vertices_matches_sequential(g, seed):
    """The batched split equals vertex-by-vertex splitting up to relabeling."""
    factors = np.ones(g.n_vertices, dtype=np.int64)
    for v in range(g.n_vertices):
        if g.degrees[v] >= 2 and g.degrees[v] % 2 == 0:
            factors[v] = 2
    fast = split_vertices(g, factors)
    seq = g
    alive = list(range(g.n_vertices))  # current id of each original vertex
    for v in range(g.n_vertices):
        if factors[v] > 1:
            cur = alive.index(v)
            seq = split_vertex(seq, plan_split(seq, cur, int(factors[v])))
            alive.pop(cur)
            alive += [None] * int(factors[v])
    assert fast.n_vertices == seq.n_vertices
    assert sorted(fast.degrees.tolist()) == sorted(seq.degrees.tolist())
    assert _gir(fast) == _gir(seq)
    assert is_bipartite(fast) == is_bipartite(seq)
