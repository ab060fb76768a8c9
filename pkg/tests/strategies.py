"""Hypothesis strategies for small random graphs and Tanner graphs."""

import itertools

import numpy as np
from hypothesis import strategies as st

from ramanujan_ldpc.graph import Graph, TannerGraph


@st.composite
def simple_graphs(draw, max_vertices=12, min_vertices=1):
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return Graph(n, np.array(chosen, dtype=np.int64).reshape(-1, 2))


@st.composite
def tanner_graphs(draw, max_n=12, max_m=8, min_n=1):
    n = draw(st.integers(min_n, max_n))
    m = draw(st.integers(1, max_m))
    cells = list(itertools.product(range(n), range(m)))
    chosen = draw(st.lists(st.sampled_from(cells), unique=True, max_size=len(cells)))
    return TannerGraph(n, m, np.array(chosen, dtype=np.int64).reshape(-1, 2))


def random_simple_graph(rng: np.random.Generator, max_vertices=12) -> Graph:
    n = int(rng.integers(1, max_vertices + 1))
    p = rng.uniform(0.1, 0.7)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, np.array(pairs, dtype=np.int64).reshape(-1, 2))


def random_tanner(rng: np.random.Generator, max_n=12, max_m=8) -> TannerGraph:
    n = int(rng.integers(1, max_n + 1))
    m = int(rng.integers(1, max_m + 1))
    h = (rng.random((m, n)) < rng.uniform(0.15, 0.6)).astype(np.uint8)
    return TannerGraph.from_parity_matrix(h)


@st.composite
def ddps(draw, min_degree=2, max_terms=3, max_degree=12, min_check_degree=2):
    """Random edge-perspective pairs with rational coefficients."""
    from fractions import Fraction

    from ramanujan_ldpc.ddp import DegreeDistributionPair

    def side(lo):
        degs = draw(st.lists(st.integers(lo, max_degree), min_size=1, max_size=max_terms, unique=True))
        weights = [draw(st.integers(1, 9)) for _ in degs]
        total = sum(weights)
        return {d: Fraction(w, total) for d, w in zip(degs, weights)}

    return DegreeDistributionPair(side(min_degree), side(min_check_degree))
