"""Girth-nondecreasing graph transforms: bipartite double cover and vertex splitting."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidFactor, InvalidPlan
from .graph import Graph

DETERMINISTIC = "deterministic"
RANDOM = "random"


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None:
        raise InvalidPlan("random splitting needs an explicit seed")
    return np.random.default_rng(seed)


def bipartite_double(g: Graph) -> Graph:
    """Bipartite double cover.

    Copy-0 keeps vertex ids, copy-1 is offset by ``g.n_vertices``. Edge ``e =
    (u, v)`` becomes edges ``2e = (u, v')`` and ``2e+1 = (v, u')``.
    """
    n = g.n_vertices
    u, v = g.edges[:, 0], g.edges[:, 1]
    edges = np.empty((2 * g.edge_count, 2), dtype=np.int64)
    edges[0::2, 0], edges[0::2, 1] = u, v + n
    edges[1::2, 0], edges[1::2, 1] = v, u + n
    return Graph(2 * n, edges)


@dataclass(frozen=True)
class SplitPlan:
    target_vertex: int
    parts: tuple[tuple[int, ...], ...]
    mode: str = DETERMINISTIC
    seed: Optional[int] = None


def plan_split(g: Graph, v: int, n_parts: int, mode: str = DETERMINISTIC, seed=None) -> SplitPlan:
    """Equal-size partition of the edges at ``v``.

    Deterministic mode cuts the ascending edge-id list into consecutive
    blocks; random mode shuffles it first.
    """
    inc = np.sort(g.incident_edges(v))
    if n_parts < 1 or len(inc) % n_parts:
        raise InvalidFactor(f"degree {len(inc)} of vertex {v} is not divisible by {n_parts}")
    if mode == RANDOM:
        inc = _rng(seed).permutation(inc)
    elif mode != DETERMINISTIC:
        raise InvalidPlan(f"unknown split mode {mode!r}")
    size = len(inc) // n_parts
    parts = tuple(tuple(int(e) for e in inc[i * size : (i + 1) * size]) for i in range(n_parts))
    return SplitPlan(int(v), parts, mode, seed if not isinstance(seed, np.random.Generator) else None)


def split_vertex(g: Graph, plan: SplitPlan) -> Graph:
    """Replace ``plan.target_vertex`` by one new vertex per part.

    Remaining vertices keep their relative order (ids above the target shift
    down by one); the new vertices are appended in part order. Edge ids are
    unchanged.
    """
    v = plan.target_vertex
    if not 0 <= v < g.n_vertices:
        raise InvalidPlan(f"vertex {v} out of range")
    incident = sorted(g.incident_edges(v).tolist())
    flat = sorted(e for part in plan.parts for e in part)
    if flat != incident or any(len(part) == 0 for part in plan.parts):
        raise InvalidPlan("parts do not partition the incident edges")
    if len({len(part) for part in plan.parts}) > 1:
        raise InvalidPlan("only equal-size parts are supported")
    n = g.n_vertices
    relabel = np.arange(n, dtype=np.int64)
    relabel[v + 1 :] -= 1
    edges = relabel[g.edges]
    base = n - 1
    for j, part in enumerate(plan.parts):
        for e in part:
            col = 0 if g.edges[e, 0] == v else 1
            edges[e, col] = base + j
    return Graph(n - 1 + len(plan.parts), edges)


def split_vertices(g: Graph, factors: Sequence[int], mode: str = DETERMINISTIC, seed=None,
                   order: Optional[np.ndarray] = None) -> Graph:
    """Split every vertex ``u`` into ``factors[u]`` equal-degree vertices at once.

    New ids are assigned vertex by vertex following ``order`` (default: id
    order), each vertex's parts consecutively. Equivalent, up to relabeling,
    to applying :func:`split_vertex` to each vertex in turn.
    """
    n = g.n_vertices
    factors = np.asarray(factors, dtype=np.int64)
    if factors.shape != (n,) or np.any(factors < 1):
        raise InvalidFactor("need one positive split factor per vertex")
    deg = g.degrees
    if np.any(deg % factors):
        bad = int(np.flatnonzero(deg % factors)[0])
        raise InvalidFactor(f"degree {int(deg[bad])} of vertex {bad} is not divisible by {int(factors[bad])}")
    if order is None:
        order = np.arange(n, dtype=np.int64)
    order = np.asarray(order, dtype=np.int64)
    offset = np.empty(n, dtype=np.int64)
    offset[order] = np.concatenate([[0], np.cumsum(factors[order])[:-1]])

    indptr, eids = g.indptr, g.incident_edge_ids
    pos = np.arange(len(eids), dtype=np.int64) - np.repeat(indptr[:-1], deg)
    if mode == RANDOM:
        rng = _rng(seed)
        for u in order.tolist():
            lo, hi = indptr[u], indptr[u + 1]
            pos[lo:hi] = rng.permutation(hi - lo)
    elif mode != DETERMINISTIC:
        raise InvalidPlan(f"unknown split mode {mode!r}")
    owner = np.repeat(np.arange(n, dtype=np.int64), deg)
    block = pos // np.repeat(deg // np.maximum(factors, 1), deg)
    new_id = offset[owner] + block
    col = np.where(g.edges[eids, 0] == owner, 0, 1)
    edges = np.empty_like(g.edges)
    edges[eids, col] = new_id
    return Graph(int(factors.sum()), edges)


def split_all(g: Graph, s: int, mode: str = DETERMINISTIC, seed=None) -> Graph:
    """Split each vertex into ``s`` vertices; vertex ``u`` becomes ``u*s .. u*s+s-1``."""
    if s < 1:
        raise InvalidFactor("split factor must be positive")
    if np.any(g.degrees % s):
        raise InvalidFactor(f"not every degree is divisible by {s}")
    return split_vertices(g, np.full(g.n_vertices, s, dtype=np.int64), mode, seed)
