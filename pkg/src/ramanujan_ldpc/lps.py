"""Lubotzky-Phillips-Sarnak Cayley graphs X^{p,q}.

Vertices are projective 2x2 matrices over Z/q reached from the identity by
left multiplication with the p + 1 generator matrices built from the
four-square representations of p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import number_theory as nt
from .errors import InternalConsistencyError, InvalidParameters
from .graph import Graph, girth, is_connected, two_coloring


@dataclass(frozen=True)
class LpsParameters:
    p: int
    q: int
    residue: int
    expected_order: int
    girth_lower_bound: float

    @classmethod
    def create(cls, p: int, q: int) -> "LpsParameters":
        for name, val in (("p", p), ("q", q)):
            if not nt.is_prime(val) or val % 4 != 1:
                raise InvalidParameters(f"{name}={val} must be a prime congruent to 1 mod 4")
        if p == q:
            raise InvalidParameters("p and q must be distinct")
        if q * q <= 4 * p:
            raise InvalidParameters(f"q={q} must exceed 2*sqrt(p)={2 * math.sqrt(p):.4f}")
        residue = nt.legendre(p, q)
        order = q * (q * q - 1)
        if residue == 1:
            order //= 2
            bound = 2 * math.log(q, p)
        else:
            bound = 4 * math.log(q, p) - math.log(4, p)
        return cls(p, q, residue, order, bound)

    @property
    def degree(self) -> int:
        return self.p + 1

    @property
    def bipartite(self) -> bool:
        return self.residue == -1

    @property
    def girth_bound_int(self) -> int:
        """Smallest integer girth compatible with the bound."""
        return math.ceil(self.girth_lower_bound - 1e-12)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "residue": self.residue,
            "expected_order": self.expected_order,
            "girth_lower_bound": self.girth_lower_bound,
        }


def canonicalize(mats: np.ndarray, q: int) -> np.ndarray:
    """Scale each row ``(m00, m01, m10, m11)`` so its first nonzero entry is 1."""
    mats = np.asarray(mats, dtype=np.int64) % q
    inv = np.zeros(q, dtype=np.int64)
    inv[1:] = [pow(int(x), -1, q) for x in range(1, q)]
    first = np.argmax(mats != 0, axis=1)
    lead = mats[np.arange(len(mats)), first]
    if np.any(lead == 0):
        raise InternalConsistencyError("zero matrix in projective group")
    return mats * inv[lead][:, None] % q


def generator_matrices(p: int, q: int) -> np.ndarray:
    """Canonical generator matrices, one per quaternion solution, in the
    lexicographic order of the solutions."""
    x = nt.sqrt_minus_one(q)
    rows = [
        (a + b * x, c + d * x, -c + d * x, a - b * x)
        for a, b, c, d in nt.quaternion_solutions(p)
    ]
    return canonicalize(np.array(rows, dtype=np.int64), q)


def _mul(gen: np.ndarray, mats: np.ndarray, q: int) -> np.ndarray:
    """``gen @ m`` for every row ``m`` of ``mats``."""
    a, b, c, d = gen
    m0, m1, m2, m3 = mats.T
    return np.stack([a * m0 + b * m2, a * m1 + b * m3, c * m0 + d * m2, c * m1 + d * m3], axis=1) % q


def _keys(mats: np.ndarray, q: int) -> np.ndarray:
    return ((mats[:, 0] * q + mats[:, 1]) * q + mats[:, 2]) * q + mats[:, 3]


def _check_inverse_closed(gens: np.ndarray, q: int) -> None:
    keys = set(_keys(gens, q).tolist())
    for g in gens:
        a, b, c, d = (int(v) for v in g)
        # adjugate is a scalar multiple of the inverse
        adj = canonicalize(np.array([[d, -b, -c, a]]), q)
        if int(_keys(adj, q)[0]) not in keys:
            raise InternalConsistencyError("generator set is not closed under inversion")


def lps_graph(params: LpsParameters) -> Graph:
    """Build X^{p,q} by breadth-first closure from the identity.

    Vertex ids follow discovery order, scanning parents in id order and
    generators in lexicographic order; edge ids follow the same scan.
    """
    p, q = params.p, params.q
    gens = generator_matrices(p, q)
    if len(np.unique(_keys(gens, q))) != len(gens):
        raise InternalConsistencyError("generator matrices are not distinct")
    _check_inverse_closed(gens, q)
    n_gens = len(gens)

    identity = np.array([[1, 0, 0, 1]], dtype=np.int64)
    index = {int(_keys(identity, q)[0]): 0}
    blocks = [identity]
    frontier = identity
    while len(frontier):
        prods = np.stack([canonicalize(_mul(g, frontier, q), q) for g in gens], axis=1).reshape(-1, 4)
        fresh = []
        for row, key in enumerate(_keys(prods, q).tolist()):
            if key not in index:
                index[key] = len(index)
                fresh.append(row)
        frontier = prods[fresh]
        if len(frontier):
            blocks.append(frontier)
    verts = np.concatenate(blocks)
    n = len(verts)
    if n != params.expected_order:
        raise InternalConsistencyError(f"closure has {n} vertices, expected {params.expected_order}")

    keys = _keys(verts, q)
    order = np.argsort(keys)
    nbr = np.empty((n, n_gens), dtype=np.int64)
    for j, g in enumerate(gens):
        k = _keys(canonicalize(_mul(g, verts, q), q), q)
        nbr[:, j] = order[np.searchsorted(keys[order], k)]
    src = np.repeat(np.arange(n), n_gens)
    if np.any(nbr.reshape(-1) == src):
        raise InternalConsistencyError("self-loop in Cayley graph")
    srt = np.sort(nbr, axis=1)
    if np.any(srt[:, 1:] == srt[:, :-1]):
        raise InternalConsistencyError("multi-edge in Cayley graph")
    dst = nbr.reshape(-1)
    keep = src < dst
    edges = np.stack([src[keep], dst[keep]], axis=1)
    if 2 * len(edges) != n * n_gens:
        raise InternalConsistencyError("Cayley graph is not undirected")
    return Graph(n, edges)


@dataclass(frozen=True)
class LpsReport:
    regular: bool
    order_ok: bool
    bipartite_matches_residue: bool
    girth_measured: int | None
    girth_bound_ok: bool
    connected: bool

    @property
    def all_ok(self) -> bool:
        return all((self.regular, self.order_ok, self.bipartite_matches_residue, self.girth_bound_ok, self.connected))


def verify_lps(g: Graph, params: LpsParameters) -> LpsReport:
    """Exact structural checks of a graph against the X^{p,q} guarantees."""
    gr = girth(g, witness=False).girth
    return LpsReport(
        regular=g.is_regular(params.degree),
        order_ok=g.n_vertices == params.expected_order,
        bipartite_matches_residue=(two_coloring(g) is not None) == params.bipartite,
        girth_measured=gr,
        girth_bound_ok=gr is None or gr >= params.girth_bound_int,
        connected=is_connected(g),
    )
