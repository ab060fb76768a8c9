"""Graph and Tanner graph containers, girth, connectivity, alist I/O.

Graphs are immutable: the edge array is stored read-only and every
transform builds a new object. Edge ``e`` is row ``e`` of ``edges``; each
vertex lists its incident edges in ascending edge id.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, TextIO, Union

import numba
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import AlistParseError, AlistValidationError, InvalidArgument, LdpcError

#: Sentinel girth of a forest.
ACYCLIC = None


def _csr(n_vertices: int, edges: np.ndarray):
    """Per-vertex incidence lists ordered by edge id."""
    n_edges = len(edges)
    ends = edges.reshape(-1)  # (u0, v0, u1, v1, ...)
    eids = np.repeat(np.arange(n_edges, dtype=np.int64), 2)
    other = edges[:, ::-1].reshape(-1)
    order = np.argsort(ends, kind="stable")
    counts = np.bincount(ends, minlength=n_vertices)
    indptr = np.zeros(n_vertices + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, other[order].astype(np.int64), eids[order]


def _readonly(arr):
    arr = np.ascontiguousarray(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


class Graph:
    """Undirected graph on vertices ``0..n_vertices-1`` with stable edge ids."""

    def __init__(self, n_vertices: int, edges):
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if n_vertices < 0:
            raise InvalidArgument("negative vertex count")
        if len(edges):
            if edges.min() < 0 or edges.max() >= n_vertices:
                raise InvalidArgument("edge endpoint out of range")
            if np.any(edges[:, 0] == edges[:, 1]):
                raise InvalidArgument("self-loops are not allowed")
        self.n_vertices = int(n_vertices)
        self.edges = _readonly(edges)

    def __repr__(self):
        return f"Graph(n_vertices={self.n_vertices}, edge_count={self.edge_count})"

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n_vertices == other.n_vertices
            and np.array_equal(self.edges, other.edges)
        )

    __hash__ = None

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def _incidence(self):
        return tuple(_readonly(a) for a in _csr(self.n_vertices, self.edges))

    @property
    def indptr(self) -> np.ndarray:
        return self._incidence[0]

    @property
    def neighbor_ids(self) -> np.ndarray:
        return self._incidence[1]

    @property
    def incident_edge_ids(self) -> np.ndarray:
        return self._incidence[2]

    @cached_property
    def degrees(self) -> np.ndarray:
        return _readonly(np.diff(self.indptr))

    def adjacency(self, v: int) -> list[tuple[int, int]]:
        """Ordered ``(neighbor, edge id)`` pairs of vertex ``v``."""
        lo, hi = self.indptr[v], self.indptr[v + 1]
        return list(zip(self.neighbor_ids[lo:hi].tolist(), self.incident_edge_ids[lo:hi].tolist()))

    def incident_edges(self, v: int) -> np.ndarray:
        return self.incident_edge_ids[self.indptr[v] : self.indptr[v + 1]]

    def neighbors(self, v: int) -> np.ndarray:
        return self.neighbor_ids[self.indptr[v] : self.indptr[v + 1]]

    def is_simple(self) -> bool:
        if self.edge_count == 0:
            return True
        key = np.sort(self.edges, axis=1)
        return len(np.unique(key, axis=0)) == self.edge_count

    def is_regular(self, k: Optional[int] = None) -> bool:
        if self.n_vertices == 0:
            return True
        d = self.degrees
        target = d[0] if k is None else k
        return bool(np.all(d == target))


@dataclass(frozen=True)
class GirthReport:
    """Girth (``None`` for forests) and a shortest cycle as a vertex list."""

    girth: Optional[int]
    witness_cycle: Optional[tuple[int, ...]] = None

    @property
    def acyclic(self) -> bool:
        return self.girth is None

    def at_least(self, bound: float) -> bool:
        return self.girth is None or self.girth >= bound


@numba.njit(cache=True)
def _girth_kernel(n, indptr, nbr, eid):
    big = 1 << 60
    best = big
    best_root = -1
    dist = np.full(n, -1, dtype=np.int64)
    parent_edge = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    touched = np.empty(n, dtype=np.int64)
    for root in range(n):
        head = 0
        tail = 0
        n_touched = 0
        dist[root] = 0
        queue[tail] = root
        tail += 1
        touched[n_touched] = root
        n_touched += 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if 2 * du + 1 >= best:
                break
            for k in range(indptr[u], indptr[u + 1]):
                e = eid[k]
                if e == parent_edge[u]:
                    continue
                w = nbr[k]
                if dist[w] < 0:
                    dist[w] = du + 1
                    parent_edge[w] = e
                    queue[tail] = w
                    tail += 1
                    touched[n_touched] = w
                    n_touched += 1
                else:
                    length = du + dist[w] + 1
                    if length < best:
                        best = length
                        best_root = root
        for i in range(n_touched):
            dist[touched[i]] = -1
            parent_edge[touched[i]] = -1
        if best == 3:
            break
    if best == big:
        return -1, -1
    return best, best_root


def _witness(g: Graph, root: int, target: int) -> tuple[int, ...]:
    """Simple cycle of length ``target`` through ``root`` from a BFS tree."""
    dist = {root: 0}
    parent = {root: (-1, -1)}
    q = deque([root])
    while q:
        u = q.popleft()
        for w, e in g.adjacency(u):
            if e == parent[u][1]:
                continue
            if w not in dist:
                dist[w] = dist[u] + 1
                parent[w] = (u, e)
                q.append(w)
            elif dist[u] + dist[w] + 1 == target:
                left = [u]
                while left[-1] != root:
                    left.append(parent[left[-1]][0])
                right = [w]
                while right[-1] != root:
                    right.append(parent[right[-1]][0])
                return tuple(left[::-1] + right[:-1])
    raise AssertionError("girth witness not found")  # pragma: no cover


def girth(g: "Graph | TannerGraph", witness: bool = True) -> GirthReport:
    """Exact girth by breadth-first search from every vertex.

    Each search stops once no shorter cycle can be closed, so the cost on
    large-girth graphs stays near ``V * (tree size at depth girth/2)``.
    """
    if isinstance(g, TannerGraph):
        g = g.to_graph()
    if g.edge_count == 0:
        return GirthReport(None)
    best, root = _girth_kernel(g.n_vertices, g.indptr, g.neighbor_ids, g.incident_edge_ids)
    if best < 0:
        return GirthReport(None)
    return GirthReport(int(best), _witness(g, int(root), int(best)) if witness else None)


def is_connected(g: "Graph | TannerGraph") -> bool:
    if isinstance(g, TannerGraph):
        g = g.to_graph()
    if g.n_vertices <= 1:
        return True
    return components(g)[0] == 1


def components(g: Graph) -> tuple[int, np.ndarray]:
    """Number of connected components and per-vertex labels."""
    adj = csr_matrix(
        (np.ones(g.edge_count, dtype=np.int8), (g.edges[:, 0], g.edges[:, 1])),
        shape=(g.n_vertices, g.n_vertices),
    )
    return connected_components(adj, directed=False)


def two_coloring(g: Graph) -> Optional[np.ndarray]:
    """A proper 2-coloring (0/1 per vertex, each component rooted at its
    smallest vertex with color 0), or ``None`` if the graph has an odd cycle."""
    color = np.full(g.n_vertices, -1, dtype=np.int8)
    indptr, nbr = g.indptr.tolist(), g.neighbor_ids.tolist()
    for s in range(g.n_vertices):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            cu = color[u]
            for k in range(indptr[u], indptr[u + 1]):
                w = nbr[k]
                if color[w] < 0:
                    color[w] = 1 - cu
                    stack.append(w)
                elif color[w] == cu:
                    return None
    return color


def is_bipartite(g: Graph) -> bool:
    return two_coloring(g) is not None


class TannerGraph:
    """Bipartite graph between ``n`` variables and ``m`` checks.

    Edges are ``(variable, check)`` rows kept in lexicographic order, which
    fixes edge ids and the per-node neighbor order used by the alist format.
    ``ddp`` optionally records the declared degree profile; when present the
    realized degrees must match it exactly.
    """

    def __init__(self, n: int, m: int, edges, ddp=None):
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if len(edges):
            if edges[:, 0].min() < 0 or edges[:, 0].max() >= n:
                raise InvalidArgument("variable index out of range")
            if edges[:, 1].min() < 0 or edges[:, 1].max() >= m:
                raise InvalidArgument("check index out of range")
            order = np.lexsort((edges[:, 1], edges[:, 0]))
            edges = edges[order]
        self.n = int(n)
        self.m = int(m)
        self.edges = _readonly(edges)
        self.ddp = ddp
        if ddp is not None:
            try:
                realized = self.degree_distribution()
            except LdpcError as exc:
                raise InvalidArgument(f"realized degrees do not form a profile: {exc}") from None
            if realized != ddp:
                raise InvalidArgument(f"realized degree profile {realized} differs from declared {ddp}")

    def __repr__(self):
        return f"TannerGraph(n={self.n}, m={self.m}, edge_count={self.edge_count})"

    def __eq__(self, other):
        return (
            isinstance(other, TannerGraph)
            and (self.n, self.m) == (other.n, other.m)
            and np.array_equal(self.edges, other.edges)
        )

    __hash__ = None

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def variable_degrees(self) -> np.ndarray:
        return _readonly(np.bincount(self.edges[:, 0], minlength=self.n))

    @cached_property
    def check_degrees(self) -> np.ndarray:
        return _readonly(np.bincount(self.edges[:, 1], minlength=self.m))

    @cached_property
    def _var_csr(self):
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(self.variable_degrees, out=indptr[1:])
        return _readonly(indptr), _readonly(self.edges[:, 1])

    @cached_property
    def _check_csr(self):
        order = np.argsort(self.edges[:, 1], kind="stable")
        indptr = np.zeros(self.m + 1, dtype=np.int64)
        np.cumsum(self.check_degrees, out=indptr[1:])
        return _readonly(indptr), _readonly(self.edges[order, 0])

    def variable_neighbors(self, v: int) -> np.ndarray:
        indptr, nbr = self._var_csr
        return nbr[indptr[v] : indptr[v + 1]]

    def check_neighbors(self, c: int) -> np.ndarray:
        indptr, nbr = self._check_csr
        return nbr[indptr[c] : indptr[c + 1]]

    def to_graph(self) -> Graph:
        """Plain graph with variables ``0..n-1`` and checks ``n..n+m-1``."""
        return Graph(self.n + self.m, self.edges + np.array([0, self.n]))

    @classmethod
    def from_graph(cls, g: Graph, left: np.ndarray, ddp=None) -> "TannerGraph":
        """Relabel a bipartite graph: ``left`` marks variable vertices, numbered
        in increasing vertex id, and the rest become checks likewise."""
        left = np.asarray(left, dtype=bool)
        u, v = g.edges[:, 0], g.edges[:, 1]
        if np.any(left[u] == left[v]):
            raise InvalidArgument("graph is not bipartite with respect to the given sides")
        var_id = np.cumsum(left) - 1
        chk_id = np.cumsum(~left) - 1
        var = np.where(left[u], var_id[u], var_id[v])
        chk = np.where(left[u], chk_id[v], chk_id[u])
        return cls(int(left.sum()), int((~left).sum()), np.stack([var, chk], axis=1), ddp=ddp)

    @classmethod
    def from_parity_matrix(cls, h) -> "TannerGraph":
        """Tanner graph of a dense 0/1 parity-check matrix (checks are rows)."""
        h = np.asarray(h)
        rows, cols = np.nonzero(h % 2)
        return cls(h.shape[1], h.shape[0], np.stack([cols, rows], axis=1))

    def parity_matrix(self) -> np.ndarray:
        """Dense ``m x n`` 0/1 matrix; repeated edges cancel modulo 2."""
        h = np.zeros((self.m, self.n), dtype=np.uint8)
        np.add.at(h, (self.edges[:, 1], self.edges[:, 0]), 1)
        return h % 2

    def sparse_matrix(self):
        """``m x n`` CSR incidence matrix with int32 entries."""
        return csr_matrix(
            (np.ones(self.edge_count, dtype=np.int32), (self.edges[:, 1], self.edges[:, 0])),
            shape=(self.m, self.n),
        )

    def degree_distribution(self):
        from .ddp import DegreeDistributionPair

        return DegreeDistributionPair.from_degrees(self.variable_degrees, self.check_degrees)

    @property
    def rate(self) -> float:
        return 1.0 - self.m / self.n if self.n else 0.0


@dataclass(frozen=True)
class NeighborhoodTree:
    """Degree counts of a tree-shaped decoding neighborhood.

    ``variable_counts`` counts the root and every non-leaf variable by degree;
    ``check_counts`` counts checks by degree.
    """

    root_degree: int
    depth: int
    variable_counts: dict = field(default_factory=dict)
    check_counts: dict = field(default_factory=dict)


def neighborhood_tree(tg: TannerGraph, root_variable: int, t: int) -> Optional[NeighborhoodTree]:
    """Unroll the depth-``t`` neighborhood of a variable.

    Returns ``None`` when a vertex is reached twice, i.e. the neighborhood
    contains a cycle of length at most ``4t``.
    """
    if not 0 <= root_variable < tg.n:
        raise InvalidArgument("root variable out of range")
    if t < 0:
        raise InvalidArgument("depth must be nonnegative")
    var_deg = tg.variable_degrees
    chk_deg = tg.check_degrees
    root_degree = int(var_deg[root_variable])
    vcounts = {root_degree: 1}
    ccounts: dict = {}
    seen_v = {root_variable}
    seen_c = set()
    frontier = [(root_variable, -1)]  # (variable, parent check)
    for level in range(1, t + 1):
        next_frontier = []
        for v, parent in frontier:
            for c in tg.variable_neighbors(v).tolist():
                if c == parent:
                    continue
                if c in seen_c:
                    return None
                seen_c.add(c)
                dc = int(chk_deg[c])
                ccounts[dc] = ccounts.get(dc, 0) + 1
                for w in tg.check_neighbors(c).tolist():
                    if w == v:
                        continue
                    if w in seen_v:
                        return None
                    seen_v.add(w)
                    next_frontier.append((w, c))
                    if level < t:
                        dw = int(var_deg[w])
                        vcounts[dw] = vcounts.get(dw, 0) + 1
        frontier = next_frontier
    return NeighborhoodTree(root_degree, t, vcounts, ccounts)


# --- alist ---------------------------------------------------------------


def write_alist(tg: TannerGraph, sink: Union[str, TextIO, None] = None) -> Optional[str]:
    """Write ``tg`` in alist format to a path or text stream.

    With ``sink=None`` the text is returned instead.
    """
    dv = tg.variable_degrees
    dc = tg.check_degrees
    dvmax = int(dv.max()) if tg.n else 0
    dcmax = int(dc.max()) if tg.m else 0
    lines = [f"{tg.n} {tg.m}", f"{dvmax} {dcmax}", " ".join(map(str, dv.tolist())), " ".join(map(str, dc.tolist()))]
    for v in range(tg.n):
        row = (tg.variable_neighbors(v) + 1).tolist() + [0] * (dvmax - int(dv[v]))
        lines.append(" ".join(map(str, row)))
    for c in range(tg.m):
        row = (tg.check_neighbors(c) + 1).tolist() + [0] * (dcmax - int(dc[c]))
        lines.append(" ".join(map(str, row)))
    text = "\n".join(lines) + "\n"
    if sink is None:
        return text
    if isinstance(sink, str):
        with open(sink, "w") as fh:
            fh.write(text)
    else:
        sink.write(text)
    return None


def _ints(line: str, lineno: int, expected: Optional[int] = None) -> list[int]:
    try:
        vals = [int(tok) for tok in line.split()]
    except ValueError:
        raise AlistParseError(f"non-integer token in {line!r}", lineno) from None
    if expected is not None and len(vals) != expected:
        raise AlistParseError(f"expected {expected} integers, found {len(vals)}", lineno)
    return vals


def read_alist(source: Union[str, TextIO]) -> TannerGraph:
    """Parse alist text from a path, a stream, or a string holding the text."""
    if isinstance(source, str):
        if "\n" in source:
            text = source
        else:
            with open(source) as fh:
                text = fh.read()
    else:
        text = source.read()
    lines = text.splitlines()
    if len(lines) < 4:
        raise AlistParseError("truncated header", len(lines) + 1)
    n, m = _ints(lines[0], 1, 2)
    dvmax, dcmax = _ints(lines[1], 2, 2)
    if n < 0 or m < 0:
        raise AlistParseError("negative dimensions", 1)
    dv = _ints(lines[2], 3, n)
    dc = _ints(lines[3], 4, m)
    if len(lines) < 4 + n + m:
        raise AlistParseError(f"expected {n + m} neighbor lines, found {len(lines) - 4}", len(lines) + 1)
    if any(d > dvmax or d < 0 for d in dv) or any(d > dcmax or d < 0 for d in dc):
        raise AlistValidationError("a node degree exceeds the declared maximum")
    edges = []
    for v in range(n):
        lineno = 5 + v
        row = _ints(lines[4 + v], lineno)
        _check_row(row, dv[v], dvmax, m, lineno)
        edges.extend((v, c - 1) for c in row[: dv[v]])
    check_lists = []
    for c in range(m):
        lineno = 5 + n + c
        row = _ints(lines[4 + n + c], lineno)
        _check_row(row, dc[c], dcmax, n, lineno)
        check_lists.append(row[: dc[c]])
    tg = TannerGraph(n, m, edges)
    for c in range(m):
        if sorted(check_lists[c]) != (tg.check_neighbors(c) + 1).tolist():
            raise AlistValidationError(f"check {c + 1} neighbor list disagrees with the variable lists")
    return tg


def _check_row(row, degree, width, bound, lineno):
    if len(row) not in (degree, width):
        raise AlistValidationError(f"expected {width} entries, found {len(row)} (line {lineno})")
    active, pad = row[:degree], row[degree:]
    if any(x < 1 or x > bound for x in active):
        raise AlistValidationError(f"neighbor index out of range 1..{bound} (line {lineno})")
    if any(x != 0 for x in pad):
        raise AlistValidationError(f"nonzero padding after the active neighbors (line {lineno})")
    if len(set(active)) != len(active):
        raise AlistValidationError(f"repeated neighbor (line {lineno})")


def graph_from_edges(n_vertices: int, edges: Iterable[tuple[int, int]]) -> Graph:
    return Graph(n_vertices, np.array(list(edges), dtype=np.int64).reshape(-1, 2))
