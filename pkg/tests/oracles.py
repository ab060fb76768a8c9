"""Independent reference implementations used only by the tests.

Each oracle uses a different algorithm from the library code it checks:
trial division against Miller-Rabin, edge-deletion shortest paths against
rooted BFS girth, integer-basis rank against packed elimination, and the
fixed-point characterization of the threshold against bisection.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize_scalar


def is_prime_trial(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_sieve(limit: int) -> np.ndarray:
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return sieve


def legendre_by_squares(a: int, q: int) -> int:
    a %= q
    if a == 0:
        return 0
    return 1 if a in {x * x % q for x in range(1, q)} else -1


def four_square_solutions(p: int) -> list[tuple[int, int, int, int]]:
    r = math.isqrt(p)
    out = []
    for a, b, c, d in itertools.product(range(-r, r + 1), repeat=4):
        if a * a + b * b + c * c + d * d == p and a > 0 and a % 2 == 1 and b % 2 == c % 2 == d % 2 == 0:
            out.append((a, b, c, d))
    return sorted(out)


def girth_by_edge_deletion(n: int, edges) -> float:
    """Shortest cycle = min over edges (u, v) of 1 + dist(u, v) without that edge."""
    edges = [tuple(map(int, e)) for e in edges]
    best = math.inf
    for skip, (u, v) in enumerate(edges):
        adj = [[] for _ in range(n)]
        for i, (a, b) in enumerate(edges):
            if i != skip:
                adj[a].append(b)
                adj[b].append(a)
        dist = [-1] * n
        dist[u] = 0
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        if dist[v] >= 0:
            best = min(best, dist[v] + 1)
    return best


def gf2_rank_int(mat) -> int:
    basis = []
    for row in np.asarray(mat, dtype=np.int64):
        v = int("".join(str(int(b)) for b in row), 2) if len(row) else 0
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def threshold_fixed_point(lam: dict, rho: dict) -> float:
    """``inf_{x in (0, 1]} x / lambda(1 - rho(1 - x))``: the smallest channel
    parameter with a nonzero fixed point of the edge recursion."""
    lam = {d: float(c) for d, c in lam.items()}
    rho = {d: float(c) for d, c in rho.items()}

    def ratio(x):
        u = 1.0 - sum(c * (1.0 - x) ** (d - 1) for d, c in rho.items())
        return x / sum(c * u ** (d - 1) for d, c in lam.items())

    grid = np.linspace(1e-4, 1.0, 20001)
    vals = np.array([ratio(x) for x in grid])
    i = int(np.argmin(vals))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    res = minimize_scalar(ratio, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    return float(min(res.fun, vals[i]))


def y1_closed_form(lam: dict, rho: dict, eps: float) -> float:
    """``eps * sum_i L_i * (1 - rho(1 - eps))**i`` from node fractions."""
    total = sum(Fraction(c) / d for d, c in lam.items())
    u = 1.0 - sum(float(c) * (1.0 - eps) ** (d - 1) for d, c in rho.items())
    return eps * sum(float(Fraction(c) / d / total) * u**d for d, c in lam.items())


def level1_trees(lam: dict, rho: dict):
    """Ordered level-1 trees ``(root degree, check degree sequence)``."""
    for i0 in lam:
        for checks in itertools.product(list(rho), repeat=i0):
            yield i0, checks


def stopping_set_union(h: np.ndarray, mask: int) -> int:
    """Union of all stopping sets inside ``mask`` by direct enumeration."""
    n = h.shape[1]
    members = [i for i in range(n) if mask >> i & 1]
    union = 0
    for r in range(1, len(members) + 1):
        for subset in itertools.combinations(members, r):
            x = np.zeros(n, dtype=np.int64)
            x[list(subset)] = 1
            if not np.any(h.astype(np.int64) @ x == 1):
                union |= sum(1 << i for i in subset)
    return union
