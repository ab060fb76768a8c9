"""Large-girth constructions: k-regular bipartite graphs, (c, d)-regular and
(lambda, rho)-irregular Tanner graphs from LPS graphs and vertex splitting."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from . import number_theory as nt
from .ddp import DegreeDistributionPair
from .errors import InternalConsistencyError, InvalidParameters, SearchExhausted, UnsupportedDegreeProfile
from .graph import Graph, TannerGraph, girth, is_connected, two_coloring
from .lps import LpsParameters, lps_graph
from .transforms import DETERMINISTIC, RANDOM, bipartite_double, split_vertices

S_SEARCH_LIMIT = 10**6

# Domain-separation tags for the independent random streams of one build.
_STREAM_SPLIT, _STREAM_SIGMA, _STREAM_PI = 0, 1, 2


def _stream(seed: int, tag: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(tag,)))


def find_s(k: int, limit: int = S_SEARCH_LIMIT) -> int:
    """Smallest ``s >= 1`` with ``s*k - 1`` a prime congruent to 1 mod 4."""
    if k < 2:
        raise UnsupportedDegreeProfile(f"degree {k} < 2")
    if k % 4 == 0:
        raise UnsupportedDegreeProfile(
            f"k={k} is divisible by 4, so s*k - 1 = 3 (mod 4) for every s")
    for s in range(1, limit + 1):
        p = s * k - 1
        if p % 4 == 1 and nt.is_prime(p):
            return s
    raise SearchExhausted(f"no s <= {limit} makes s*{k} - 1 a prime = 1 (mod 4)")


def find_q(p: int, min_q: int = 0) -> int:
    """Smallest prime ``q = 1 (mod 4)``, ``q != p``, ``q > 2*sqrt(p)``, ``q >= min_q``."""
    if p % 4 != 1:
        raise InvalidParameters(f"p={p} is not 1 mod 4")
    q = max(min_q, math.isqrt(4 * p) + 1)
    while True:
        if q % 4 == 1 and q != p and nt.is_prime(q):
            return q
        q += 1


@dataclass(frozen=True)
class BuildRecipe:
    target: str  # "k-regular" | "cd-regular" | "ddp"
    degrees: tuple
    s: int
    a: int
    p: int
    q: int
    seed: Optional[int]
    mode: str

    def to_json(self) -> dict:
        return {
            "target": self.target,
            "degrees": list(self.degrees),
            "s": self.s,
            "a": self.a,
            "p": self.p,
            "q": self.q,
            "seed": self.seed,
            "mode": self.mode,
        }


@dataclass(frozen=True)
class BuildMetadata:
    recipe: BuildRecipe
    n: int
    m: int
    girth_lower_bound: float
    connected: bool
    rate: Fraction
    lps: LpsParameters
    girth_measured: Optional[int] = None
    ddp: Optional[DegreeDistributionPair] = field(default=None, compare=False)

    @property
    def girth_bound_int(self) -> int:
        return math.ceil(self.girth_lower_bound - 1e-12)

    def to_json(self) -> dict:
        out = {
            "recipe": self.recipe.to_json(),
            "n": self.n,
            "m": self.m,
            "girth_lower_bound": self.girth_lower_bound,
            "girth_measured": self.girth_measured,
            "connected": self.connected,
            "rate": str(self.rate),
            "lps": self.lps.to_json(),
        }
        if self.ddp is not None:
            out["ddp"] = self.ddp.to_json()
        return out


def _pick_q(p: int, q: Optional[int], min_n: Optional[int], count: Callable[[int], int]) -> int:
    if q is not None:
        LpsParameters.create(p, q)
        return q
    q = find_q(p)
    while min_n is not None and count(q) < min_n:
        q = find_q(p, q + 1)
    return q


def _lps_order(q: int) -> int:
    return q * (q * q - 1)


def _k_regular_bipartite(k: int, s: int, p: int, q: int, mode: str, seed):
    """Steps of the k-regular bipartite construction; returns the graph, the
    left-side mask and the LPS parameters."""
    params = LpsParameters.create(p, q)
    x = lps_graph(params)
    if params.residue == 1:
        g = bipartite_double(x)
        left = np.arange(g.n_vertices) < x.n_vertices
    else:
        g = x
        color = two_coloring(g)
        if color is None:  # pragma: no cover - guaranteed by the residue case
            raise InternalConsistencyError("X^{p,q} with nonresidue p is not bipartite")
        left = color == 0
    if s > 1:
        rng = _stream(seed, _STREAM_SPLIT) if mode == RANDOM else None
        g = split_vertices(g, np.full(g.n_vertices, s), mode, rng)
        left = np.repeat(left, s)
    if g.n_vertices != s * _lps_order(q) or not g.is_regular(k):
        raise InternalConsistencyError("k-regular construction violates its closed-form counts")
    return g, left, params


def _check_mode(mode, seed):
    if mode not in (DETERMINISTIC, RANDOM):
        raise InvalidParameters(f"unknown mode {mode!r}")
    if mode == RANDOM and seed is None:
        raise InvalidParameters("random mode needs an explicit seed")


def build_k_regular(k: int, q: Optional[int] = None, min_n: Optional[int] = None,
                    mode: str = DETERMINISTIC, seed: Optional[int] = None,
                    measure_girth: bool = False):
    """Large-girth k-regular bipartite graph on ``s*q*(q^2-1)`` vertices.

    Returns ``(graph, metadata, left_mask)``.
    """
    _check_mode(mode, seed)
    s = find_s(k)
    p = s * k - 1
    q = _pick_q(p, q, min_n, lambda qq: s * _lps_order(qq))
    g, left, params = _k_regular_bipartite(k, s, p, q, mode, seed)
    half = g.n_vertices // 2
    meta = BuildMetadata(
        recipe=BuildRecipe("k-regular", (k,), s, 1, p, q, seed, mode),
        n=half, m=half,
        girth_lower_bound=2 * math.log(q, p),
        connected=is_connected(g),
        rate=Fraction(0),
        lps=params,
        girth_measured=girth(g, witness=False).girth if measure_girth else None,
    )
    return g, meta, left


def build_cd_regular(c: int, d: int, q: Optional[int] = None, min_n: Optional[int] = None,
                     mode: str = DETERMINISTIC, seed: Optional[int] = None,
                     measure_girth: bool = False):
    """Large-girth (c, d)-regular Tanner graph. Returns ``(tanner, metadata)``."""
    if c < 2 or d < 2:
        raise UnsupportedDegreeProfile("degrees must be at least 2")
    _check_mode(mode, seed)
    k = math.lcm(c, d)
    s = find_s(k)
    p = s * k - 1
    q = _pick_q(p, q, min_n, lambda qq: (k // c) * s * _lps_order(qq) // 2)
    g, left, params = _k_regular_bipartite(k, s, p, q, mode, seed)
    factors = np.where(left, k // c, k // d)
    rng = _stream(seed, _STREAM_SPLIT + 3) if mode == RANDOM else None
    h = split_vertices(g, factors, mode, rng)
    ddp = DegreeDistributionPair.regular(c, d)
    tg = TannerGraph.from_graph(h, np.repeat(left, factors), ddp=ddp)
    half = s * _lps_order(q) // 2
    if tg.n != (k // c) * half or tg.m != (k // d) * half:
        raise InternalConsistencyError("(c, d)-regular construction violates its closed-form counts")
    meta = BuildMetadata(
        recipe=BuildRecipe("cd-regular", (c, d), s, 1, p, q, seed, mode),
        n=tg.n, m=tg.m,
        girth_lower_bound=2 * math.log(q, p),
        connected=is_connected(h),
        rate=Fraction(tg.n - tg.m, tg.n),
        lps=params,
        girth_measured=girth(h, witness=False).girth if measure_girth else None,
        ddp=ddp,
    )
    return tg, meta


def _blocks(dist: dict, n0: int, k: int) -> np.ndarray:
    """Split factor for each position of an ordered vertex list: consecutive
    runs of ``n0 * frac`` positions per degree, ascending."""
    factors = np.empty(n0, dtype=np.int64)
    start = 0
    for deg, frac in dist.items():
        count = n0 * frac
        if count.denominator != 1:
            raise InternalConsistencyError(f"block size {count} for degree {deg} is not integral")
        count = int(count)
        factors[start : start + count] = k // deg
        start += count
    if start != n0:  # pragma: no cover - coefficients sum to 1
        raise InternalConsistencyError("degree blocks do not cover the vertex set")
    return factors


def build_irregular(ddp: DegreeDistributionPair, q: Optional[int] = None, min_n: Optional[int] = None,
                    seed: int = 0, mode: str = DETERMINISTIC, measure_girth: bool = False):
    """Large-girth Tanner graph with the exact edge-perspective profile ``ddp``.

    ``seed`` drives the two vertex permutations (and the regular-stage
    splits in random mode). Returns ``(tanner, metadata)``.
    """
    _check_mode(mode, seed)
    if seed is None:
        raise InvalidParameters("the irregular construction needs a seed for its permutations")
    k, a = ddp.lcm_and_multiplier()
    dk = a * k
    s = find_s(dk)
    p = s * dk - 1
    int_lam = ddp.integral_lambda

    def n_of(qq):
        return int(a * s * _lps_order(qq) // 2 * k * int_lam)

    q = _pick_q(p, q, min_n, n_of)
    g0, left0, params = _k_regular_bipartite(dk, s, p, q, mode, seed)
    rng = _stream(seed, _STREAM_SPLIT + 3) if mode == RANDOM else None
    g = split_vertices(g0, np.full(g0.n_vertices, a), mode, rng)
    left = np.repeat(left0, a)
    n0 = a * s * _lps_order(q) // 2
    lefts = np.flatnonzero(left)
    rights = np.flatnonzero(~left)
    if len(lefts) != n0 or len(rights) != n0:
        raise InternalConsistencyError("regular stage does not have n0 vertices per side")

    sigma = _stream(seed, _STREAM_SIGMA).permutation(n0)
    pi = _stream(seed, _STREAM_PI).permutation(n0)
    var_order = lefts[sigma]
    chk_order = rights[pi]
    factors = np.empty(g.n_vertices, dtype=np.int64)
    factors[var_order] = _blocks(ddp.lam, n0, k)
    factors[chk_order] = _blocks(ddp.rho, n0, k)
    order = np.concatenate([var_order, chk_order])
    h = split_vertices(g, factors, DETERMINISTIC, order=order)
    n_var = int(factors[lefts].sum())
    tg = TannerGraph.from_graph(h, np.arange(h.n_vertices) < n_var, ddp=ddp)
    if tg.n != n0 * k * int_lam:
        raise InternalConsistencyError("irregular construction violates n = n0 * k * integral(lambda)")
    meta = BuildMetadata(
        recipe=BuildRecipe("ddp", (ddp.to_text(),), s, a, p, q, seed, mode),
        n=tg.n, m=tg.m,
        girth_lower_bound=2 * math.log(q, p),
        connected=is_connected(h),
        rate=Fraction(tg.n - tg.m, tg.n),
        lps=params,
        girth_measured=girth(h, witness=False).girth if measure_girth else None,
        ddp=ddp,
    )
    return tg, meta


def with_girth(tg: TannerGraph, meta: BuildMetadata) -> BuildMetadata:
    """Metadata with the measured girth filled in."""
    return replace(meta, girth_measured=girth(tg, witness=False).girth)
