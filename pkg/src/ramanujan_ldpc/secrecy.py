"""Coset coding over the binary erasure wiretap channel.

The Tanner graph defines the LDPC code ``C_dual = {x : x H_T^T = 0}``. The
coset code is its dual ``C = rowspace(H_T)``: a secret ``s`` is sent as a
uniformly random word of the coset ``{x : x H^T = s}``, where the rows of
``H`` span ``C_dual``. Eve, seeing the bits in ``K``, learns
``|K| - rank(G_K)`` bits, which equals ``|K| - rank(H_T[:, K])``, the
dimension of the dual codewords supported inside ``K``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from . import gf2
from .erasure_sim import exact_rates, simulate, trial_rng
from .errors import InvalidArgument, SizeLimit
from .graph import TannerGraph

EXHAUSTIVE_LIMIT = 25
EXHAUSTIVE = "exhaustive"
SAMPLED = "sampled"


class CosetCode:
    """Coset code attached to a Tanner graph (whose code is the dual)."""

    def __init__(self, tanner: TannerGraph):
        self.tanner = tanner
        self.n = tanner.n
        self._packed = gf2.pack_sparse(tanner.edges[:, 1], tanner.edges[:, 0], (tanner.m, tanner.n))
        self.tanner_rank = gf2.rank_packed(self._packed, self.n)
        self.secret_bits = self.n - self.tanner_rank

    @classmethod
    def from_tanner(cls, tg: TannerGraph) -> "CosetCode":
        return cls(tg)

    @classmethod
    def from_parity_matrix(cls, h_tanner) -> "CosetCode":
        return cls(TannerGraph.from_parity_matrix(h_tanner))

    def __repr__(self):
        return f"CosetCode(n={self.n}, secret_bits={self.secret_bits})"

    @cached_property
    def G(self) -> np.ndarray:
        """Generator of ``C``: the independent (reduced) rows of ``H_T``."""
        red, _ = gf2.rref(self.tanner.parity_matrix())
        return red

    @cached_property
    def _h_rref(self):
        basis = gf2.nullspace(self.tanner.parity_matrix())
        return gf2.rref(basis)

    @property
    def H(self) -> np.ndarray:
        """Parity check of ``C`` (rows span the dual code), in reduced form."""
        return self._h_rref[0]


def coset_encode(code: CosetCode, s, seed: int) -> np.ndarray:
    """Uniformly random ``x`` with ``x H^T = s``."""
    s = np.asarray(s, dtype=np.uint8) & 1
    if s.shape != (code.secret_bits,):
        raise InvalidArgument(f"secret must have {code.secret_bits} bits")
    h, piv = code._h_rref
    x = np.zeros(code.n, dtype=np.uint8)
    # reduced form: row i is the only one with a 1 in column piv[i]
    x[piv] = s
    g = code.G
    u = np.random.default_rng(seed).integers(0, 2, size=g.shape[0], dtype=np.uint8)
    return (x + gf2.matmul(u[None, :], g)[0]) % 2


def coset_decode(code: CosetCode, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.uint8) & 1
    if x.shape != (code.n,):
        raise InvalidArgument(f"word must have {code.n} bits")
    return gf2.matmul(x[None, :], code.H.T)[0]


def leakage_bound(code: CosetCode, xi: float, p_block: float) -> float:
    """Upper bound ``secret_bits * P_B`` on the bits leaked to Eve, with
    ``P_B`` the dual code's block erasure probability at ``1 - xi``."""
    if not 0.0 <= xi <= 1.0:
        raise InvalidArgument("xi must lie in [0, 1]")
    if not 0.0 <= p_block <= 1.0:
        raise InvalidArgument("block error probability must lie in [0, 1]")
    return code.secret_bits * p_block


def revealed_leakage(code: CosetCode, revealed) -> int:
    """``|K| - rank(G_K)`` for one revealed set, computed as
    ``|K| - rank(H_T[:, K])``."""
    k = np.flatnonzero(np.asarray(revealed, dtype=bool))
    if len(k) == 0:
        return 0
    dense = gf2.unpack(code._packed, code.n)[:, k]
    return int(len(k) - gf2.rank(dense))


def _popcounts(n: int) -> np.ndarray:
    pop = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        pop[1 << i : 1 << (i + 1)] = pop[: 1 << i] + 1
    return pop


def _exhaustive(code: CosetCode, xi: float) -> float:
    n = code.n
    basis = gf2.nullspace(code.tanner.parity_matrix())
    words = np.zeros(1, dtype=np.int64)
    shifts = np.int64(1) << np.arange(n, dtype=np.int64)
    for row in basis:
        b = int((row.astype(np.int64) * shifts).sum())
        words = np.concatenate([words, words ^ b])
    count = np.zeros(1 << n, dtype=np.int64)
    count[words] = 1
    masks = np.arange(1 << n, dtype=np.int64)
    for i in range(n):  # count[K] = number of dual codewords inside K
        has = (masks >> i) & 1 == 1
        count[has] += count[masks[has] ^ (1 << i)]
    dims = np.log2(count).round()
    pop = _popcounts(n)
    weights = (1.0 - xi) ** pop * xi ** (n - pop)
    return float((weights * dims).sum())


def exact_leakage(code: CosetCode, xi: float, mode: str = EXHAUSTIVE, trials: int = 1000,
                  seed: Optional[int] = None) -> float:
    """Expected leaked bits ``E_K[|K| - rank(G_K)]``, each bit revealed with
    probability ``1 - xi``; exhaustive over all patterns (``n <= 25``) or a
    Monte Carlo mean over ``trials`` patterns."""
    if not 0.0 <= xi <= 1.0:
        raise InvalidArgument("xi must lie in [0, 1]")
    if mode == EXHAUSTIVE:
        if code.n > EXHAUSTIVE_LIMIT:
            raise SizeLimit(f"exhaustive leakage needs n <= {EXHAUSTIVE_LIMIT}, got n = {code.n}")
        return _exhaustive(code, xi)
    if mode != SAMPLED:
        raise InvalidArgument(f"unknown mode {mode!r}")
    if seed is None or trials < 1:
        raise InvalidArgument("sampled mode needs trials >= 1 and an explicit seed")
    total = 0
    for trial in range(trials):
        revealed = trial_rng(seed, trial).random(code.n) < 1.0 - xi
        total += revealed_leakage(code, revealed)
    return total / trials


def exact_block_error(code_or_tanner, epsilon: float) -> float:
    """Exhaustive message-passing block erasure probability of the dual code."""
    tg = code_or_tanner.tanner if isinstance(code_or_tanner, CosetCode) else code_or_tanner
    return exact_rates(tg, epsilon).block


@dataclass(frozen=True)
class SecrecyReport:
    n: int
    secret_bits: int
    xi: float
    p_block_estimate: float
    ci: tuple[float, float]
    leakage_bound_bits: float
    exact_leakage_bits: Optional[float] = None
    trials: int = 0
    seed: Optional[int] = None

    @property
    def leakage_per_secret_bit(self) -> float:
        return self.leakage_bound_bits / self.secret_bits if self.secret_bits else 0.0

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "secret_bits": self.secret_bits,
            "xi": self.xi,
            "p_block_estimate": self.p_block_estimate,
            "ci": list(self.ci),
            "leakage_bound_bits": self.leakage_bound_bits,
            "exact_leakage_bits": self.exact_leakage_bits,
            "leakage_per_secret_bit": self.leakage_per_secret_bit,
            "trials": self.trials,
            "seed": self.seed,
        }


def secrecy_report(tg: TannerGraph, xi: float, trials: int, seed: int, workers: int = 1,
                   with_exact: bool = False) -> SecrecyReport:
    """Leakage bound from a Monte Carlo estimate of the dual code's block
    erasure rate under unbounded peeling at ``epsilon = 1 - xi``."""
    code = CosetCode.from_tanner(tg)
    rep = simulate(tg, 1.0 - xi, None, trials, seed, workers)
    p = rep.block_error_rate
    exact = exact_leakage(code, xi) if with_exact else None
    return SecrecyReport(code.n, code.secret_bits, float(xi), p, rep.block_interval,
                         leakage_bound(code, xi, p), exact, trials, seed)


def ci_overlap(a: tuple[float, float], b: tuple[float, float]) -> bool:
    return a[0] <= b[1] and b[0] <= a[1]


def nonincreasing_up_to_overlap(reports) -> bool:
    """Leakage per secret bit never increases along ``reports`` unless the
    two block-error intervals overlap."""
    for prev, cur in zip(reports, reports[1:]):
        if cur.p_block_estimate > prev.p_block_estimate and not ci_overlap(prev.ci, cur.ci):
            return False
    return True

