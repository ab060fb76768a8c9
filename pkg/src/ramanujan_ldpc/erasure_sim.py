"""Peeling decoder on the BEC, Monte Carlo harness and density-evolution checks.

One decoder iteration is one synchronous round: every check with exactly one
erased neighbor resolves it. After ``t`` rounds the residual set is the set
of variables that belief propagation still leaves erased after ``t``
iterations, so bit rates at cap ``t`` estimate ``y_t``.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Iterable, Optional, Sequence, TextIO, Union

import numpy as np
from scipy.stats import binomtest

from .ddp import DegreeDistributionPair
from .density_evolution import de_trace
from .errors import GirthBudgetExceeded, InternalConsistencyError, InvalidArgument, SizeLimit
from .graph import TannerGraph, girth as measure_girth

CSV_COLUMNS = ("epsilon", "t", "trials", "bit_rate", "bit_lo", "bit_hi",
               "block_rate", "block_lo", "block_hi", "seed")

#: Delta of the irregular upper-bound check ``y_emp <= y_t / (1 - delta)``.
DEFAULT_DELTA = 0.1
# Target size (variables x trials) of one decoding batch.
_BATCH_CELLS = 1 << 21


def _rounds(h, ht, erased: np.ndarray, t: Optional[int]) -> np.ndarray:
    """Peel an ``n x B`` boolean matrix in place and return it."""
    done = 0
    while t is None or done < t:
        single = (h @ erased.view(np.uint8)) == 1
        if not single.any():
            break
        resolved = (ht @ single.view(np.uint8)) > 0
        resolved &= erased
        if not resolved.any():
            break
        erased &= ~resolved
        done += 1
    return erased


def _operators(tg: TannerGraph):
    h = tg.sparse_matrix()
    return h, h.T.tocsr()


def peel(tg: TannerGraph, erased, t: Optional[int] = None) -> np.ndarray:
    """Residual erasures after ``t`` rounds (``None``: run to the fixpoint).

    ``erased`` is a length-``n`` mask or a ``(trials, n)`` batch of masks.
    """
    mask = np.asarray(erased, dtype=bool)
    if mask.shape[-1] != tg.n or mask.ndim not in (1, 2):
        raise InvalidArgument(f"erasure mask must have length n = {tg.n}")
    if t is not None and t < 0:
        raise InvalidArgument("iteration cap must be nonnegative")
    h, ht = _operators(tg)
    work = np.array(mask.reshape(-1, tg.n).T, dtype=bool, order="C")
    out = _rounds(h, ht, work, t).T
    return out.reshape(mask.shape).copy()


def is_stopping_set(tg: TannerGraph, subset) -> bool:
    """True iff no check has exactly one neighbor in ``subset``."""
    counts = tg.sparse_matrix() @ np.asarray(subset, dtype=np.int32)
    return not np.any(counts == 1)


def maximal_stopping_sets(tg: TannerGraph) -> np.ndarray:
    """Brute-force oracle: entry ``mask`` is the largest stopping set inside
    ``mask`` (bit ``i`` = variable ``i``), the union of all stopping sets it
    contains. Exhaustive over ``2**n`` subsets, ``n <= 20``."""
    n = tg.n
    if n > 20:
        raise SizeLimit(f"exhaustive stopping-set enumeration needs n <= 20, got {n}")
    masks = np.arange(1 << n, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(n)) & 1).astype(np.int32)
    counts = bits @ tg.parity_matrix().T.astype(np.int32) if tg.m else np.zeros((len(masks), 0), np.int32)
    best = np.where(np.all(counts != 1, axis=1), masks, 0)
    for i in range(n):  # subset-union transform
        has = (masks >> i) & 1 == 1
        best[has] |= best[masks[has] ^ (1 << i)]
    return best


@dataclass(frozen=True)
class ExactRates:
    bit: float
    block: float


def exact_rates(tg: TannerGraph, epsilon: float, t: Optional[int] = None) -> ExactRates:
    """Exact bit and block erasure probabilities after ``t`` rounds, by
    peeling every one of the ``2**n`` masks (``n <= 20``)."""
    n = tg.n
    if n > 20:
        raise SizeLimit(f"exhaustive decoding needs n <= 20, got {n}")
    masks = np.arange(1 << n, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(n)) & 1).astype(bool)
    res = peel(tg, bits, t)
    pop = bits.sum(axis=1)
    weights = epsilon ** pop * (1.0 - epsilon) ** (n - pop)
    left = res.sum(axis=1)
    return ExactRates(float((weights * left).sum() / max(n, 1)), float(weights[left > 0].sum()))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream of one trial, a function of ``(seed, trial)`` only."""
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(int(trial),)))


def wilson(successes: int, total: int) -> tuple[float, float]:
    """95% Wilson score interval."""
    if total <= 0:
        return 0.0, 1.0
    ci = binomtest(int(successes), int(total)).proportion_ci(confidence_level=0.95, method="wilson")
    return float(ci.low), float(ci.high)


@dataclass(frozen=True)
class TrialReport:
    epsilon: float
    iters_cap: Optional[int]
    trials: int
    n: int
    seed: int
    erased_bits: int
    block_errors: int

    @property
    def bit_samples(self) -> int:
        return self.trials * self.n

    @property
    def bit_erasure_rate(self) -> float:
        return self.erased_bits / self.bit_samples

    @property
    def bit_interval(self) -> tuple[float, float]:
        return wilson(self.erased_bits, self.bit_samples)

    @property
    def block_error_rate(self) -> float:
        return self.block_errors / self.trials

    @property
    def block_interval(self) -> tuple[float, float]:
        return wilson(self.block_errors, self.trials)

    def csv_row(self) -> dict:
        blo, bhi = self.bit_interval
        klo, khi = self.block_interval
        return {
            "epsilon": self.epsilon,
            "t": "inf" if self.iters_cap is None else self.iters_cap,
            "trials": self.trials,
            "bit_rate": self.bit_erasure_rate, "bit_lo": blo, "bit_hi": bhi,
            "block_rate": self.block_error_rate, "block_lo": klo, "block_hi": khi,
            "seed": self.seed,
        }

    def to_json(self) -> dict:
        out = asdict(self)
        out.update(bit_erasure_rate=self.bit_erasure_rate, bit_interval=list(self.bit_interval),
                   block_error_rate=self.block_error_rate, block_interval=list(self.block_interval))
        return out


def _run_trials(tg: TannerGraph, epsilon: float, t: Optional[int], seed: int,
                trial_ids: Sequence[int]) -> tuple[int, int]:
    """Exact (erased-bit, block-error) counters over the given trial ids."""
    h, ht = _operators(tg)
    batch = max(1, _BATCH_CELLS // max(tg.n, 1))
    bits = blocks = 0
    for lo in range(0, len(trial_ids), batch):
        ids = trial_ids[lo : lo + batch]
        work = np.empty((tg.n, len(ids)), dtype=bool)
        for col, trial in enumerate(ids):
            work[:, col] = trial_rng(seed, trial).random(tg.n) < epsilon
        res = _rounds(h, ht, work, t)
        if __debug__ and t is None and tg.m:
            if np.any((h @ res.view(np.uint8)) == 1):
                raise InternalConsistencyError("peeling residual is not a stopping set")
        per_trial = res.sum(axis=0)
        bits += int(per_trial.sum())
        blocks += int(np.count_nonzero(per_trial))
    return bits, blocks


def _chunk(args):
    return _run_trials(*args)


def simulate(tg: TannerGraph, epsilon: float, t: Optional[int], trials: int, seed: int,
             workers: int = 1) -> TrialReport:
    """Monte Carlo estimate of bit and block erasure rates after ``t`` rounds.

    Trial ``i`` draws its mask from ``trial_rng(seed, i)``, and the counters
    are exact integers, so the report does not depend on ``workers``.
    """
    if trials < 1:
        raise InvalidArgument("trials must be at least 1")
    if not 0.0 <= epsilon <= 1.0:
        raise InvalidArgument("epsilon must lie in [0, 1]")
    if seed is None:
        raise InvalidArgument("simulation needs an explicit seed")
    ids = list(range(trials))
    if workers <= 1 or trials < 2 * workers:
        bits, blocks = _run_trials(tg, epsilon, t, seed, ids)
    else:
        parts = [ids[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_chunk, [(tg, epsilon, t, seed, p) for p in parts]))
        bits = sum(r[0] for r in results)
        blocks = sum(r[1] for r in results)
    return TrialReport(float(epsilon), t, trials, tg.n, int(seed), bits, blocks)


def sweep(tg: TannerGraph, epsilons: Iterable[float], ts: Iterable[Optional[int]], trials: int,
          seed: int, workers: int = 1) -> list[TrialReport]:
    ts = list(ts)
    return [simulate(tg, eps, t, trials, seed, workers) for eps in epsilons for t in ts]


def write_csv(reports: Iterable[TrialReport], sink: Union[str, TextIO, None] = None) -> Optional[str]:
    """Sweep table with the fixed column set; returns the text when ``sink`` is None."""
    buf = io.StringIO() if sink is None else None
    handle = open(sink, "w", newline="") if isinstance(sink, str) else (sink or buf)
    try:
        writer = csv.DictWriter(handle, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for rep in reports:
            writer.writerow(rep.csv_row())
    finally:
        if isinstance(sink, str):
            handle.close()
    return buf.getvalue() if buf is not None else None


@dataclass(frozen=True)
class DeComparison:
    empirical: float
    interval: tuple[float, float]
    y_t: float
    bound: float  # y_t for regular graphs, y_t / (1 - delta) otherwise
    regular: bool
    within_interval: bool
    delta: float
    girth: Optional[int]
    report: TrialReport

    def to_json(self) -> dict:
        out = {k: v for k, v in asdict(self).items() if k != "report"}
        out["report"] = self.report.to_json()
        return out


def compare_to_de(tg: TannerGraph, ddp: Optional[DegreeDistributionPair], epsilon: float, t: int,
                  trials: int, seed: int, delta: float = DEFAULT_DELTA, slack: float = 3.0,
                  girth: Optional[int] = None, check_girth: bool = True, workers: int = 1) -> DeComparison:
    """Empirical bit-erasure rate after ``t`` rounds against ``y_t``.

    Regular graphs: ``y_t`` must lie in the Wilson interval widened by
    ``slack``. Otherwise the one-sided form ``empirical <= y_t / (1 - delta)
    + slack * (upper half-width)`` is tested. The tree-like premise
    ``girth >= 4t + 2`` is enforced unless ``check_girth`` is False, in which
    case the inequality is still evaluated and ``girth`` reported as given.
    """
    if t < 1:
        raise InvalidArgument("t must be at least 1")
    if not 0.0 < delta < 1.0:
        raise InvalidArgument("delta must lie in (0, 1)")
    if check_girth:
        if girth is None:
            girth = measure_girth(tg, witness=False).girth
        if girth is not None and girth < 4 * t + 2:
            raise GirthBudgetExceeded(f"girth {girth} < 4t + 2 = {4 * t + 2}: neighborhoods are not trees")
    if ddp is None:
        ddp = tg.degree_distribution()
    y_t = de_trace(ddp, epsilon, t_max=t, tol=0.0, run_full=True).ys[t - 1]
    rep = simulate(tg, epsilon, t, trials, seed, workers)
    p = rep.bit_erasure_rate
    lo, hi = rep.bit_interval
    regular = len(ddp.lam) == 1 and len(ddp.rho) == 1
    if regular:
        bound = y_t
        ok = p - slack * (p - lo) <= y_t <= p + slack * (hi - p)
    else:
        bound = y_t / (1.0 - delta)
        ok = p <= bound + slack * (hi - p)
    return DeComparison(p, (lo, hi), y_t, bound, regular, bool(ok), delta, girth, rep)
