"""Density evolution on the binary erasure channel.

The edge recursion is ``x_t = eps * lambda(1 - rho(1 - x_{t-1}))`` with
``x_0 = eps``; the bit-erasure estimate is ``y_t = eps * L(1 - rho(1 - x_{t-1}))``.
Besides traces and thresholds this module computes the constants of the
double-exponential decay bound for ``l_min >= 3``, the iteration schedules
used for secrecy, and probabilities of decoding-neighborhood trees.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .ddp import DegreeDistributionPair
from .errors import InvalidArgument, SupercriticalEpsilon, UnsupportedDDP
from .graph import NeighborhoodTree

T_MAX = 100_000
CONVERGENCE_TOL = 1e-10
R_MARGIN = 1e-9


@dataclass(frozen=True)
class DeTrace:
    epsilon: float
    xs: tuple  # x_0 .. x_T
    ys: tuple  # y_1 .. y_T
    converged: bool

    @property
    def iterations(self) -> int:
        return len(self.xs) - 1

    def y(self, t: int) -> float:
        return self.ys[t - 1]

    def to_json(self) -> dict:
        return {"epsilon": self.epsilon, "converged": self.converged, "iterations": self.iterations,
                "x": list(self.xs), "y": list(self.ys)}


def de_step(ddp: DegreeDistributionPair, epsilon: float, x: float) -> float:
    """One step of the edge recursion."""
    if not 0.0 <= x <= 1.0:
        raise InvalidArgument("x must lie in [0, 1]")
    return epsilon * ddp.lambda_(ddp.check_update(x))


def de_trace(ddp: DegreeDistributionPair, epsilon: float, t_max: int = T_MAX,
             tol: float = CONVERGENCE_TOL, run_full: bool = False) -> DeTrace:
    """Iterate from ``x_0 = epsilon`` until ``x_t <= tol`` or ``t_max`` steps.

    Once the iterate stops decreasing it has hit a floating-point fixed point
    above ``tol`` and can never converge, so the loop ends there (unless
    ``run_full``, which always runs ``t_max`` steps).
    """
    if t_max < 1:
        raise InvalidArgument("t_max must be at least 1")
    if not 0.0 <= epsilon <= 1.0:
        raise InvalidArgument("epsilon must lie in [0, 1]")
    lam, upd, L = ddp.lambda_, ddp.check_update, ddp.L
    x = float(epsilon)
    xs = [x]
    ys = []
    converged = x <= tol
    for _ in range(t_max):
        if converged and not run_full:
            break
        u = upd(x)
        x_new = epsilon * lam(u)
        xs.append(x_new)
        ys.append(epsilon * L(u))
        if x_new <= tol:
            converged = True
        elif x_new >= x and not run_full:
            break
        x = x_new
    return DeTrace(float(epsilon), tuple(xs), tuple(ys), converged)


def converges(ddp: DegreeDistributionPair, epsilon: float) -> bool:
    return de_trace(ddp, epsilon).converged


def threshold(ddp: DegreeDistributionPair, tol: float = 1e-6) -> float:
    """BEC threshold by bisection on the convergence predicate; the final
    bracket has width at most ``tol`` and its midpoint is returned."""
    if tol <= 0:
        raise InvalidArgument("tol must be positive")
    lo, hi = 0.0, 1.0
    if converges(ddp, hi):
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if converges(ddp, mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class DecayConstants:
    """Constants of ``x_t <= prefactor * exp(-beta * (l_min - 1)**t)`` for ``t >= R``."""

    epsilon: float
    l_min: int
    A: float
    R: int
    x_R: float
    alpha_R: float
    beta: float
    prefactor: float

    def log_bound(self, t: int) -> float:
        """Natural log of the bound at ``t >= R``.

        Written as ``log(x_R) - alpha_R * ((l_min - 1)**(t - R) - 1)``, which
        is the same quantity rearranged so that it equals ``log(x_R)`` exactly
        at ``t = R``.
        """
        if t < self.R:
            raise InvalidArgument(f"bound holds only for t >= R = {self.R}")
        if self.x_R == 0.0:
            return -math.inf
        return math.log(self.x_R) - self.alpha_R * ((self.l_min - 1) ** (t - self.R) - 1)

    def bound(self, t: int) -> float:
        return math.exp(self.log_bound(t))

    def to_json(self) -> dict:
        return {k: (v if not (isinstance(v, float) and math.isinf(v)) else str(v)) for k, v in asdict(self).items()}


def _require_lmin3(ddp: DegreeDistributionPair):
    if ddp.l_min < 3:
        raise UnsupportedDDP(
            f"l_min = {ddp.l_min}: the double-exponential bound needs minimum variable degree >= 3")


def decay_constants(ddp: DegreeDistributionPair, epsilon: float) -> DecayConstants:
    _require_lmin3(ddp)
    lm = ddp.l_min
    # 1 - rho(1 - x) <= rho'(1) x, and rho'(1) is the edge-perspective mean
    # of j - 1; the node mean is smaller when rho is irregular
    r_avg = float(ddp.r_edge_avg)
    if epsilon == 0.0:
        return DecayConstants(0.0, lm, 0.0, 0, 0.0, math.inf, math.inf, math.inf)
    trace = de_trace(ddp, epsilon)
    if not trace.converged:
        raise SupercriticalEpsilon(f"epsilon = {epsilon} is not below the threshold")
    A = epsilon * (r_avg - 1) ** (lm - 1)
    for R, x in enumerate(trace.xs):
        if x > 0 and A * x ** (lm - 2) <= 1 - R_MARGIN and (r_avg - 1) * x <= 1 - R_MARGIN:
            break
    else:  # pragma: no cover - converged traces end below both limits
        raise SupercriticalEpsilon("no iteration satisfies the decay conditions")
    alpha = -math.log(A) / (lm - 2) - math.log(x)
    beta = alpha / (lm - 1) ** R
    return DecayConstants(float(epsilon), lm, A, R, x, alpha, beta, A ** (-1.0 / (lm - 2)))


@dataclass(frozen=True)
class DecayCheck:
    t: int
    x_t: float
    bound: float
    y_t: float
    y_bound: float
    ok: bool


def decay_bound_rows(ddp: DegreeDistributionPair, epsilon: float, t_range: Iterable[int]) -> list[DecayCheck]:
    """Per-iteration comparison of ``x_t`` and ``y_t`` with their bounds, for
    the ``t`` in ``t_range`` with ``t >= R``."""
    dc = decay_constants(ddp, epsilon)
    ts = [t for t in t_range if t >= dc.R]
    if not ts:
        return []
    trace = de_trace(ddp, epsilon, t_max=max(max(ts), 1), tol=0.0, run_full=True)
    scale = 1.0 / float(ddp.l_min * ddp.integral_lambda)
    rows = []
    for t in ts:
        x = trace.xs[t]
        lb = dc.log_bound(t)
        x_ok = x == 0.0 or math.log(x) <= lb
        if t >= 1:
            y = trace.ys[t - 1]
            y_bound = x * scale
            y_ok = y <= y_bound
        else:
            y, y_bound, y_ok = math.nan, math.nan, True
        rows.append(DecayCheck(t, x, math.exp(lb), y, y_bound, x_ok and y_ok))
    return rows


def verify_decay_bound(ddp: DegreeDistributionPair, epsilon: float, t_range: Iterable[int]) -> bool:
    """Exact check of ``x_t <= prefactor*exp(-beta*(l_min-1)**t)`` and
    ``y_t <= x_t / (l_min * integral(lambda))`` over ``t_range`` (``t >= R``)."""
    return all(row.ok for row in decay_bound_rows(ddp, epsilon, t_range))


def iterations_for_secrecy(ddp, beta: float, n: int, a: int = 3) -> int:
    """Iterations after which ``y_t = O(n**-a)``:
    ``ceil((log log n + log a - log beta) / log(l_min - 1))``, natural logs,
    floored at 0. ``ddp`` may be a pair or just its ``l_min``."""
    l_min = ddp.l_min if isinstance(ddp, DegreeDistributionPair) else int(ddp)
    if n < 3 or beta <= 0 or l_min < 3 or a < 1:
        raise InvalidArgument("need n >= 3, beta > 0, l_min >= 3, a >= 1")
    val = (math.log(math.log(n)) + math.log(a) - math.log(beta)) / math.log(l_min - 1)
    return max(0, math.ceil(val))


def t_for_girth(girth: Optional[int]) -> Optional[int]:
    """Largest ``t`` with ``4t + 2 <= girth``; ``None`` (unbounded) for forests."""
    if girth is None:
        return None
    if girth < 2:
        raise InvalidArgument("girth must be at least 2")
    return (girth - 2) // 4


def tree_ensemble_prob(ddp: DegreeDistributionPair, tree: NeighborhoodTree) -> Fraction:
    """Probability of one (labelled) tree in the node-rooted tree ensemble:
    ``L_i0 * lambda_i0**(p_i0 - 1) * prod_{i != i0} lambda_i**p_i * prod_j rho_j**q_j``.
    """
    i0 = tree.root_degree
    counts = dict(tree.variable_counts)
    if counts.get(i0, 0) < 1:
        raise InvalidArgument("variable counts must include the root")
    L = ddp.node_lambda
    prob = L.get(i0, Fraction(0))
    for i, p in counts.items():
        expo = p - 1 if i == i0 else p
        if expo:
            prob *= ddp.lam.get(i, Fraction(0)) ** expo
    for j, qj in tree.check_counts.items():
        prob *= ddp.rho.get(j, Fraction(0)) ** qj
    return prob


def clamp_schedule_constant(ddp: DegreeDistributionPair, a: float, girth: Optional[int] = None,
                            n: Optional[int] = None) -> float:
    """Constant ``a`` of the ``t(n) = a log n`` schedule, capped by the girth
    budget ``(girth - 2) / (4 log n)`` and by ``1 / (2 log((l_max-1)(r_max-1)))``
    so that tree sizes grow slower than ``sqrt(n)``."""
    if a <= 0:
        raise InvalidArgument("schedule constant must be positive")
    caps = [a]
    growth = (ddp.l_max - 1) * (ddp.r_max - 1)
    if growth > 1:
        caps.append(1.0 / (2.0 * math.log(growth)))
    if girth is not None and n is not None and n > 1:
        caps.append((girth - 2) / (4.0 * math.log(n)))
    return min(caps)


@dataclass(frozen=True)
class SecrecyCertificate:
    ddp: DegreeDistributionPair
    xi: float
    epsilon: float
    epsilon_th: float
    decay: DecayConstants
    a: float
    c1: float
    c2: float

    def to_json(self) -> dict:
        return {
            "ddp": self.ddp.to_json(),
            "xi": self.xi,
            "epsilon": self.epsilon,
            "epsilon_th": self.epsilon_th,
            "decay": self.decay.to_json(),
            "a": self.a,
            "c1": self.c1 if math.isfinite(self.c1) else str(self.c1),
            "c2": self.c2,
        }


def secrecy_certificate(ddp: DegreeDistributionPair, xi: float, a: float = 1.0,
                        girth: Optional[int] = None, n: Optional[int] = None,
                        threshold_tol: float = 1e-6) -> SecrecyCertificate:
    """Decay certificate for the dual coset scheme on an eavesdropper erasure
    probability ``xi``: the code must operate at ``epsilon = 1 - xi`` below its
    threshold. Bit-error decay is ``O(exp(-c1 * n**c2))`` with ``c1 = beta`` and
    ``c2 = a * log(l_min - 1)``."""
    _require_lmin3(ddp)
    if not 0.0 <= xi <= 1.0:
        raise InvalidArgument("xi must lie in [0, 1]")
    eps = 1.0 - xi
    eps_th = threshold(ddp, threshold_tol)
    if eps >= eps_th or not converges(ddp, eps):
        raise SupercriticalEpsilon(
            f"epsilon = 1 - xi = {eps:.6g} is not below the threshold {eps_th:.6g}; no certificate")
    dc = decay_constants(ddp, eps)
    a_eff = clamp_schedule_constant(ddp, a, girth, n)
    return SecrecyCertificate(ddp, float(xi), eps, eps_th, dc, a_eff, dc.beta, a_eff * math.log(ddp.l_min - 1))
