"""Degree distribution pairs (edge perspective) with exact rational coefficients."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from typing import Mapping, Union

import numpy as np

from .errors import InvalidArgument, InvalidDDP

Number = Union[int, float, str, Fraction]

# Published coefficient lists are rounded; sums this close to 1 are rescaled.
_NORMALIZE_SLACK = Fraction(1, 10**6)


def _to_fraction(value: Number) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise InvalidDDP(f"coefficient {value!r} is not a rational number")
        return Fraction(repr(value))
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError):
        raise InvalidDDP(f"coefficient {value!r} is not a rational number") from None


def _clean(coeffs: Mapping[int, Number], side: str) -> dict[int, Fraction]:
    out = {}
    for deg, val in coeffs.items():
        deg = int(deg)
        frac = _to_fraction(val)
        if deg < 2:
            raise InvalidDDP(f"{side} degree {deg} < 2")
        if frac < 0:
            raise InvalidDDP(f"negative {side} coefficient for degree {deg}")
        if frac:
            out[deg] = out.get(deg, Fraction(0)) + frac
    total = sum(out.values(), Fraction(0))
    if total == 0:
        raise InvalidDDP(f"{side} distribution is empty")
    if total != 1:
        if abs(total - 1) > _NORMALIZE_SLACK:
            raise InvalidDDP(f"{side} coefficients sum to {float(total)}, not 1")
        out = {d: c / total for d, c in out.items()}
    return dict(sorted(out.items()))


class DegreeDistributionPair:
    """Edge-perspective pair: ``lam[i]`` is the fraction of edges on degree-i
    variables, ``rho[j]`` the fraction on degree-j checks."""

    def __init__(self, lam: Mapping[int, Number], rho: Mapping[int, Number]):
        self.lam = _clean(lam, "variable")
        self.rho = _clean(rho, "check")
        self._lam_terms = tuple((float(c), d - 1) for d, c in self.lam.items())
        self._rho_terms = tuple((float(c), d - 1) for d, c in self.rho.items())
        node = self.node_lambda
        self._L_terms = tuple((float(c), d) for d, c in node.items())

    # --- constructors / serialization ---------------------------------

    @classmethod
    def regular(cls, c: int, d: int) -> "DegreeDistributionPair":
        return cls({c: 1}, {d: 1})

    @classmethod
    def from_degrees(cls, variable_degrees, check_degrees) -> "DegreeDistributionPair":
        """Realized edge-perspective pair of a graph's degree sequences."""
        vd = np.asarray(variable_degrees, dtype=np.int64)
        cd = np.asarray(check_degrees, dtype=np.int64)
        n_edges = int(vd.sum())
        if n_edges == 0 or n_edges != int(cd.sum()):
            raise InvalidDDP("degree sequences do not describe a nonempty bipartite graph")

        def side(degs):
            vals, counts = np.unique(degs[degs > 0], return_counts=True)
            return {int(d): Fraction(int(d) * int(k), n_edges) for d, k in zip(vals, counts)}

        return cls(side(vd), side(cd))

    @classmethod
    def from_node_perspective(cls, var_nodes: Mapping[int, Number], chk_nodes: Mapping[int, Number]) -> "DegreeDistributionPair":
        """Pair from node fractions (``L_i``: fraction of variables of degree i)."""

        def edge(side, name):
            node = _clean(side, name)
            avg = sum((d * c for d, c in node.items()), Fraction(0))
            return {d: d * c / avg for d, c in node.items()}

        return cls(edge(var_nodes, "variable"), edge(chk_nodes, "check"))

    @classmethod
    def parse(cls, text: str) -> "DegreeDistributionPair":
        """Parse ``"l:3=0.5,5=0.5;r:15=1"`` (degree=fraction lists)."""
        parts = {}
        for chunk in text.replace(" ", "").split(";"):
            if not chunk:
                continue
            m = re.fullmatch(r"([lr]):(.+)", chunk)
            if not m or m.group(1) in parts:
                raise InvalidDDP(f"cannot parse degree distribution {text!r}")
            terms = {}
            for item in m.group(2).split(","):
                deg, sep, val = item.partition("=")
                if not sep:
                    raise InvalidDDP(f"cannot parse term {item!r}")
                try:
                    terms[int(deg)] = Fraction(val)
                except ValueError:
                    raise InvalidDDP(f"cannot parse term {item!r}") from None
            parts[m.group(1)] = terms
        if set(parts) != {"l", "r"}:
            raise InvalidDDP(f"degree distribution {text!r} needs both l: and r: parts")
        return cls(parts["l"], parts["r"])

    def to_text(self) -> str:
        def fmt(side):
            return ",".join(f"{d}={c}" for d, c in side.items())

        return f"l:{fmt(self.lam)};r:{fmt(self.rho)}"

    def to_json(self) -> dict:
        return {
            "lambda": {str(d): str(c) for d, c in self.lam.items()},
            "rho": {str(d): str(c) for d, c in self.rho.items()},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DegreeDistributionPair":
        return cls({int(d): Fraction(c) for d, c in obj["lambda"].items()},
                   {int(d): Fraction(c) for d, c in obj["rho"].items()})

    def __eq__(self, other):
        return isinstance(other, DegreeDistributionPair) and self.lam == other.lam and self.rho == other.rho

    def __hash__(self):
        return hash((tuple(self.lam.items()), tuple(self.rho.items())))

    def __repr__(self):
        return f"DegreeDistributionPair({self.to_text()!r})"

    # --- derived quantities --------------------------------------------

    @property
    def l_min(self) -> int:
        return min(self.lam)

    @property
    def l_max(self) -> int:
        return max(self.lam)

    @property
    def r_min(self) -> int:
        return min(self.rho)

    @property
    def r_max(self) -> int:
        return max(self.rho)

    @property
    def integral_lambda(self) -> Fraction:
        return sum((c / d for d, c in self.lam.items()), Fraction(0))

    @property
    def integral_rho(self) -> Fraction:
        return sum((c / d for d, c in self.rho.items()), Fraction(0))

    @property
    def l_avg(self) -> Fraction:
        return 1 / self.integral_lambda

    @property
    def r_avg(self) -> Fraction:
        return 1 / self.integral_rho

    @property
    def r_edge_avg(self) -> Fraction:
        """Check degree seen from a random edge, ``sum_j rho_j * j`` (``= 1 + rho'(1)``)."""
        return sum((c * d for d, c in self.rho.items()), Fraction(0))

    @property
    def node_lambda(self) -> dict[int, Fraction]:
        """Fraction of variable nodes of each degree."""
        total = self.integral_lambda
        return {d: (c / d) / total for d, c in self.lam.items()}

    @property
    def node_rho(self) -> dict[int, Fraction]:
        total = self.integral_rho
        return {d: (c / d) / total for d, c in self.rho.items()}

    def design_rate(self) -> Fraction:
        return 1 - self.integral_rho / self.integral_lambda

    def lcm_and_multiplier(self) -> tuple[int, int]:
        """``k`` = lcm of all active degrees, ``a`` = smallest integer making
        every coefficient times ``a`` integral."""
        degrees = list(self.lam) + list(self.rho)
        k = reduce(math.lcm, degrees)
        a = reduce(math.lcm, (c.denominator for c in list(self.lam.values()) + list(self.rho.values())))
        return k, a

    # --- evaluation (floating point) ------------------------------------

    def lambda_(self, x: float) -> float:
        return sum(c * x**e for c, e in self._lam_terms)

    def rho_(self, x: float) -> float:
        return sum(c * x**e for c, e in self._rho_terms)

    def L(self, x: float) -> float:
        return sum(c * x**e for c, e in self._L_terms)

    def check_update(self, x: float) -> float:
        """``1 - rho(1 - x)`` without cancellation: each term is
        ``rho_j * (1 - (1 - x)**(j-1))`` evaluated through expm1/log1p, so
        the result stays relative-accurate as ``x -> 0``."""
        if x >= 1.0:
            return 1.0
        lg = math.log1p(-x)
        return sum(c * -math.expm1(e * lg) for c, e in self._rho_terms)


def _check_unit(x):
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0) or np.any(arr > 1):
        raise InvalidArgument("polynomial argument must lie in [0, 1]")
    return arr


def _poly(terms, x):
    arr = _check_unit(x)
    out = sum(c * arr**e for c, e in terms)
    return float(out) if np.ndim(out) == 0 else out


def eval_lambda(ddp: DegreeDistributionPair, x):
    return _poly(ddp._lam_terms, x)


def eval_rho(ddp: DegreeDistributionPair, x):
    return _poly(ddp._rho_terms, x)


def eval_L(ddp: DegreeDistributionPair, x):
    """Node-perspective variable polynomial ``L(x) = sum_i L_i x**i``."""
    return _poly(ddp._L_terms, x)


def design_rate(ddp: DegreeDistributionPair) -> Fraction:
    return ddp.design_rate()


def lcm_and_multiplier(ddp: DegreeDistributionPair) -> tuple[int, int]:
    return ddp.lcm_and_multiplier()


#: Rate-1/2 pair with minimum variable degree 3 and threshold 0.4619,
#: found with the LDPCOPT search tool. The published coefficients are node
#: fractions over degrees 3, 17, 18, 19, 100 with all checks of degree 11.
LDPCOPT_RATE_HALF = DegreeDistributionPair.from_node_perspective(
    {3: "0.9043388", 17: "0.03300419", 18: "0.01434268", 19: "0.03535427", 100: "0.01296008"},
    {11: 1},
)
