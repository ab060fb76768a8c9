"""Arithmetic primitives for the LPS construction.

Primality, Legendre symbols, square roots of -1 modulo a prime, and the
four-square representations of a prime that label the Cayley generators.
"""

from __future__ import annotations

from math import isqrt
from typing import NamedTuple

from .errors import InvalidArgument, UnsupportedModulus, UnsupportedPrime

# Deterministic for every n < 3.3 * 10**24, which covers all 64-bit inputs.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class QuaternionSolution(NamedTuple):
    """Integer quaternion a + bi + cj + dk of norm p, a > 0 odd, b, c, d even."""

    a: int
    b: int
    c: int
    d: int

    def norm(self) -> int:
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def conjugate(self) -> "QuaternionSolution":
        return QuaternionSolution(self.a, -self.b, -self.c, -self.d)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for ``1 <= n < 2**64``."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    n = max(n, 2)
    while not is_prime(n):
        n += 1
    return n


def legendre(a: int, q: int) -> int:
    """Legendre symbol (a | q) for an odd prime q, via Euler's criterion."""
    if q < 3 or q % 2 == 0 or not is_prime(q):
        raise InvalidArgument(f"legendre symbol needs an odd prime modulus, got {q}")
    r = pow(a % q, (q - 1) // 2, q)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


def sqrt_minus_one(q: int) -> int:
    """Smaller root x in [1, q-1] of x**2 = -1 (mod q), for a prime q = 1 (mod 4)."""
    if q % 4 != 1 or not is_prime(q):
        raise UnsupportedModulus(f"-1 is a square only modulo primes q = 1 (mod 4), got {q}")
    z = 2
    while legendre(z, q) != -1:
        z += 1
    x = pow(z, (q - 1) // 4, q)
    return min(x, q - x)


def quaternion_solutions(p: int) -> list[QuaternionSolution]:
    """All p + 1 solutions of a^2 + b^2 + c^2 + d^2 = p with a > 0 odd and b, c, d even.

    Returned in lexicographic order on (a, b, c, d). Requires a prime
    p = 1 (mod 4); by Jacobi's four-square theorem there are exactly p + 1.
    """
    if p % 4 != 1 or not is_prime(p):
        raise UnsupportedPrime(f"generator normalization needs a prime p = 1 (mod 4), got {p}")
    out = []
    root = isqrt(p)
    for a in range(1, root + 1, 2):
        ra = p - a * a
        rb_max = isqrt(ra)
        for b in range(-rb_max, rb_max + 1):
            if b % 2:
                continue
            rb = ra - b * b
            rc_max = isqrt(rb)
            for c in range(-rc_max, rc_max + 1):
                if c % 2:
                    continue
                rc = rb - c * c
                d = isqrt(rc)
                if d * d != rc or d % 2:
                    continue
                if d == 0:
                    out.append(QuaternionSolution(a, b, c, 0))
                else:
                    out.append(QuaternionSolution(a, b, c, -d))
                    out.append(QuaternionSolution(a, b, c, d))
    out.sort()
    if len(out) != p + 1:  # pragma: no cover - Jacobi's theorem
        raise UnsupportedPrime(f"expected {p + 1} generators for p={p}, found {len(out)}")
    return out
