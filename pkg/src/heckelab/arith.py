"""Exact integer and rational primitives shared by the rest of the package.

Rationals are plain :class:`fractions.Fraction` values, which are always kept
in lowest terms with a positive denominator.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, prod

from heckelab.errors import InternalInconsistencyError, PreconditionError

ExactScalar = Fraction
Factorization = tuple[tuple[int, int], ...]

# Offsets of the mod-30 wheel, starting from 7.
_WHEEL = (4, 2, 4, 2, 4, 6, 2, 6)


@lru_cache(maxsize=1 << 16)
def factor(n: int) -> Factorization:
    """Prime factorization of ``n`` as ``((p, e), ...)`` with ``p`` increasing.

    >>> factor(12)
    ((2, 2), (3, 1))
    >>> factor(1)
    ()
    """
    if n < 1:
        raise PreconditionError(f"factor() needs n >= 1, got {n}")
    out = []
    for p in (2, 3, 5):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    p, i = 7, 0
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += _WHEEL[i]
        i = (i + 1) % 8
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def is_prime(n: int) -> bool:
    return n >= 2 and factor(n) == ((n, 1),)


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factor(n)]


@lru_cache(maxsize=1 << 14)
def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of ``n`` in increasing order."""
    divs = [1]
    for p, e in factor(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return tuple(sorted(divs))


def psi(N: int) -> int:
    """Index of Gamma_0(N) in SL_2(Z): ``N * prod_{p | N} (1 + 1/p)``."""
    out = N
    for p, _ in factor(N):
        out = out // p * (p + 1)
    return out


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factor(n):
        out = out // p * (p - 1)
    return out


def sigma0(n: int) -> int:
    return prod(e + 1 for _, e in factor(n))


def sigma(n: int, power: int = 1) -> int:
    """Sum of ``d**power`` over the divisors of ``n``."""
    return sum(d**power for d in divisors(n))


def omega(n: int) -> int:
    """Number of distinct prime divisors."""
    return len(factor(n))


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def kronecker(d: int, p: int) -> int:
    """Legendre symbol ``(d / p)`` for an odd prime ``p``."""
    if p < 3 or not is_prime(p):
        raise PreconditionError(f"kronecker() needs an odd prime, got {p}")
    r = d % p
    if r == 0:
        return 0
    return 1 if pow(r, (p - 1) // 2, p) == 1 else -1


def crt_solve(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int] | None:
    """Solve ``y = r1 (mod m1)``, ``y = r2 (mod m2)``.

    Returns ``(y, lcm)`` with ``0 <= y < lcm``, or ``None`` when the two
    congruences are incompatible.
    """
    g = gcd(m1, m2)
    if (r1 - r2) % g:
        return None
    lcm = m1 // g * m2
    if lcm == 1:
        return 0, 1
    # y = r1 + m1 * s with m1 * s = r2 - r1 (mod m2)
    s = ((r2 - r1) // g * pow(m1 // g, -1, m2 // g)) % (m2 // g) if m2 // g > 1 else 0
    return (r1 + m1 * s) % lcm, lcm


def as_integer(x: Fraction, what: str = "value") -> int:
    """Return ``x`` as an int, raising if it is not integral."""
    if x.denominator != 1:
        raise InternalInconsistencyError(f"{what} is not an integer: {x}")
    return x.numerator


def check_denominator(x: Fraction, modulus: int = 24, what: str = "value") -> Fraction:
    if modulus % x.denominator:
        raise InternalInconsistencyError(
            f"{what} = {x} has denominator not dividing {modulus}"
        )
    return x
