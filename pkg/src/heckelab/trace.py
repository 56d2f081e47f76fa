"""Eichler-Selberg traces of T_m on S_2k(Gamma_0(N)) and the dimension formula.

``Tr T_m(N, 2k) = A1 + A2 + A3 + A4`` for ``gcd(N, m) = 1``:

* A1, identity term: ``(2k-1)/12 * psi(N) * m^(k-1)`` when ``m`` is a square;
* A2, elliptic term: ``-1/2 sum_{t^2 < 4m} P_2k(t, m) sum_n h_w((t^2-4m)/n^2) mu(t, n, m)``;
* A3, hyperbolic term: ``-1/2 sum_{d | m} min(d, m/d)^(2k-1) sum'_tau phi(gcd(tau, N/tau)) 1_N(y)``;
* A4, weight-2 correction: ``sum_{c | m, gcd(N, m/c) = 1} c`` when ``k = 1``.

The parts of A2 and A3 that do not depend on the weight are cached per
``(N, m)``, so sweeping ``k`` at a fixed level only re-evaluates ``P_2k`` and
powers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from heckelab import class_numbers
from heckelab.arith import (
    as_integer,
    check_denominator,
    crt_solve,
    divisors,
    euler_phi,
    factor,
    is_square,
    psi,
)
from heckelab.errors import InternalInconsistencyError, PreconditionError

HALF = Fraction(1, 2)


@dataclass(frozen=True, order=True)
class HeckeIndex:
    """Addresses the operator ``T_m(N, weight)``."""

    N: int
    weight: int
    m: int

    def __post_init__(self):
        if self.N < 1 or self.m < 1:
            raise PreconditionError(f"level and index must be positive: {self}")
        if self.weight < 2 or self.weight % 2:
            raise PreconditionError(f"weight must be even and >= 2: {self}")

    @property
    def k(self) -> int:
        return self.weight // 2

    def with_m(self, m: int) -> HeckeIndex:
        return HeckeIndex(self.N, self.weight, m)


@dataclass(frozen=True)
class EllipticTermDetail:
    t: int
    n: int
    discriminant: int
    hw: Fraction
    mu: Fraction


@dataclass(frozen=True)
class HyperbolicTermDetail:
    d: int
    tau: int
    y: int
    phi_factor: int
    indicator: int


@dataclass
class TraceBreakdown:
    idx: HeckeIndex
    A1: Fraction
    A2: Fraction
    A3: Fraction
    A4: Fraction
    total: int
    elliptic_details: list[EllipticTermDetail] = field(default_factory=list)
    hyperbolic_details: list[HyperbolicTermDetail] = field(default_factory=list)


@dataclass
class DimensionBreakdown:
    N: int
    weight: int
    main: Fraction
    boundary: Fraction
    delta_k1: int
    c3_term: Fraction
    c4_term: Fraction
    total: int
    delta_k: Fraction | None = None  # level one only: total - k/6


def p2k(t: int, m: int, weight: int) -> int:
    """Coefficient of ``x^(weight-2)`` in ``1 / (1 - t x + m x^2)``."""
    if weight < 2 or weight % 2:
        raise PreconditionError(f"weight must be even and >= 2, got {weight}")
    g0, g1 = 1, t
    if weight == 2:
        return g0
    for _ in range(weight - 3):
        g0, g1 = g1, t * g1 - m * g0
    return g1


def _check_coprime(N: int, m: int) -> None:
    if gcd(N, m) != 1:
        raise PreconditionError(f"trace formula needs gcd(N, m) = 1, got N={N}, m={m}")


@lru_cache(maxsize=None)
def mu_factor(t: int, n: int, m: int, N: int) -> Fraction:
    """``psi(N)/psi(N/N_n)`` times the number of units ``c`` mod ``N`` that lift
    to a root of ``c^2 - t c + m`` modulo ``N * N_n``, where ``N_n = gcd(N, n)``.
    """
    _check_coprime(N, m)
    Nn = gcd(N, n)
    modulus = N * Nn
    roots = {c % N for c in range(modulus) if (c * c - t * c + m) % modulus == 0}
    count = sum(1 for c in roots if gcd(c, N) == 1)
    return Fraction(psi(N), psi(N // Nn)) * count


def _square_divisors(x: int):
    """Positive ``n`` with ``n^2 | x``."""
    out = [1]
    for p, e in factor(abs(x)):
        out = [d * p**i for d in out for i in range(e // 2 + 1)]
    return sorted(out)


@lru_cache(maxsize=4096)
def _elliptic_data(N: int, m: int) -> tuple[tuple[tuple[int, Fraction], ...], tuple[EllipticTermDetail, ...]]:
    table = class_numbers.default_table()
    weights = []
    details = []
    r = isqrt(4 * m)
    for t in range(-r, r + 1):
        D0 = t * t - 4 * m
        if D0 >= 0:
            continue
        w = Fraction(0)
        for n in _square_divisors(D0):
            D = D0 // (n * n)
            if D % 4 not in (0, 1):
                continue
            hw = Fraction(table.hw12(D), 12)
            mu = mu_factor(t, n, m, N)
            details.append(EllipticTermDetail(t, n, D, hw, mu))
            w += hw * mu
        weights.append((t, w))
    return tuple(weights), tuple(details)


@lru_cache(maxsize=4096)
def _hyperbolic_data(N: int, m: int) -> tuple[tuple[tuple[int, int], ...], tuple[HyperbolicTermDetail, ...]]:
    counts = []
    details = []
    for d in divisors(m):
        dd = m // d
        count = 0
        for tau in divisors(N):
            g = gcd(tau, N // tau)
            if (d - dd) % g:
                continue
            sol = crt_solve(d, tau, dd, N // tau)
            if sol is None:
                raise InternalInconsistencyError(f"no CRT solution for d={d}, tau={tau}, N={N}")
            y = sol[0]
            ind = 1 if gcd(y, N) == 1 else 0
            phi = euler_phi(g)
            details.append(HyperbolicTermDetail(d, tau, y, phi, ind))
            count += phi * ind
        counts.append((d, count))
    return tuple(counts), tuple(details)


def term_A1(idx: HeckeIndex) -> Fraction:
    _check_coprime(idx.N, idx.m)
    if not is_square(idx.m):
        return Fraction(0)
    return Fraction(idx.weight - 1, 12) * psi(idx.N) * idx.m ** (idx.k - 1)


def term_A2(idx: HeckeIndex) -> tuple[Fraction, list[EllipticTermDetail]]:
    _check_coprime(idx.N, idx.m)
    weights, details = _elliptic_data(idx.N, idx.m)
    total = sum((p2k(t, idx.m, idx.weight) * w for t, w in weights), Fraction(0))
    return -HALF * total, list(details)


def term_A3(idx: HeckeIndex) -> tuple[Fraction, list[HyperbolicTermDetail]]:
    _check_coprime(idx.N, idx.m)
    counts, details = _hyperbolic_data(idx.N, idx.m)
    e = idx.weight - 1
    total = sum(min(d, idx.m // d) ** e * c for d, c in counts)
    return -HALF * total, list(details)


def term_A4(idx: HeckeIndex) -> Fraction:
    _check_coprime(idx.N, idx.m)
    if idx.k != 1:
        return Fraction(0)
    return Fraction(sum(c for c in divisors(idx.m) if gcd(idx.N, idx.m // c) == 1))


@lru_cache(maxsize=1 << 16)
def trace(idx: HeckeIndex) -> TraceBreakdown:
    """Full Eichler-Selberg breakdown of ``Tr T_m(N, 2k)``; memoized."""
    a1 = term_A1(idx)
    a2, ell = term_A2(idx)
    a3, hyp = term_A3(idx)
    a4 = term_A4(idx)
    for name, v in (("A1", a1), ("A2", a2), ("A3", a3), ("A4", a4)):
        check_denominator(v, 24, f"{name}{idx}")
    total = as_integer(a1 + a2 + a3 + a4, f"Tr T_{idx.m}(N={idx.N}, {idx.weight})")
    return TraceBreakdown(idx, a1, a2, a3, a4, total, ell, hyp)


def trace_value(N: int, weight: int, m: int) -> int:
    return trace(HeckeIndex(N, weight, m)).total


def clear_cache() -> None:
    """Drop the per-index memo (the weight-independent caches are kept)."""
    trace.cache_clear()


def trace_level_one(m: int, weight: int) -> int:
    """Level-one trace through Hurwitz class numbers.

    ``-1/2 sum_{t^2 <= 4m} P_2k(t, m) H(4m - t^2) - 1/2 sum_{d | m} min(d, m/d)^(2k-1)``;
    the ``t = +-2 sqrt(m)`` terms enter through ``H(0) = -1/12``.
    """
    if weight < 4 or weight % 2:
        raise PreconditionError(f"level-one formula needs even weight >= 4, got {weight}")
    table = class_numbers.default_table()
    r = isqrt(4 * m)
    s = sum(p2k(t, m, weight) * table.H12(4 * m - t * t) for t in range(-r, r + 1))
    hyp = sum(min(d, m // d) ** (weight - 1) for d in divisors(m))
    return as_integer(-Fraction(s, 24) - HALF * hyp, f"level-one Tr T_{m}({weight})")


def _local_symbol(d: int, p: int) -> int:
    # Kronecker (d/p) for d in {-3, -4}, including p = 2.
    if p == 2:
        return -1 if d == -3 else 0
    r = d % p
    if r == 0:
        return 0
    return 1 if pow(r, (p - 1) // 2, p) == 1 else -1


def c3(k: int) -> Fraction:
    return Fraction(2 * k - 1, 3) - (2 * k) // 3


def c4(k: int) -> Fraction:
    return Fraction(2 * k - 1, 4) - (2 * k) // 4


@lru_cache(maxsize=1 << 16)
def dim_s(N: int, weight: int) -> DimensionBreakdown:
    """Dimension of ``S_weight(Gamma_0(N))`` with its individual terms."""
    if N < 1 or weight < 2 or weight % 2:
        raise PreconditionError(f"dim_s needs N >= 1 and even weight >= 2, got {N}, {weight}")
    k = weight // 2
    primes = [p for p, _ in factor(N)]
    main = Fraction(weight - 1, 12) * psi(N)
    boundary = -HALF * sum(euler_phi(gcd(d, N // d)) for d in divisors(N))
    delta_k1 = 1 if k == 1 else 0
    c3_term = Fraction(0)
    if N % 9:
        prod3 = 1
        for p in primes:
            prod3 *= 1 + _local_symbol(-3, p)
        c3_term = c3(k) * prod3
    c4_term = Fraction(0)
    if N % 4:
        prod4 = 1
        for p in primes:
            prod4 *= 1 + _local_symbol(-4, p)
        c4_term = c4(k) * prod4
    total = as_integer(main + boundary + delta_k1 - c3_term - c4_term, f"s({N}, {weight})")
    if total < 0:
        raise InternalInconsistencyError(f"negative dimension s({N}, {weight}) = {total}")
    delta_k = total - Fraction(k, 6) if N == 1 else None
    return DimensionBreakdown(N, weight, main, boundary, delta_k1, c3_term, c4_term, total, delta_k)


def dim(N: int, weight: int) -> int:
    return dim_s(N, weight).total
