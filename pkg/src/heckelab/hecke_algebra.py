"""Formal Hecke algebra arithmetic and Hecke polynomial coefficients.

Coefficients follow the sign convention

    char poly of T_m(N, 2k) = sum_n (-1)^n a_n x^(s - n),

so ``a_1`` is the trace and ``a_2`` the second elementary symmetric function of
the eigenvalues.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from heckelab.arith import as_integer, divisors
from heckelab.errors import DimensionTooSmallError, PreconditionError
from heckelab.trace import HeckeIndex, dim, trace

DEFAULT_N_MAX = 6


@dataclass(frozen=True)
class HeckeElement:
    """Finite integer combination ``sum_r c_r T_r`` at a fixed level and weight."""

    N: int
    weight: int
    coefficients: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, N: int, weight: int, coeffs: dict[int, int]) -> HeckeElement:
        for r in coeffs:
            if r < 1 or gcd(r, N) != 1:
                raise PreconditionError(f"index {r} not coprime to level {N}")
        items = tuple(sorted((r, c) for r, c in coeffs.items() if c))
        return cls(N, weight, items)

    @classmethod
    def T(cls, N: int, weight: int, m: int) -> HeckeElement:
        return cls.from_dict(N, weight, {m: 1})

    @classmethod
    def one(cls, N: int, weight: int) -> HeckeElement:
        return cls.T(N, weight, 1)

    def as_dict(self) -> dict[int, int]:
        return dict(self.coefficients)

    def _check_context(self, other: HeckeElement) -> None:
        if (self.N, self.weight) != (other.N, other.weight):
            raise PreconditionError(
                f"context mismatch: (N={self.N}, {self.weight}) vs (N={other.N}, {other.weight})"
            )

    def __add__(self, other: HeckeElement) -> HeckeElement:
        self._check_context(other)
        out = self.as_dict()
        for r, c in other.coefficients:
            out[r] = out.get(r, 0) + c
        return HeckeElement.from_dict(self.N, self.weight, out)

    def scale(self, c: int) -> HeckeElement:
        return HeckeElement.from_dict(self.N, self.weight, {r: c * v for r, v in self.coefficients})

    def __mul__(self, other: HeckeElement) -> HeckeElement:
        return hecke_mul(self, other)

    def __pow__(self, j: int) -> HeckeElement:
        out = HeckeElement.one(self.N, self.weight)
        for _ in range(j):
            out = hecke_mul(out, self)
        return out

    def __bool__(self) -> bool:
        return bool(self.coefficients)


def hecke_mul(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    """Product via ``T_m T_n = sum_{d | (m, n), (d, N) = 1} d^(2k-1) T_(mn/d^2)``."""
    a._check_context(b)
    e = a.weight - 1
    out: dict[int, int] = {}
    for m, cm in a.coefficients:
        for n, cn in b.coefficients:
            for d in divisors(gcd(m, n)):
                if gcd(d, a.N) != 1:
                    continue
                r = m * n // (d * d)
                out[r] = out.get(r, 0) + cm * cn * d**e
    return HeckeElement.from_dict(a.N, a.weight, out)


def trace_of(e: HeckeElement) -> int:
    """Trace of a formal combination, by linearity."""
    return sum(c * trace(HeckeIndex(e.N, e.weight, r)).total for r, c in e.coefficients)


def _check_index(idx: HeckeIndex, needed: int) -> int:
    if gcd(idx.N, idx.m) != 1:
        raise PreconditionError(f"need gcd(N, m) = 1, got {idx}")
    s = dim(idx.N, idx.weight)
    if s < needed:
        raise DimensionTooSmallError(f"s({idx.N}, {idx.weight}) = {s} < {needed}")
    return s


def a2(idx: HeckeIndex) -> int:
    """``1/2 [ (Tr T_m)^2 - sum_{d | m} d^(2k-1) Tr T_(m^2/d^2) ]``."""
    _check_index(idx, 2)
    e = idx.weight - 1
    tr = trace(idx).total
    sq = sum(d**e * trace(idx.with_m(idx.m * idx.m // (d * d))).total for d in divisors(idx.m))
    return as_integer(Fraction(tr * tr - sq, 2), f"a2{idx}")


def a2_value(N: int, weight: int, m: int) -> int:
    return a2(HeckeIndex(N, weight, m))


@dataclass
class CharPolyPrefix:
    idx: HeckeIndex
    dim: int
    power_sums: list[int] = field(default_factory=list)
    coeffs: list[int] = field(default_factory=list)

    @property
    def a1(self) -> int:
        return self.coeffs[1]

    @property
    def a2(self) -> int:
        return self.coeffs[2]


def newton_coefficients(power_sums: list[int]) -> list[int]:
    """Elementary symmetric functions ``e_0..e_n`` from power sums ``p_1..p_n``.

    Uses ``n e_n = sum_{i=1}^n (-1)^(i-1) e_(n-i) p_i``; every division must be
    exact.
    """
    e = [1]
    for n in range(1, len(power_sums) + 1):
        acc = sum((-1) ** (i - 1) * e[n - i] * power_sums[i - 1] for i in range(1, n + 1))
        e.append(as_integer(Fraction(acc, n), f"Newton step n={n}"))
    return e


def char_poly_prefix(idx: HeckeIndex, n_max: int = DEFAULT_N_MAX) -> CharPolyPrefix:
    """First ``n_max`` Hecke polynomial coefficients from traces of ``T_m^j``."""
    if n_max < 1:
        raise PreconditionError(f"n_max must be positive, got {n_max}")
    s = _check_index(idx, n_max)
    base = HeckeElement.T(idx.N, idx.weight, idx.m)
    power = HeckeElement.one(idx.N, idx.weight)
    sums = []
    for _ in range(n_max):
        power = hecke_mul(power, base)
        sums.append(trace_of(power))
    return CharPolyPrefix(idx, s, sums, newton_coefficients(sums))
