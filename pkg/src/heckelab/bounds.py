"""Explicit error terms E(N) behind the weight-monotonicity arguments.

Irrational quantities (sqrt 2, sqrt N, N^(1/4)) only ever enter through
rational enclosures rounded outward, so every verdict here is a comparison
between exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from heckelab.arith import omega, psi, sigma0
from heckelab.errors import PreconditionError

# Enclosure scale: sqrt is resolved to 1/SCALE.
SCALE = 10**30

T2_GLOBAL = Fraction(11, 8)
T4_GLOBAL = Fraction(15, 192)
T2_GLOBAL_N = 3_392_663
T4_GLOBAL_N = 332_427

OMEGA_CONST = Fraction(4862, 1000)
SIGMA0_CONST = Fraction(8447, 1000)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, x) -> Interval:
        x = Fraction(x)
        return cls(x, x)

    @staticmethod
    def _lift(x) -> Interval:
        return x if isinstance(x, Interval) else Interval.exact(x)

    def __add__(self, other) -> Interval:
        o = self._lift(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> Interval:
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other) -> Interval:
        return self + (-self._lift(other))

    def __mul__(self, other) -> Interval:
        o = self._lift(other)
        ends = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(ends), max(ends))

    __rmul__ = __mul__

    def recip(self) -> Interval:
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other) -> Interval:
        return self * self._lift(other).recip()

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def sqrt_interval(x, scale: int = SCALE) -> Interval:
    """Outward enclosure of ``sqrt(x)`` for an interval or rational ``x >= 0``."""
    x = Interval._lift(x)
    if x.lo < 0:
        raise PreconditionError("sqrt of a negative quantity")
    s2 = scale * scale
    lo = isqrt(_floor(x.lo * s2))
    t = _ceil(x.hi * s2)
    hi = isqrt(t)
    if hi * hi < t:
        hi += 1
    return Interval(Fraction(lo, scale), Fraction(hi, scale))


def root4_interval(x, scale: int = SCALE) -> Interval:
    return sqrt_interval(sqrt_interval(x, scale), scale)


SQRT2 = sqrt_interval(2)


@dataclass(frozen=True)
class ThetaProfile:
    """theta_1..theta_5 at level N.

    theta_1 = sqrt(N) * 2^omega / psi is kept as ``theta1_rational`` (the
    factor multiplying sqrt N); the rest are exact rationals.
    """

    N: int
    theta1_rational: Fraction
    theta2: Fraction
    theta3: Fraction
    theta4: Fraction
    theta5: Fraction

    @property
    def theta1(self) -> Interval:
        return sqrt_interval(self.N) * self.theta1_rational

    def as_floats(self) -> tuple[float, ...]:
        return (
            float(self.theta1_rational) * self.N ** 0.5,
            float(self.theta2),
            float(self.theta3),
            float(self.theta4),
            float(self.theta5),
        )


def theta_profile(N: int) -> ThetaProfile:
    if N < 1:
        raise PreconditionError(f"N must be positive, got {N}")
    p, w = psi(N), omega(N)
    return ThetaProfile(
        N,
        Fraction(2**w, p),
        Fraction(sigma0(N), p),
        Fraction(4**w, p),
        Fraction(2**w, p),
        Fraction(1, p),
    )


def E_T2_interval(N: int, with_dimension_theta4: bool = False) -> Interval:
    """Enclosure of E(N) from the T_2 argument.

    ``7/2 th1 + th2 + (129/2 + 8 sqrt2) th3 + (24 sqrt2 + 323/6) th4 + 9 th5``.

    The three component bounds actually sum to a theta_4 coefficient of
    ``24 sqrt2 + 323/6 + 35/12``; ``with_dimension_theta4=True`` includes the
    extra ``35/12 th4`` coming from the dimension-formula component.
    """
    th = theta_profile(N)
    c4 = Fraction(323, 6) + (Fraction(35, 12) if with_dimension_theta4 else 0)
    return (
        Fraction(7, 2) * th.theta1
        + th.theta2
        + (Fraction(129, 2) + 8 * SQRT2) * th.theta3
        + (24 * SQRT2 + c4) * th.theta4
        + 9 * th.theta5
    )


def E_T2(N: int, with_dimension_theta4: bool = False) -> Fraction:
    """Rational upper bound on E(N) for the T_2 argument."""
    return E_T2_interval(N, with_dimension_theta4).hi


def E_T4_interval(N: int) -> Interval:
    """``17/12 X + 1/3 X^2 + 234577/576 th5`` with ``X = 17/2 th4 + 1/4 th1``."""
    th = theta_profile(N)
    X = Fraction(17, 2) * th.theta4 + Fraction(1, 4) * th.theta1
    return Fraction(17, 12) * X + Fraction(1, 3) * X * X + Fraction(234577, 576) * th.theta5


def E_T4(N: int) -> Fraction:
    return E_T4_interval(N).hi


def E_T2_envelope(N: int, with_dimension_theta4: bool = False) -> Interval:
    """E(N) bound after ``2^omega <= 4.862 N^(1/4)``, ``sigma0 <= 8.447 N^(1/4)``, ``psi >= N``."""
    r4 = root4_interval(N)
    inv_r4 = r4.recip()
    inv_r2 = inv_r4 * inv_r4
    inv_r3 = inv_r2 * inv_r4
    c4 = Fraction(323, 6) + (Fraction(35, 12) if with_dimension_theta4 else 0)
    return (
        Fraction(7, 2) * OMEGA_CONST * inv_r4
        + SIGMA0_CONST * inv_r3
        + (Fraction(129, 2) + 8 * SQRT2) * OMEGA_CONST**2 * inv_r2
        + (24 * SQRT2 + c4) * OMEGA_CONST * inv_r3
        + Fraction(9, N)
    )


def E_T4_envelope(N: int) -> Interval:
    inv_r4 = root4_interval(N).recip()
    X = Fraction(17, 2) * OMEGA_CONST * inv_r4 * inv_r4 * inv_r4 + Fraction(1, 4) * OMEGA_CONST * inv_r4
    return Fraction(17, 12) * X + Fraction(1, 3) * X * X + Fraction(234577, N * 576)


def k_threshold(N: int, variant: str = "T2") -> int:
    """Least ``k >= 1`` making the large-k inequality strict.

    T2: ``(6k + 5)/8 > E(N)``; T4: ``(10k + 5)/192 > E(N)``.
    """
    variant = variant.upper()
    if variant == "T2":
        E, lhs = E_T2(N), lambda k: Fraction(6 * k + 5, 8)
    elif variant == "T4":
        E, lhs = E_T4(N), lambda k: Fraction(10 * k + 5, 192)
    else:
        raise PreconditionError(f"unknown variant {variant!r}")
    k = 1
    while not lhs(k) > E:
        k += 1
    return k


@dataclass
class BoundReport:
    N: int
    variant: str
    E_value: Fraction
    k_N: int
    global_threshold_ok: bool
    E_components_value: Fraction | None = None  # T2 only: with the 35/12 th4 term


def bound_report(N: int, variant: str = "T2") -> BoundReport:
    variant = variant.upper()
    if variant == "T2":
        E = E_T2(N)
        return BoundReport(N, variant, E, k_threshold(N, "T2"), E < T2_GLOBAL, E_T2(N, True))
    if variant == "T4":
        E = E_T4(N)
        return BoundReport(N, variant, E, k_threshold(N, "T4"), E < T4_GLOBAL)
    raise PreconditionError(f"unknown variant {variant!r}")


@dataclass
class MultiplicativeBoundReport:
    checked: int
    omega_counterexamples: list[int] = field(default_factory=list)
    sigma0_counterexamples: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.omega_counterexamples or self.sigma0_counterexamples)


def omega_bound_holds(N: int) -> bool:
    """``2^omega(N) <= 4.862 N^(1/4)``, compared as fourth powers."""
    return 2 ** (4 * omega(N)) * 1000**4 <= 4862**4 * N


def sigma0_bound_holds(N: int) -> bool:
    """``sigma0(N) <= 8.447 N^(1/4)``, compared as fourth powers."""
    return sigma0(N) ** 4 * 1000**4 <= 8447**4 * N


def check_multiplicative_bounds(sample) -> MultiplicativeBoundReport:
    rep = MultiplicativeBoundReport(0)
    for N in sample:
        rep.checked += 1
        if not omega_bound_holds(N):
            rep.omega_counterexamples.append(N)
        if not sigma0_bound_holds(N):
            rep.sigma0_counterexamples.append(N)
    return rep


def check_multiplicative_bounds_upto(limit: int) -> MultiplicativeBoundReport:
    """Exhaustive check for ``1 <= N <= limit`` using a divisor-count sieve."""
    nd = [0] * (limit + 1)
    nw = [0] * (limit + 1)
    for d in range(1, limit + 1):
        for j in range(d, limit + 1, d):
            nd[j] += 1
    for p in range(2, limit + 1):
        if nw[p] == 0 and nd[p] == 2:
            for j in range(p, limit + 1, p):
                nw[j] += 1
    rep = MultiplicativeBoundReport(limit)
    c_om, c_sig = 4862**4, 8447**4
    scale = 1000**4
    for N in range(1, limit + 1):
        if 2 ** (4 * nw[N]) * scale > c_om * N:
            rep.omega_counterexamples.append(N)
        if nd[N] ** 4 * scale > c_sig * N:
            rep.sigma0_counterexamples.append(N)
    return rep

