"""Level-one ground truth built from q-expansions alone.

The Miller basis of ``S_2k(SL_2(Z))`` comes from products ``Delta * E4^a * E6^b``
reduced to echelon form, and ``T_m`` acts on coefficients directly:

    T_m f = sum_n ( sum_{d | (m, n)} d^(2k-1) c_f(mn/d^2) ) q^n.

Nothing here touches the trace formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from heckelab.arith import divisors, sigma
from heckelab.errors import InternalInconsistencyError, PreconditionError


@dataclass(frozen=True)
class QSeries:
    """Truncated power series ``sum_{n < prec} c_n q^n``."""

    coefficients: tuple

    @property
    def prec(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, n: int):
        return self.coefficients[n]

    def __add__(self, other: QSeries) -> QSeries:
        p = min(self.prec, other.prec)
        return QSeries(tuple(a + b for a, b in zip(self.coefficients[:p], other.coefficients[:p])))

    def __sub__(self, other: QSeries) -> QSeries:
        return self + other.scale(-1)

    def scale(self, c) -> QSeries:
        return QSeries(tuple(c * a for a in self.coefficients))

    def __mul__(self, other: QSeries) -> QSeries:
        p = min(self.prec, other.prec)
        a, b = self.coefficients, other.coefficients
        out = [0] * p
        for i in range(p):
            if a[i]:
                ai = a[i]
                for j in range(p - i):
                    out[i + j] += ai * b[j]
        return QSeries(tuple(out))

    def __pow__(self, e: int) -> QSeries:
        out = QSeries((1,) + (0,) * (self.prec - 1))
        for _ in range(e):
            out = out * self
        return out


def eisenstein(weight: int, prec: int) -> QSeries:
    """Normalized ``E_4`` or ``E_6`` to ``prec`` terms."""
    if prec < 1:
        raise PreconditionError(f"prec must be positive, got {prec}")
    if weight == 4:
        c, power = 240, 3
    elif weight == 6:
        c, power = -504, 5
    else:
        raise PreconditionError(f"unsupported Eisenstein weight {weight}")
    return QSeries((1,) + tuple(c * sigma(n, power) for n in range(1, prec)))


def delta(prec: int) -> QSeries:
    e4, e6 = eisenstein(4, prec), eisenstein(6, prec)
    d = (e4 ** 3 - e6 ** 2).coefficients
    if any(x % 1728 for x in d):
        raise InternalInconsistencyError("E4^3 - E6^2 not divisible by 1728")
    return QSeries(tuple(x // 1728 for x in d))


def level_one_dim(weight: int) -> int:
    """``dim S_weight(SL_2(Z))`` by counting ``(a, b)`` with ``4a + 6b = weight - 12``."""
    if weight < 12 or weight % 2:
        return 0
    r = weight - 12
    return sum(1 for b in range(r // 6 + 1) if (r - 6 * b) % 4 == 0)


def miller_basis(weight: int, prec: int) -> list[QSeries]:
    """Echelon basis ``f_i = q^i + O(q^(dim+1))`` of level-one cusp forms."""
    d = level_one_dim(weight)
    if d == 0:
        return []
    if prec < d + 1:
        raise PreconditionError(f"prec {prec} too small for dimension {d}")
    e4, e6, dl = eisenstein(4, prec), eisenstein(6, prec), delta(prec)
    r = weight - 12
    gens = []
    for b in range(r // 6 + 1):
        if (r - 6 * b) % 4 == 0:
            gens.append(dl * e4 ** ((r - 6 * b) // 4) * e6 ** b)
    rows = [[Fraction(x) for x in g.coefficients] for g in gens]
    # Gaussian elimination on columns 1..d.
    for i in range(d):
        col = i + 1
        piv = next((j for j in range(i, d) if rows[j][col] != 0), None)
        if piv is None:
            raise InternalInconsistencyError(f"cusp form products are dependent at weight {weight}")
        rows[i], rows[piv] = rows[piv], rows[i]
        pv = rows[i][col]
        rows[i] = [x / pv for x in rows[i]]
        for j in range(d):
            if j != i and rows[j][col] != 0:
                f = rows[j][col]
                rows[j] = [x - f * y for x, y in zip(rows[j], rows[i])]
    basis = []
    for row in rows:
        if any(x.denominator != 1 for x in row):
            raise InternalInconsistencyError(f"non-integral Miller basis at weight {weight}")
        basis.append(QSeries(tuple(int(x) for x in row)))
    return basis


def apply_hecke(f: QSeries, m: int, weight: int, n_terms: int) -> list[int]:
    """Coefficients ``0..n_terms-1`` of ``T_m f`` at level one."""
    if (n_terms - 1) * m >= f.prec:
        raise PreconditionError(f"need prec > {(n_terms - 1) * m}, have {f.prec}")
    e = weight - 1
    out = [0] * n_terms
    for n in range(n_terms):
        if n == 0:
            # constant term: sigma_{2k-1}(m) c(0)
            out[0] = sigma(m, e) * f[0]
            continue
        out[n] = sum(d**e * f[m * n // (d * d)] for d in divisors(gcd(m, n)))
    return out


def hecke_matrix(m: int, weight: int) -> list[list[int]]:
    """Matrix of ``T_m`` on the Miller basis; row ``i`` is the image of ``f_(i+1)``."""
    d = level_one_dim(weight)
    if d == 0:
        raise PreconditionError(f"no cusp forms of weight {weight} at level one")
    basis = miller_basis(weight, m * d + 1)
    # T_m f_i = sum_j M[i][j] f_j, read off from the coefficients of q^1..q^d.
    return [apply_hecke(f, m, weight, d + 1)[1:] for f in basis]


def matmul(A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def determinant(M: list[list[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for i in range(n - 1):
        if A[i][i] == 0:
            swap = next((j for j in range(i + 1, n) if A[j][i] != 0), None)
            if swap is None:
                return 0
            A[i], A[swap] = A[swap], A[i]
            sign = -sign
        for j in range(i + 1, n):
            for l in range(i + 1, n):
                A[j][l] = (A[j][l] * A[i][i] - A[j][i] * A[i][l]) // prev
        prev = A[i][i]
    return sign * A[n - 1][n - 1]


def char_poly_coefficients(M: list[list[int]], n_max: int | None = None) -> list[int]:
    """``a_0..a_n_max``: ``a_n`` is the sum of the principal ``n x n`` minors of ``M``."""
    d = len(M)
    out = [1]
    for n in range(1, min(d, d if n_max is None else n_max) + 1):
        out.append(sum(determinant([[M[i][j] for j in S] for i in S]) for S in combinations(range(d), n)))
    return out


@dataclass(frozen=True)
class EigenvalueSignature:
    weight: int
    m: int
    dim: int
    a1: int
    a2: int | None
    coeffs: tuple[int, ...] | None  # full list when dim <= 6


def oracle_signature(m: int, weight: int) -> EigenvalueSignature:
    M = hecke_matrix(m, weight)
    d = len(M)
    coeffs = char_poly_coefficients(M, None if d <= 6 else 2)
    return EigenvalueSignature(
        weight, m, d, coeffs[1], coeffs[2] if d >= 2 else None, tuple(coeffs) if d <= 6 else None
    )
