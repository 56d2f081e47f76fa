"""Weighted class numbers h_w(D) and Hurwitz class numbers H(n).

Everything is stored scaled by 12 so the tables hold integers. ``h_w(D)``
counts *primitive* reduced forms of discriminant ``D``, with the classes of
``x^2 + xy + y^2`` and ``x^2 + y^2`` weighted 1/3 and 1/2. Hurwitz numbers are
then assembled as ``H(n) = sum_f h_w(-n / f^2)``, which restores the imprimitive
forms of discriminant ``-n``.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path

from heckelab.arith import divisors
from heckelab.errors import PreconditionError

CACHE_ENV = "HECKELAB_CACHE"
CACHE_FILENAME = "hurwitz.csv"


def _unit_weight12(D: int) -> int:
    if D == -3:
        return 4
    if D == -4:
        return 6
    return 12


def _reduced_forms(D: int):
    """Yield the reduced forms ``(a, b, c)`` with ``b^2 - 4ac = D < 0``.

    Reduced means ``|b| <= a <= c``, with ``b >= 0`` whenever ``|b| == a`` or
    ``a == c``. Walks ``b`` and the divisors ``a`` of ``(b^2 - D) / 4``.
    """
    n = -D
    b = n % 2
    while 3 * b * b <= n:
        q = (b * b + n) // 4
        for a in divisors(q):
            if a * a > q:
                break
            if a < b:
                continue
            c = q // a
            yield a, b, c
            if 0 < b < a < c:
                yield a, -b, c
        b += 2


def twelve_hw(D: int) -> int:
    """``12 * h_w(D)`` by enumerating primitive reduced forms."""
    if D >= 0 or D % 4 not in (0, 1):
        raise PreconditionError(f"not a negative discriminant: {D}")
    return _unit_weight12(D) * sum(
        1 for a, b, c in _reduced_forms(D) if gcd(gcd(a, b), c) == 1
    )


def _twelve_H_from_hw(n: int, hw12) -> int:
    if n == 0:
        return -1
    if n % 4 in (1, 2):
        return 0
    total = 0
    f = 1
    while f * f <= n:
        if n % (f * f) == 0 and (-n // (f * f)) % 4 in (0, 1):
            total += hw12(-n // (f * f))
        f += 1
    return total


@dataclass
class ClassNumberTable:
    twelfths_H: dict[int, int] = field(default_factory=lambda: {0: -1})
    twelfths_hw: dict[int, int] = field(default_factory=dict)
    max_n: int = 0

    def hw12(self, D: int) -> int:
        v = self.twelfths_hw.get(D)
        if v is None:
            v = self.twelfths_hw[D] = twelve_hw(D)
        return v

    def H12(self, n: int) -> int:
        if n < 0:
            raise PreconditionError(f"H(n) needs n >= 0, got {n}")
        v = self.twelfths_H.get(n)
        if v is None:
            v = self.twelfths_H[n] = _twelve_H_from_hw(n, self.hw12)
        return v

    def extend(self, max_n: int) -> ClassNumberTable:
        """Populate every ``n <= max_n`` in one sweep over reduced forms."""
        if max_n <= self.max_n:
            return self
        hw = {}
        a = 1
        while 3 * a * a <= max_n:
            for b in range(-a + 1, a + 1):
                c = a
                while True:
                    n = 4 * a * c - b * b
                    if n > max_n:
                        break
                    if not (b < 0 and a == c) and gcd(gcd(a, b), c) == 1:
                        hw[-n] = hw.get(-n, 0) + 1
                    c += 1
            a += 1
        for n in range(1, max_n + 1):
            if n % 4 in (0, 3):
                self.twelfths_hw[-n] = _unit_weight12(-n) * hw.get(-n, 0)
        for n in range(self.max_n + 1, max_n + 1):
            self.twelfths_H[n] = _twelve_H_from_hw(n, self.hw12)
        self.max_n = max_n
        return self

    def save(self, path: str | os.PathLike) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "twelve_H"])
            for n in range(self.max_n + 1):
                w.writerow([n, self.H12(n)])
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str | os.PathLike) -> ClassNumberTable:
        table = cls()
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            if header != ["n", "twelve_H"]:
                raise ValueError(f"{path}: unexpected header {header}")
            expected = 0
            for row in reader:
                n, v = int(row[0]), int(row[1])
                if n != expected:
                    raise ValueError(f"{path}: rows not contiguous at n={n}")
                table.twelfths_H[n] = v
                expected += 1
        table.max_n = expected - 1 if expected else 0
        return table


_TABLE = ClassNumberTable()


def default_table() -> ClassNumberTable:
    return _TABLE


def weighted_hw(D: int) -> Fraction:
    """Weighted class number of the negative discriminant ``D``.

    >>> weighted_hw(-3), weighted_hw(-23)
    (Fraction(1, 3), Fraction(3, 1))
    """
    return Fraction(_TABLE.hw12(D), 12)


def hurwitz_H(n: int) -> Fraction:
    """Hurwitz class number, with ``H(0) = -1/12``."""
    return Fraction(_TABLE.H12(n), 12)


def cache_path(cache_dir: str | os.PathLike | None = None) -> Path | None:
    cache_dir = cache_dir or os.environ.get(CACHE_ENV)
    return Path(cache_dir) / CACHE_FILENAME if cache_dir else None


def preload(max_n: int, cache_dir: str | os.PathLike | None = None) -> ClassNumberTable:
    """Fill the shared table for all ``n <= max_n``; idempotent.

    When a cache directory is given (or ``HECKELAB_CACHE`` is set) the table
    is read from and written back to ``hurwitz.csv`` there.
    """
    global _TABLE
    if max_n < 0:
        raise PreconditionError(f"preload() needs max_n >= 0, got {max_n}")
    path = cache_path(cache_dir)
    if path is not None and path.exists() and _TABLE.max_n < max_n:
        cached = ClassNumberTable.load(path)
        if cached.max_n > _TABLE.max_n:
            cached.twelfths_hw.update(_TABLE.twelfths_hw)
            _TABLE = cached
    if _TABLE.max_n < max_n:
        _TABLE.extend(max_n)
        if path is not None:
            _TABLE.save(path)
    return _TABLE
