"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (lines are printed live) or
directly with ``python3 tests/test_acceptance.py``. All comparisons are exact.
"""

from __future__ import annotations

import sys
import time
from fractions import Fraction
from math import gcd

import pytest

from heckelab import bounds as bd
from heckelab import class_numbers as cn
from heckelab import oracle
from heckelab import trace as tr
from heckelab import verify as vf
from heckelab.arith import is_prime, psi
from heckelab.hecke_algebra import a2_value

ODD_PRIMES_97 = [p for p in range(3, 98, 2) if is_prime(p)]


# Collected here and printed by the terminal-summary hook in conftest.py.
RESULT_LINES: list[str] = []


def report(num: int, title: str, ok: bool, detail: str, t0: float) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num:>2}: {title} ({detail}; {time.perf_counter() - t0:.1f}s)"
    RESULT_LINES.append(line)
    print(line)
    assert ok, line


def test_c01_identity_trace_equals_dimension():
    t0 = time.perf_counter()
    bad, n = [], 0
    for N in range(1, 501, 2):
        for k in range(1, 31):
            n += 1
            if tr.trace_value(N, 2 * k, 1) != tr.dim(N, 2 * k):
                bad.append((N, k))
        tr.clear_cache()
    report(1, "Tr T_1(N,2k) = s(N,2k), odd N <= 500, k <= 30", not bad, f"{n} cases, {len(bad)} mismatches", t0)


def test_c02_oracle_equivalence():
    t0 = time.perf_counter()
    bad, n = [], 0
    for w in range(12, 62, 2):
        if oracle.level_one_dim(w) == 0:
            # no cusp forms: the oracle has nothing to say and the formula must give 0
            if any(tr.trace_value(1, w, m) for m in (2, 3, 4, 5, 6, 9, 16)):
                bad.append((w, "nonzero trace on zero space"))
            continue
        for m in (2, 3, 4, 5, 6, 9, 16):
            sig = oracle.oracle_signature(m, w)
            n += 1
            if sig.a1 != tr.trace_value(1, w, m):
                bad.append((w, m, "a1"))
            if sig.dim >= 2 and sig.a2 != a2_value(1, w, m):
                bad.append((w, m, "a2"))
    report(2, "oracle a1, a2 = trace formula, 12 <= 2k <= 60", not bad, f"{n} signatures, {len(bad)} mismatches", t0)


def test_c03_anchored_values():
    t0 = time.perf_counter()
    o2 = oracle.oracle_signature(2, 12).a1
    o3 = oracle.oracle_signature(3, 12).a1
    o24 = oracle.oracle_signature(2, 24).a2
    oracle_ok = (o2, o3, o24) == (-24, 252, -20468736)
    formula = (tr.trace_value(1, 12, 2), tr.trace_value(1, 12, 3), a2_value(1, 24, 2))
    ok = oracle_ok and formula == (o2, o3, o24)
    report(3, "Tr T2(1,12), Tr T3(1,12), a2(T2(1,24))", ok, f"oracle {(o2, o3, o24)}, formula {formula}", t0)


def test_c04_t3_below_t2():
    t0 = time.perf_counter()
    r = vf.verify_T3_lt_T2(100)
    report(4, "a2(T3(1,2k)) < a2(T2(1,2k)), 12 <= k <= 100, k != 13", r.verdict == "verified",
           f"{r.details['checks']} k values, skipped {r.details['skipped_k']}", t0)


def test_c05_t2_monotone():
    t0 = time.perf_counter()
    r = vf.verify_T2_monotone(range(1, 200, 2), 40, workers=1)
    ok = r.verdict == "verified" and r.details["tail_exceptions"] == 0
    report(5, "a2(T2(N,2k)) strictly decreasing, odd N <= 199, k <= 40", ok,
           f"{r.details['checks']} pairs, {r.details['tail_pairs']} past k_N, {r.details['tail_exceptions']} tail exceptions", t0)


def test_c06_t4_nonrepeat():
    t0 = time.perf_counter()
    r = vf.verify_T4_nonrepeat(range(1, 100, 2), 30)
    report(6, "a2(T4(N,2k)) pairwise distinct, odd N <= 99, k <= 30", r.verdict == "verified",
           f"{r.details['checks']} values beyond the first per level", t0)


def test_c07_prime_level():
    t0 = time.perf_counter()
    primes = [p for p in range(3, 48, 2) if is_prime(p)]
    reps = [vf.verify_prime_level(k, primes, include_one=True) for k in (58, 59, 60)]
    ok = all(r.verdict == "verified" for r in reps)
    report(7, "a2(T2(p,2k)) > a2(T2(q,2k)), p < q in {1} + primes <= 47, k = 58..60", ok,
           f"{sum(r.details['checks'] for r in reps)} pairs", t0)


def test_c08_bounds():
    t0 = time.perf_counter()
    e2 = bd.E_T2(bd.T2_GLOBAL_N)
    e4 = bd.E_T4(bd.T4_GLOBAL_N)
    mult = bd.check_multiplicative_bounds_upto(10**5)
    ok = e2 < bd.T2_GLOBAL and e4 < bd.T4_GLOBAL and mult.ok
    report(8, "E_T2(3392663) < 11/8, E_T4(332427) < 15/192, 4.862/8.447 bounds for N <= 1e5", ok,
           f"E_T2 <= {float(e2):.6g}, E_T4 <= {float(e4):.6g}, {mult.checked} N checked", t0)


def _lemma_failures(k: int) -> list[str]:
    out = []
    w = 2 * k
    main = Fraction(w - 1, 12)
    t3 = tr.trace_value(1, w, 3)
    if not t3 * t3 < 22 * 9 ** (k - 1):
        out.append(f"(Tr T3)^2 k={k}")
    if not abs(tr.trace_value(1, w, 9) - main * 9 ** (k - 1)) < 15 * 9 ** (k - 1):
        out.append(f"Tr T9 k={k}")
    if not abs(tr.trace_value(1, w, 4) - main * 4 ** (k - 1)) < 9 * 4 ** (k - 1):
        out.append(f"Tr T4 k={k}")
    for p in [1] + ODD_PRIMES_97:
        if not abs(tr.dim(p, w) - main * psi(p)) <= Fraction(13, 6):
            out.append(f"s(p) p={p} k={k}")
        t2 = tr.trace_value(p, w, 2)
        if not t2 * t2 <= Fraction(104, 5) * 4 ** (k - 1):
            out.append(f"(Tr T2(p))^2 p={p} k={k}")
        if not abs(Fraction(tr.trace_value(p, w, 4), 4 ** (k - 1)) - main * psi(p)) < Fraction(1377, 100):
            out.append(f"Tr T4(p) p={p} k={k}")
    return out


def test_c09_lemma_bounds():
    t0 = time.perf_counter()
    bad = [f for k in range(10, 61) for f in _lemma_failures(k)]
    report(9, "six lemma bounds, 10 <= k <= 60, p in {1} + odd primes <= 97", not bad,
           f"{len(bad)} violations" + (f": {bad[:5]}" if bad else ""), t0)


def _brute_H(n: int) -> Fraction:
    if n == 0:
        return Fraction(-1, 12)
    total = Fraction(0)
    for a in range(1, n + 1):
        for c in range(a, n + 1):
            for b in range(-a, a + 1):
                if b * b - 4 * a * c != -n or (b < 0 and (-b == a or a == c)):
                    continue
                total += Fraction(1, 3) if a == b == c else Fraction(1, 2) if (b == 0 and a == c) else 1
    return total


def test_c10_class_numbers():
    t0 = time.perf_counter()
    anchors = {0: Fraction(-1, 12), 3: Fraction(1, 3), 4: Fraction(1, 2), 7: 1, 8: 1, 11: 1,
               12: Fraction(4, 3), 15: 2, 16: Fraction(3, 2), 19: 1, 20: 2, 23: 3}
    cn.preload(100)
    brute_bad = [n for n in range(101) if cn.hurwitz_H(n) != _brute_H(n)]
    anchor_bad = [n for n, v in anchors.items() if cn.hurwitz_H(n) != v]
    report(10, "H(n) = brute force for n <= 100, twelve anchored values", not (brute_bad or anchor_bad),
           f"{len(brute_bad)} brute-force mismatches, {len(anchor_bad)} anchor mismatches", t0)


@pytest.mark.xfail(strict=True, reason=(
    "the sign pattern is asymptotic in s(N,2k): level 1 (s <= 6 for k <= 40) and "
    "T_9 at N=5, k=23 break it with oracle-confirmed values"
))
def test_c11_asymptotic_signs():
    t0 = time.perf_counter()
    bad, n = [], 0
    for m, sign in ((2, -1), (3, -1), (5, -1), (4, 1), (9, 1)):
        for N in range(1, 51, 2):
            if gcd(N, m) != 1:
                continue
            for k in range(20, 41):
                if tr.dim(N, 2 * k) < 2:
                    continue
                n += 1
                v = a2_value(N, 2 * k, m)
                if v * sign <= 0:
                    bad.append((m, N, k))
    where = sorted({(m, N) for m, N, _ in bad})
    report(11, "sign of a2(T_m(N,2k)): < 0 for m = 2,3,5 and > 0 for m = 4,9", not bad,
           f"{n} cases, {len(bad)} wrong signs" + (f" at (m, N) in {where}" if bad else ""), t0)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
