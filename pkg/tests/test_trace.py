from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from heckelab import trace as tr
from heckelab.arith import is_prime, psi
from heckelab.errors import PreconditionError


# p2k ---------------------------------------------------------------------

def test_p2k_examples():
    assert tr.p2k(5, 7, 2) == 1
    assert tr.p2k(1, 2, 4) == -1
    for t in (1, 2, 3, -4):
        for k in range(1, 12):
            assert tr.p2k(2 * t, t * t, 2 * k) == t ** (2 * k - 2) * (2 * k - 1)
            assert tr.p2k(-2 * t, t * t, 2 * k) == t ** (2 * k - 2) * (2 * k - 1)


@pytest.mark.parametrize("w", [0, 3, -2])
def test_p2k_bad_weight(w):
    with pytest.raises(PreconditionError):
        tr.p2k(1, 2, w)


def _quadratic_pow(a, b, D, e):
    """(a + b sqrt D)^e as a pair of rationals."""
    x, y = Fraction(1), Fraction(0)
    for _ in range(e):
        x, y = x * a + y * b * D, x * b + y * a
    return x, y


@settings(max_examples=150)
@given(st.integers(-12, 12), st.integers(1, 40), st.integers(1, 25))
def test_p2k_closed_form(t, m, k):
    D = t * t - 4 * m
    if D == 0:
        return
    # rho = (t + sqrt D)/2; (rho^n - rhobar^n)/(rho - rhobar) = 2 * (sqrt D part of rho^n)
    _, y = _quadratic_pow(Fraction(t, 2), Fraction(1, 2), D, 2 * k - 1)
    assert tr.p2k(t, m, 2 * k) == 2 * y


@settings(max_examples=150)
@given(st.integers(-30, 30), st.integers(1, 300), st.integers(1, 40))
def test_p2k_symmetry_and_bound(t, m, k):
    w = 2 * k
    v = tr.p2k(t, m, w)
    assert v == tr.p2k(-t, m, w)
    D = 4 * m - t * t
    if D > 0:
        # |P| <= 2 m^(k-1/2) / sqrt|D|, squared; only for complex roots
        assert v * v * D <= 4 * m ** (2 * k - 1)


# mu and the A-terms -------------------------------------------------------

def test_mu_examples():
    assert tr.mu_factor(3, 1, 5, 1) == 1
    assert tr.mu_factor(0, 1, 2, 3) == 2
    assert tr.mu_factor(1, 1, 2, 5) == 0


def test_mu_gcd():
    with pytest.raises(PreconditionError):
        tr.mu_factor(0, 1, 3, 3)


def test_A1():
    assert tr.term_A1(tr.HeckeIndex(7, 12, 2)) == 0
    assert tr.term_A1(tr.HeckeIndex(1, 12, 9)) == Fraction(11, 12) * 9**5


def test_A4():
    assert tr.term_A4(tr.HeckeIndex(1, 2, 4)) == 7
    assert tr.term_A4(tr.HeckeIndex(1, 4, 4)) == 0


@pytest.mark.parametrize("k", range(1, 20))
def test_A3_m9_level_one(k):
    v, _ = tr.term_A3(tr.HeckeIndex(1, 2 * k, 9))
    assert v == -1 - Fraction(3 ** (2 * k - 1), 2)


@pytest.mark.parametrize("p", [q for q in range(3, 100) if is_prime(q)])
def test_A3_m2_prime_level(p):
    v, details = tr.term_A3(tr.HeckeIndex(p, 24, 2))
    assert abs(v) <= 2
    for h in details:
        assert h.indicator in (0, 1)


def test_details_consistent():
    b = tr.trace(tr.HeckeIndex(15, 12, 7))
    for e in b.elliptic_details:
        assert e.discriminant % 4 in (0, 1)
        assert e.discriminant * e.n**2 == e.t**2 - 28
        assert (e.mu * psi(15 // gcd(15, e.n))).denominator == 1
    for h in b.hyperbolic_details:
        assert h.y % h.tau == h.d % h.tau
        assert h.y % (15 // h.tau) == (7 // h.d) % (15 // h.tau)
    assert b.A1 + b.A2 + b.A3 + b.A4 == b.total


# traces --------------------------------------------------------------------

def test_level_one_values():
    assert tr.trace_value(1, 12, 2) == -24
    assert tr.trace_value(1, 12, 3) == 252
    assert tr.trace_value(1, 24, 2) == 1080
    assert tr.trace_value(1, 12, 4) == -1472


def test_gcd_violation():
    with pytest.raises(PreconditionError):
        tr.trace(tr.HeckeIndex(2, 12, 2))


@pytest.mark.parametrize("bad", [(0, 12, 1), (1, 3, 1), (1, 0, 1), (1, 12, 0)])
def test_index_validation(bad):
    with pytest.raises(PreconditionError):
        tr.HeckeIndex(*bad)


@pytest.mark.parametrize("N", range(1, 120, 2))
def test_identity_trace_is_dimension(N):
    for k in range(1, 16):
        assert tr.trace_value(N, 2 * k, 1) == tr.dim(N, 2 * k)


def test_identity_trace_even_level():
    for N in (2, 4, 8, 12, 18, 36, 100):
        for k in range(1, 10):
            assert tr.trace_value(N, 2 * k, 1) == tr.dim(N, 2 * k)


@pytest.mark.parametrize("m", range(1, 21))
def test_level_one_formula_agrees(m):
    for w in range(4, 62, 2):
        assert tr.trace_level_one(m, w) == tr.trace_value(1, w, m)


def test_level_one_t9_main_term():
    # the H(0) contribution at t = +-6 is (2k-1)/12 * 9^(k-1)
    for k in range(2, 20):
        assert tr.term_A1(tr.HeckeIndex(1, 2 * k, 9)) == Fraction(2 * k - 1, 12) * 9 ** (k - 1)


# weight 2 against elliptic curves -------------------------------------------

CURVES = {
    11: (0, -1, 1, -10, -20),
    15: (1, 1, 1, -10, -10),
    17: (1, -1, 1, -1, -14),
    19: (0, 1, 1, -9, -15),
    21: (1, 0, 0, -4, -1),
    27: (0, 0, 1, 0, -7),
    49: (1, -1, 0, -2, -1),
}


def _ap(curve, p):
    a1, a2, a3, a4, a6 = curve
    affine = sum(
        1 for x in range(p) for y in range(p)
        if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % p == 0
    )
    return p - affine


def _a(curve, m):
    out = 1
    for p in range(2, m + 1):
        if m % p or not is_prime(p):
            continue
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        ap = _ap(curve, p)
        prev, cur = 1, ap
        for _ in range(e - 1):
            prev, cur = cur, ap * cur - p * prev
        out *= cur
    return out


@pytest.mark.parametrize("N", sorted(CURVES))
def test_weight_two_matches_curve(N):
    assert tr.dim(N, 2) == 1
    for m in (2, 3, 4, 5, 7, 8, 9, 10, 13, 16, 25, 49):
        if gcd(m, N) == 1:
            assert tr.trace_value(N, 2, m) == _a(CURVES[N], m), m


# dimensions ----------------------------------------------------------------

def test_dim_examples():
    assert tr.dim(1, 2) == 0
    assert tr.dim(1, 24) == 2
    assert tr.dim(11, 2) == 1
    for k in range(7, 200, 6):
        assert tr.dim(1, 2 * k) == k // 6 - 1


def test_dim_breakdown_sums():
    for N in (1, 3, 9, 25, 45, 105):
        for k in range(1, 12):
            d = tr.dim_s(N, 2 * k)
            assert d.main + d.boundary + d.delta_k1 - d.c3_term - d.c4_term == d.total


def test_delta_k_range():
    for k in range(1, 300):
        d = tr.dim_s(1, 2 * k)
        assert -2 <= d.delta_k <= 0
    assert tr.dim_s(3, 12).delta_k is None


def test_c3_c4():
    assert tr.c3(1) == Fraction(1, 3)
    assert tr.c4(1) == Fraction(1, 4)
    assert tr.c3(3) == Fraction(-1, 3)
