from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import assume, given, settings, strategies as st

from apverify.algebra import QQ, Polynomial
from apverify.padic import (HenselError, LocalField, LocalFieldError, PadicNumber, PrecisionError,
                            SeriesError, TruncatedSeries, find_quadratic_factor_2adic, hensel_factor,
                            hensel_lift_root, irreducibility_certificate, is_square_rational_qp,
                            newton_polygon, power_sums_from_coefficients, qp_is_square, vp)
from apverify.padic.factor import _divmod_monic

primes = st.sampled_from([2, 3, 5, 7, 13])
nonzero_rationals = st.fractions(max_denominator=500).filter(lambda q: q != 0).map(
    lambda q: mpq(q.numerator, q.denominator))


def close(a: PadicNumber, x, N):
    """a agrees with the exact rational x modulo p^N."""
    d = mpq(x) - a.to_rational()
    return d == 0 or vp(d, a.p) >= N


# -- PadicNumber ------------------------------------------------------------

@given(nonzero_rationals, nonzero_rationals, primes, st.integers(3, 12))
@settings(max_examples=200, deadline=None)
def test_arithmetic_is_sound_to_stated_precision(x, y, p, N):
    a, b = PadicNumber.from_rational(x, p, N), PadicNumber.from_rational(y, p, N)
    ops = [(a + b, x + y), (a - b, x - y), (a * b, x * y)]
    if not b.is_zero():
        ops.append((a / b, x / y))
    for res, exact in ops:
        assert close(res, exact, res.precision)


@given(nonzero_rationals, primes, st.integers(2, 10))
@settings(max_examples=100, deadline=None)
def test_inverse_and_roundtrip(x, p, N):
    a = PadicNumber.from_rational(x, p, N)
    assert a.valuation == vp(x, p) or a.is_zero()
    assert PadicNumber.from_json(a.to_json()) == a
    if not a.is_zero():
        one = a * a.inverse()
        assert close(one, 1, one.precision)


def test_zero_and_loss_of_precision():
    a = PadicNumber.from_rational(7 ** 5, 7, 4)
    assert a.is_zero() and a.valuation == 4
    b = PadicNumber.from_rational(1, 7, 4) - PadicNumber.from_rational(1 + 7 ** 4, 7, 6)
    assert b.is_zero()
    with pytest.raises(PrecisionError):
        qp_is_square(b)


def test_square_classes():
    assert is_square_rational_qp(2, 7)
    assert not is_square_rational_qp(3, 7)
    assert is_square_rational_qp(17, 2) and not is_square_rational_qp(5, 2)
    assert not is_square_rational_qp(mpq(2, 49), 7) or is_square_rational_qp(2, 7)
    assert not is_square_rational_qp(7, 7)


@given(st.integers(-200, 200), st.integers(-200, 200), st.sampled_from([3, 5, 7, 11, 13]),
       st.integers(2, 15))
@settings(max_examples=150, deadline=None)
def test_hensel_lift_of_simple_root(r, c, p, N):
    # f = (x - r)(x^2 + c x + 1) has the simple root r whenever p does not divide f'(r)
    f = Polynomial([-r, 1]) * Polynomial([1, c, 1])
    assume(int(f.derivative()(QQ(r))) % p)
    seed = PadicNumber.from_rational(r % p, p, 1)
    z = hensel_lift_root(f, seed, N)
    val = f(z.to_rational())
    assert val == 0 or vp(val, p) >= N
    assert (z.to_rational() - r) % 1 == 0


def test_hensel_examples():
    z = hensel_lift_root([-2, 0, 1], PadicNumber.from_int(3, 7, 1), 3)
    assert z.residue() == 108 and 108 ** 2 % 343 == 2
    with pytest.raises(HenselError):
        hensel_lift_root([-7, 0, 1], PadicNumber.from_int(0, 7, 1), 4)


def test_hensel_factor_lifts_coprime_factorization():
    # x^4 + 1 = (x^2 + 4x + 1)(x^2 - 4x + 1) - 16 x^2 + ... : use a genuine split mod 17
    f = [1, 0, 0, 0, 1]
    g0, h0 = [13, 0, 1], [4, 0, 1]        # x^2 + 13 and x^2 + 4 mod 17 (13 * 4 = 52 = 1)
    g, h = hensel_factor(f, g0, h0, 17, 6)
    m = 17 ** 6
    prod = [0] * 5
    for i, a in enumerate(g):
        for j, b in enumerate(h):
            prod[i + j] += a * b
    assert all((x - y) % m == 0 for x, y in zip(prod, f))
    assert g[-1] == 1


# -- Newton polygons ---------------------------------------------------------

def test_newton_polygon_slopes():
    # x^2 - 2x + 6 over Q2: one slope, roots of valuation 1/2
    assert newton_polygon([6, -2, 1], 2) == [(Fraction(-1, 2), 2)]
    # (x - 7)(x - 1/7) = x^2 - (50/7) x + 1: valuations 1 and -1
    slopes = newton_polygon([1, mpq(-50, 7), 1], 7)
    assert sorted(-s for s, _ in slopes) == [-1, 1]


def test_irreducibility_certificates():
    assert "Newton polygon" in irreducibility_certificate(Polynomial([6, -2, 1]), 2)
    cert = irreducibility_certificate(Polynomial([36, 0, 12, 4, 1]), 2)
    assert "no monic quadratic factor" in cert
    with pytest.raises(LocalFieldError):
        irreducibility_certificate(Polynomial([-1, 0, 1]), 2)   # x^2 - 1 splits


# -- quadratic factors over Z_2 ------------------------------------------------

@given(st.integers(0, 63), st.integers(0, 31).map(lambda b: 2 * b + 1),
       st.lists(st.integers(-20, 20), min_size=2, max_size=4))
@settings(max_examples=25, deadline=None)
def test_quadratic_factor_remainder_vanishes(a, b, cof):
    q0 = Polynomial([b, a, 1])
    f = q0 * Polynomial(cof + [1])
    try:
        res = find_quadratic_factor_2adic(f, precision=12)
    except PrecisionError:
        assume(False)
    assert res is not None
    q, c = res
    F = [int(x) for x in f.c]
    _, r = _divmod_monic(F, [int(x) for x in q.c], 1 << 12)
    assert not any(r)


def test_quadratic_factor_examples():
    f = Polynomial([1, 1, 1]) * Polynomial([2, 0, 0, 0, 0, 0, 0, 0, 1])
    q, _ = find_quadratic_factor_2adic(f, 16)
    assert [int(x) % (1 << 16) for x in q.c] == [1, 1, 1]
    assert find_quadratic_factor_2adic(Polynomial([36, 0, 12, 4, 1]), 12) is None


# -- local fields ------------------------------------------------------------

D2 = Polynomial([6, -2, 1])


def charpoly_of_square_root(z):
    """x^4 - tr(z) x^2 + N(z); its quadratic factors are charpolys of square roots of z."""
    # theta^2 = 2 theta - 6: tr(a + b theta) = 2a + 2b, N = a^2 + 2ab + 6b^2
    a, b = z.poly[0], z.poly[1]
    N = a * a + 2 * a * b + 6 * b * b
    assert N == z.norm()
    return Polynomial([N, 0, -(2 * a + 2 * b), 0, 1])


@given(st.integers(-40, 40), st.integers(-20, 20).map(lambda b: 2 * b + 1))
@settings(max_examples=60, deadline=None)
def test_quadratic_field_square_test_against_quartic_factor(a, b):
    K = LocalField(D2, 2)
    z = K([a, b])
    assume(z.valuation() == 0)
    Q = charpoly_of_square_root(z)
    try:
        oracle = find_quadratic_factor_2adic(Q, precision=24) is not None
    except PrecisionError:
        assume(False)
    assert K.is_square(z) == oracle


def test_local_field_valuations_and_uniformizer():
    K = LocalField(Polynomial([36, 0, 12, 4, 1]), 2,
                   uniformizer=Polynomial([0, mpq(1, 2), 0, mpq(1, 4)]))
    assert K.e == 4 and K.f == 1
    assert K.gen().valuation() == Fraction(1, 2)
    with pytest.raises(LocalFieldError):
        LocalField(Polynomial([36, 0, 12, 4, 1]), 2)     # theta has valuation 1/2, not 1/4
    assert K.is_square(K.gen() ** 2 * 3)
    assert not K.is_square(K.pi)


# -- series ------------------------------------------------------------------

series_coeffs = st.lists(st.integers(-30, 30), min_size=3, max_size=12)


@given(series_coeffs.filter(lambda c: c[0] != 0))
@settings(max_examples=100, deadline=None)
def test_series_inverse_roundtrip(c):
    s = TruncatedSeries(c, len(c))
    one = TruncatedSeries([1], len(c))
    assert s * s.inverse() == one


@given(series_coeffs)
@settings(max_examples=100, deadline=None)
def test_series_sqrt_roundtrip(c):
    s = TruncatedSeries([1] + c[1:], len(c))
    sq = s * s
    assert sq.sqrt(mpq(1)) == s
    r = sq.sqrt()
    assert r * r == sq


@given(series_coeffs)
@settings(max_examples=60, deadline=None)
def test_series_integrate_then_differentiate(c):
    s = TruncatedSeries(c, len(c))
    I = s.integrate()
    assert I.order == s.order + 1 and I[0] == 0
    assert [I[k + 1] * (k + 1) for k in range(s.order)] == list(s.coeffs)


def test_series_compose_and_errors():
    geo = TruncatedSeries([1, -1, 1, -1, 1, -1], 6)        # 1/(1 + t)
    inner = TruncatedSeries([0, 1, 0, 0, 0, 0], 6)
    assert geo.compose(inner) == geo
    with pytest.raises(SeriesError):
        TruncatedSeries([0, 1], 4).inverse()
    with pytest.raises(SeriesError):
        TruncatedSeries([2, 1], 4).sqrt()


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=6), st.integers(1, 25))
@settings(max_examples=100, deadline=None)
def test_newton_identities_match_companion_traces(c, M):
    f = Polynomial(c + [1])
    n = f.degree
    # companion matrix, exact integer powers
    comp = [[0] * n for _ in range(n)]
    for i in range(1, n):
        comp[i][i - 1] = 1
    for i in range(n):
        comp[i][n - 1] = -c[i]
    P = [row[:] for row in comp]
    sums = power_sums_from_coefficients(f, M)
    for m in range(1, M + 1):
        assert sums[m - 1] == sum(P[i][i] for i in range(n))
        P = [[sum(P[i][k] * comp[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def test_power_sums_small_example():
    assert [int(s) for s in power_sums_from_coefficients(Polynomial([2, -3, 1]), 3)] == [3, 5, 9]
