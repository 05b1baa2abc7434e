import pytest

from apverify.algebra import Polynomial
from apverify.counting import count_points_naive
from apverify.curves import HyperellipticCurve, bad_primes, curve
from apverify.solubility import (has_qp_points, has_real_points, search_rational_points,
                                 verify_q2_divisor_witnesses)
from apverify.padic import LocalField
from apverify.solubility import D3_POLY, D3_UNIFORMIZER

PRIMES = [p for p in range(3, 100) if all(p % q for q in range(2, p))]


@pytest.mark.parametrize("j", range(-2, 3))
def test_good_primes_agree_with_point_counts(j):
    # for good reduction, Q_p-points exist iff smooth F_p-points do
    C = curve(j)
    bad = bad_primes(C)
    for p in PRIMES:
        if p in bad:
            continue
        assert has_qp_points(C, p).soluble == (count_points_naive(C, p) > 0), p


def test_c0_has_no_19_adic_points():
    C0 = curve(0)
    assert count_points_naive(C0, 19) == 0
    res = has_qp_points(C0, 19)
    assert res.soluble is False


@pytest.mark.parametrize("j", [-2, -1, 1, 2])
def test_other_curves_soluble_everywhere_small(j):
    C = curve(j)
    for p in [2] + PRIMES:
        assert has_qp_points(C, p).soluble is True, p


def test_bad_prime_examples_decided():
    for j in (0, 2):
        for p in sorted(bad_primes(curve(j))):
            assert has_qp_points(curve(j), p).soluble is not None


def test_insoluble_example_at_two_and_three():
    # 3 (x^10 + 1): odd valuation or a unit = 3 mod 4 on every disc, both charts
    C = HyperellipticCurve(Polynomial([3] + [0] * 9 + [3]))
    assert has_qp_points(C, 2).soluble is False
    assert has_qp_points(C, 3).soluble is False
    assert has_qp_points(C, 7).soluble is True


def test_real_points():
    for j in (0, 1, 2):
        assert has_real_points(curve(j)).soluble
    neg = HyperellipticCurve(Polynomial([-1] + [0] * 9 + [-1]))
    assert has_real_points(neg).soluble is False


def test_search_small_bound():
    assert [repr(P) for P in search_rational_points(curve(1), 200)] == ["inf+", "inf-"]
    assert search_rational_points(curve(0), 200) == []
    assert search_rational_points(curve(2), 200) == []


def test_search_finds_planted_point():
    # 2^10 + c * 3^10 = (32 + 3^10)^2 for c = 3^10 + 64, so x = 2/3 is on y^2 = x^10 + c
    c = 3 ** 10 + 64
    C = HyperellipticCurve(Polynomial([c] + [0] * 9 + [1]))
    pts = search_rational_points(C, 10)
    xs = {str(P.x) for P in pts if not P.is_infinity}
    assert {"2/3", "-2/3"} <= xs
    assert all(C.is_on_curve(P) for P in pts if not P.is_infinity)
    assert len([P for P in pts if str(P.x) == "2/3"]) == 2


def test_q2_divisor_witnesses():
    w = verify_q2_divisor_witnesses()
    assert w["holds"] and w["D1"]["holds"] and w["D2"]["holds"] and w["D3"]["holds"]
    assert w["D2"]["e"] == 2 and w["D3"]["e"] == 4


def test_q2_local_field_negative_controls():
    K = LocalField(Polynomial(list(D3_POLY)), 2, uniformizer=Polynomial(list(D3_UNIFORMIZER)))
    y = K.gen() + 1
    assert K.is_square(y * y)
    assert not K.is_square(K.pi)
    assert K.is_square(K.pi ** 2 * y * y)
    assert not K.is_square(K.pi ** 3 * y * y)
