import random

import pytest
from hypothesis import given, settings, strategies as st

from apverify.algebra import QQ, Polynomial
from apverify.counting import random_point
from apverify.curves import CurvePoint
from apverify.jacobian import JacobianError, jacobian_point_from_json, validate


def test_generators_validate(C1, gens):
    Q1, Q2 = gens
    for Q in gens:
        assert validate(C1, Q.u, Q.v)
        assert Q.u.degree == 4
    assert Q1 * 2 == Q1.J.embed(CurvePoint.infinity(1))


def test_identity_and_infinity_classes(J1):
    O = J1.zero()
    assert O.is_zero() and (O.u.degree, O.m) == (0, 2)
    E = J1.embed(CurvePoint.infinity(1))
    assert (E.u.degree, E.m) == (0, 3)
    assert J1.embed(CurvePoint.infinity(-1)) == O
    assert E + (-E) == O


def test_point_rejects_invalid_pair(J1):
    with pytest.raises(JacobianError):
        J1.point(Polynomial([1, 0, 1]), Polynomial([1]))


def test_json_roundtrip(J1, gens):
    for Q in gens:
        assert jacobian_point_from_json(J1, Q.to_json()) == Q


def test_rebase_at_infinity_shape(J1, gens):
    Q1, Q2 = gens
    A, B = J1.rebase_at_infinity(Q1 * 3 + Q2, 4)
    assert A.degree == 4 and validate(J1.curve, A, B)
    D = J1.from_balance(A, B, 4)
    assert D == Q1 * 3 + Q2


@pytest.mark.parametrize("p", [7, 13])
@given(seed=st.integers(0, 2 ** 32 - 1))
@settings(max_examples=1000, deadline=None)
def test_group_law_axioms_over_fp(J1, p, seed):
    Jp = J1.reduction(p)
    rng = random.Random(seed)
    a, b, c = (random_point(Jp, rng) for _ in range(3))
    O = Jp.zero()
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + O == a
    assert a + (-a) == O
    assert (a + b) - b == a


@pytest.mark.parametrize("p, N", [(7, 2400), (13, 28500)])
def test_group_order_kills_random_points(J1, p, N):
    # N comes from point counts, an independent route to #J(F_p)
    Jp = J1.reduction(p)
    rng = random.Random(p)
    for _ in range(20):
        assert (random_point(Jp, rng) * N).is_zero()


offsets = st.tuples(st.integers(-2, 2), st.integers(-2, 2))


@pytest.mark.parametrize("p", [7, 13])
@given(x=offsets, y=offsets)
@settings(max_examples=200, deadline=None)
def test_reduction_is_a_homomorphism(small_multiples, p, x, y):
    s = (x[0] + y[0], x[1] + y[1])
    lhs = small_multiples[s][p]
    rhs = small_multiples[x][p] + small_multiples[y][p]
    assert lhs == rhs


def test_reduction_of_sum_computed_over_q(J1, small_multiples):
    # reduce the rational sum directly, not through the table
    P = small_multiples[(3, -2)]["Q"] + small_multiples[(-4, 4)]["Q"]
    assert J1.reduce_mod_p(P, 7) == small_multiples[(-1, 2)][7]


def test_reduction_needs_odd_good_prime(J1, gens):
    with pytest.raises(JacobianError):
        J1.reduce_mod_p(gens[0], 2)
    with pytest.raises(JacobianError):
        J1.reduction(7).reduce_mod_p(J1.reduction(7).zero(), 7)
