import random

import pytest

from apverify.algebra import IntegerLattice
from apverify.cli.ledger import AssumptionLedger, default_ledger
from apverify.curves import CurvePoint
from apverify.sieve import (CosetSystem, coset_intersection_empty, five_rank_surjection,
                            joint_image_index, residue_class_set, sieve_conclusion, signed_label,
                            solve_representative)


def test_dlog_coordinates_of_generators(prime_data_7_13):
    d7 = prime_data_7_13[7]
    assert d7.coords == ((4, 180), (2, 193))


def test_kernel_lattices(prime_data_7_13):
    d7, d13 = prime_data_7_13[7], prime_data_7_13[13]
    assert d7.kernel.basis == ((5, 60), (0, 240))
    assert d13.kernel.basis == ((2, 524), (0, 2850))
    assert (d7.image_index, d13.image_index) == (2, 5)


@pytest.mark.parametrize("p", [7, 13])
def test_kernel_membership_against_group_arithmetic(prime_data_7_13, p):
    d = prime_data_7_13[p]
    q1, q2 = d.gens
    rng = random.Random(p)
    basis = d.kernel.basis
    members = []
    for _ in range(50):
        a, b = rng.randint(-20, 20), rng.randint(-20, 20)
        members.append([a * basis[0][i] + b * basis[1][i] for i in range(2)])
    others = []
    while len(others) < 50:
        v = [rng.randint(-3000, 3000), rng.randint(-3000, 3000)]
        if not d.kernel.contains(v):
            others.append(v)
    for m, n in members:
        assert (q1 * m + q2 * n).is_zero()
    for m, n in others:
        assert not (q1 * m + q2 * n).is_zero()


def test_residue_class_sets(prime_data_7_13):
    X7 = residue_class_set(prime_data_7_13[7])
    X13 = residue_class_set(prime_data_7_13[13])
    assert {signed_label(P, 7) for P in X7.points} == {"inf+", "inf-", (-2, 2), (-2, -2)}
    assert {signed_label(P, 13) for P in X13.points} == {"inf+", "inf-"}


def test_x7_symmetry_is_computed(prime_data_7_13):
    labels = {signed_label(P, 7) for P in residue_class_set(prime_data_7_13[7]).points}
    assert ((-2, 2) in labels) == ((-2, -2) in labels)


def test_representatives(prime_data_7_13):
    d7 = prime_data_7_13[7]
    J7 = d7.gens[0].J
    pts = [CurvePoint(J7.K(5), J7.K(2)), CurvePoint(J7.K(5), J7.K(5))]
    reps = [solve_representative(d7, J7.embed(P)) for P in pts]
    assert sorted(reps) == [(0, 144), (2, 96)]
    for (m, n), P in zip(reps, pts):
        assert d7.gens[0] * m + d7.gens[1] * n == J7.embed(P)


def test_five_rank_and_joint_index(prime_data_7_13):
    assert five_rank_surjection(prime_data_7_13[7])["surjective"]
    assert joint_image_index(prime_data_7_13[7], prime_data_7_13[13]) == 100


def test_coset_intersection_symmetric_and_controls(prime_data_7_13):
    d7, d13 = prime_data_7_13[7], prime_data_7_13[13]
    A = CosetSystem(d7.kernel, ((0, 144), (2, 96)))
    B = CosetSystem(d13.kernel, ((0, 0), (2, 0)))
    assert coset_intersection_empty(A, B)
    assert coset_intersection_empty(B, A)
    # the coset of inf+ at 7 certainly meets the coset of inf+ at 13
    C = CosetSystem(d7.kernel, ((2, 0),))
    assert not coset_intersection_empty(C, B)
    assert not coset_intersection_empty(B, C)


def test_coset_intersection_small_lattices():
    L1 = IntegerLattice.from_generators([[2, 0], [0, 2]])
    L2 = IntegerLattice.from_generators([[4, 0], [0, 4]])
    assert coset_intersection_empty(CosetSystem(L1, ((1, 0),)), CosetSystem(L2, ((0, 0),)))
    assert not coset_intersection_empty(CosetSystem(L1, ((1, 0),)), CosetSystem(L2, ((3, 2),)))


def test_sieve_conclusion_with_and_without_ledger(J1, gens, prime_data_7_13):
    d7, d13 = prime_data_7_13[7], prime_data_7_13[13]
    rep = sieve_conclusion(J1, *gens, d7, d13, default_ledger())
    assert rep["holds"] and rep["joint_index"] == 100
    assert {s["kind"] for s in rep["steps"]} == {"assumed", "recomputed"}
    bare = sieve_conclusion(J1, *gens, d7, d13, AssumptionLedger())
    assert not bare["holds"]
    assert all(s["holds"] for s in bare["steps"] if s["kind"] == "recomputed")


def test_sieve_negative_control_wrong_x13(J1, gens, prime_data_7_13):
    d7, d13 = prime_data_7_13[7], prime_data_7_13[13]
    rep = sieve_conclusion(J1, *gens, d7, d13, default_ledger(), X13=[CurvePoint.infinity(1)])
    assert not rep["holds"]
