import random

import pytest

from apverify.algebra import ExtensionField
from apverify.counting import (CountingError, LPolynomial, count_points, count_points_naive,
                               dlog, element_order, group_structure, jacobian_order, l_polynomial,
                               l_polynomial_from_counts, random_point, subgroup_invariants,
                               torsion_and_independence)
from apverify.curves import bad_primes, curve


def count_over_extension(C, p, k):
    """Direct enumeration over F_{p^k} with the scalar field arithmetic."""
    E = ExtensionField(p, k)
    coeffs = [E(int(c) % p) for c in C.f.c]
    n = 0
    for x in E.elements():
        y = E.zero
        for c in reversed(coeffs):
            y = E.add(E.mul(y, x), c)
        n += 1 if y == E.zero else (2 if E.is_square(y) else 0)
    lc = E(int(C.f.leading()) % p)
    return n + (2 if E.is_square(lc) else 0)


GOOD_PAIRS = [(j, p) for j in range(-2, 3) for p in (7, 11, 13, 19) if p not in bad_primes(curve(j))]


@pytest.mark.parametrize("j, p", GOOD_PAIRS)
def test_count_matches_naive(j, p):
    C = curve(j)
    assert count_points(C, p) == count_points_naive(C, p)


@pytest.mark.parametrize("j, p", [(1, 7), (0, 7), (1, 13), (2, 11)])
def test_count_over_quadratic_extension(j, p):
    C = curve(j)
    assert count_points(C, p, 2) == count_over_extension(C, p, 2)


def test_count_over_cubic_extension_small():
    C = curve(1)
    assert count_points(C, 7, 3) == count_over_extension(C, 7, 3)


def test_count_rejects_bad_prime():
    with pytest.raises(CountingError):
        count_points(curve(1), 5)


@pytest.mark.parametrize("p, coeffs", [
    (7, (1, 0, 0, 0, -2, 0, 0, 0, 2401)),
    (13, (1, 0, 0, 0, -62, 0, 0, 0, 28561)),
])
def test_l_polynomials(p, coeffs):
    L = l_polynomial(curve(1), p)
    assert L.coeffs == coeffs
    assert L.satisfies_functional_equation() and L.within_weil_bounds()


def test_orders():
    C = curve(1)
    assert jacobian_order(C, 7) == 2400
    assert jacobian_order(C, 13) == 28500


def test_l_polynomial_consistency_checks():
    with pytest.raises(CountingError):
        l_polynomial_from_counts(7, [8, 50, 400, 2000])    # violates integrality or Weil
    L = LPolynomial(7, (1, 0, 0, 0, -2, 0, 0, 0, 2401))
    assert L(1) == 2400


@pytest.mark.parametrize("p, invariants", [(7, (10, 240)), (13, (10, 2850))])
def test_structures(structures, p, invariants):
    S = structures[p]
    assert S.invariants == invariants
    for G, d in zip(S.generators, S.invariants):
        assert element_order(G, S.order) == d


@pytest.mark.parametrize("p", [7, 13])
def test_dlog_roundtrip(J1, structures, p):
    S = structures[p]
    Jp = J1.reduction(p)
    rng = random.Random(100 + p)
    for _ in range(25):
        P = random_point(Jp, rng)
        assert S.element(dlog(P, S)) == P
    coords = tuple(rng.randrange(d) for d in S.invariants)
    assert dlog(S.element(coords), S) == coords


def test_structure_is_seed_independent(C1):
    a = group_structure(C1, 7, seed=0, N=2400)
    b = group_structure(C1, 7, seed=5, N=2400)
    assert a.invariants == b.invariants


def test_subgroup_invariants():
    assert subgroup_invariants([(1, 0)], (10, 240)) == (10,)
    # <(0, 2), (5, 0)> in Z/10 x Z/240 is Z/2 x Z/120
    assert sorted(subgroup_invariants([(0, 2), (5, 0)], (10, 240))) == [2, 120]


def test_torsion_free_and_independent(C1, gens):
    rep = torsion_and_independence(C1, *gens, orders={7: 2400, 41: 2633441})
    assert rep["gcd"] == 1 and rep["torsion_free"]
    assert not rep["image_cyclic"] and rep["independent"]
