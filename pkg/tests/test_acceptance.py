"""One test per acceptance criterion; each prints a PASS/FAIL line with its timing."""

import json
import subprocess
import sys
import time
from math import gcd
from pathlib import Path

import pytest

from apverify.chabauty import (OMEGA_1, OMEGA_2, PUBLISHED_MATRIX, PUBLISHED_SERIES,
                               annihilator_basis, chabauty_conclusion, differential_series, in_span,
                               integral_matrix, kernel_of_reduction_points, matrix_matches_published,
                               vanishing_order)
from apverify.cli.ledger import DOCUMENTED_ASSUMED, default_ledger
from apverify.cli.pipeline import exit_code, verify_all
from apverify.cli.report import dumps
from apverify.counting import group_structure, jacobian_order, subgroup_invariants
from apverify.curves import CurvePoint, build_family, curve, reflection_check, sqrt2_split_check
from apverify.jacobian import Jacobian, mordell_weil_generators, validate
from apverify.sieve import (CosetSystem, coset_intersection_empty, prime_data, residue_class_set,
                            sieve_conclusion, signed_label)
from apverify.solubility import has_qp_points, has_real_points, search_rational_points

ROOT = Path(__file__).resolve().parent.parent
PRIMES_100 = [p for p in range(2, 101) if all(p % q for q in range(2, p))]

F0 = [-16, 0, 640, 0, 1160, 0, 680, 0, 55, 0, 2]
F1 = [112, 480, 1520, 2880, 3880, 3024, 1840, 720, 215, 30, 1]
F2 = [368, 2880, 9280, 17280, 21320, 18144, 10760, 4320, 1135, 180, 14]


def verdict(log, label, ok, elapsed, limit, detail=""):
    ok = bool(ok) and elapsed < limit
    line = f"{'PASS' if ok else 'FAIL'}  {label}  ({elapsed:.2f}s, limit {limit}s){'  ' + detail if detail else ''}"
    log.append(line)
    print(line)
    return ok


def test_criterion_1_curve_family(acceptance_log):
    t = time.perf_counter()
    coeffs = {j: [int(c) for c in build_family(j).f.c] for j in (0, 1, 2)}
    ok = coeffs == {0: F0, 1: F1, 2: F2}
    ok &= reflection_check(1) and reflection_check(2)
    ok &= all(sqrt2_split_check(j) for j in range(-2, 3))
    assert verdict(acceptance_log, "1 curve family", ok, time.perf_counter() - t, 1)


def test_criterion_2_mumford(acceptance_log):
    t = time.perf_counter()
    C = curve(1)
    J = Jacobian(C)
    Q1, Q2 = mordell_weil_generators(J)
    ok = validate(C, Q1.u, Q1.v) and validate(C, Q2.u, Q2.v)
    ok &= Q1 * 2 == J.embed(CurvePoint.infinity(1))
    assert verdict(acceptance_log, "2 Mumford validation, 2Q1 = [inf+ - inf-]", ok,
                   time.perf_counter() - t, 1)


def test_criterion_3_orders(acceptance_log):
    C = curve(1)
    small = {}
    ok_small = True
    for p in (7, 13):
        t = time.perf_counter()
        small[p] = jacobian_order(C, p)
        ok_small &= time.perf_counter() - t < 5
    t = time.perf_counter()
    n41 = jacobian_order(C, 41)
    t41 = time.perf_counter() - t
    ok = small == {7: 2400, 13: 28500} and n41 == 2633441 and gcd(small[7], n41) == 1 and ok_small
    assert verdict(acceptance_log, "3 orders 2400, 28500, 2633441, gcd 1", ok, t41, 120,
                   f"#J(F_13) = {small[13]}, p<=13 each < 5s: {ok_small}")


def test_criterion_4_structures(acceptance_log):
    t = time.perf_counter()
    C = curve(1)
    J = Jacobian(C)
    Q1, Q2 = mordell_weil_generators(J)
    S = {7: group_structure(C, 7), 13: group_structure(C, 13)}
    d = {p: prime_data(J, Q1, Q2, p, S[p]) for p in S}
    ok = S[7].invariants == (10, 240) and S[13].invariants == (10, 2850)
    ok &= d[7].image_index == 2 and d[13].image_index == 5
    not_cyclic = len(subgroup_invariants(d[7].coords, S[7].invariants)) == 2
    assert verdict(acceptance_log, "4 structures (10,240), (10,2850); indices 2, 5; image mod 7 not cyclic",
                   ok and not_cyclic, time.perf_counter() - t, 30)


def test_criterion_5_sieve(acceptance_log):
    t = time.perf_counter()
    C = curve(1)
    J = Jacobian(C)
    Q1, Q2 = mordell_weil_generators(J)
    d7 = prime_data(J, Q1, Q2, 7)
    d13 = prime_data(J, Q1, Q2, 13)
    X7 = {signed_label(P, 7) for P in residue_class_set(d7).points}
    X13 = {signed_label(P, 13) for P in residue_class_set(d13).points}
    rep = sieve_conclusion(J, Q1, Q2, d7, d13, default_ledger())
    reps7 = tuple(tuple(r) for r in rep["cosets_7"]["representatives"])
    empty = coset_intersection_empty(CosetSystem(d7.kernel, reps7),
                                     CosetSystem(d13.kernel, ((0, 0), (2, 0))))
    ok = X7 == {"inf+", "inf-", (-2, 2), (-2, -2)} and X13 == {"inf+", "inf-"}
    ok &= empty and rep["holds"]
    assert verdict(acceptance_log, "5 sieve X7, X13, empty coset intersection, conclusion", ok,
                   time.perf_counter() - t, 30)


def test_criterion_6_chabauty(acceptance_log):
    t = time.perf_counter()
    C = curve(1)
    J = Jacobian(C)
    Q1, Q2 = mordell_weil_generators(J)
    series = differential_series(C.f, 20)
    series_ok = tuple(series.common.coeffs[:6]) == PUBLISHED_SERIES
    R = kernel_of_reduction_points(J, Q1, Q2, 7)
    M = integral_matrix(list(R), series, 7, 4)
    match = matrix_matches_published(M)
    ann = annihilator_basis(M)
    span_ok = len(ann) == 2 and in_span(OMEGA_1, ann, 7) and in_span(OMEGA_2, ann, 7)
    orders = [vanishing_order(OMEGA_2, CurvePoint.infinity(s), 7) for s in (1, -1)]
    concl = chabauty_conclusion(ann, {"holds": True}, 7)
    ok = series_ok and match is not None and span_ok and orders == [0, 0]
    ok &= concl["holds"] and concl["bound"] == 2 and len(concl["rational_points"]) == 2
    assert verdict(acceptance_log, "6 Chabauty series, matrix mod 7^4, annihilator, #C1(Q) = 2", ok,
                   time.perf_counter() - t, 120,
                   f"matrix agreement: {match}; {M.as_multiples_of_p() == [list(r) for r in PUBLISHED_MATRIX]}")


def test_criterion_7a_search_and_real_points(acceptance_log):
    t = time.perf_counter()
    found = {j: [repr(P) for P in search_rational_points(curve(j), 1000)] for j in (0, 1, 2)}
    real = all(has_real_points(curve(j)).soluble for j in (0, 1, 2))
    ok = found == {0: [], 1: ["inf+", "inf-"], 2: []} and real
    assert verdict(acceptance_log, "7a search at 10^3 and real points", ok, time.perf_counter() - t, 300)


@pytest.mark.xfail(strict=True, reason="C0 has no Q_19-points (good reduction, #C0(F_19) = 0); "
                                       "see the decisions ledger")
def test_criterion_7b_qp_solubility_all_p_le_100(acceptance_log):
    t = time.perf_counter()
    insoluble = [(j, p) for j in (0, 1, 2) for p in PRIMES_100
                 if has_qp_points(curve(j), p).soluble is not True]
    ok = not insoluble
    verdict(acceptance_log, "7b Q_p-solubility of C0, C1, C2 for all p <= 100", ok,
            time.perf_counter() - t, 300, f"insoluble (curve, p): {insoluble}")
    assert ok


PROPERTY_TESTS = [
    "tests/test_jacobian.py::test_group_law_axioms_over_fp",
    "tests/test_jacobian.py::test_reduction_is_a_homomorphism",
    "tests/test_padic.py::test_newton_identities_match_companion_traces",
    "tests/test_padic.py::test_series_inverse_roundtrip",
    "tests/test_padic.py::test_series_sqrt_roundtrip",
    "tests/test_padic.py::test_series_integrate_then_differentiate",
    "tests/test_algebra.py::test_smith_normal_form_unimodular",
]


def test_criterion_8_property_suites(acceptance_log):
    t = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *PROPERTY_TESTS],
                          cwd=ROOT, capture_output=True, text=True)
    tail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    assert verdict(acceptance_log, "8 property suites", proc.returncode == 0,
                   time.perf_counter() - t, 60, tail)


def test_criterion_9_end_to_end(acceptance_log, tmp_path):
    t = time.perf_counter()
    report, _ = verify_all()
    out = tmp_path / "report.json"
    proc = subprocess.run([sys.executable, "-m", "apverify.cli.main", "verify-all", "--no-timings",
                           "--out", str(out)], cwd=ROOT, capture_output=True, text=True)
    elapsed = time.perf_counter() - t
    same = out.exists() and out.read_text() == dumps(report)
    thm = report["theorem"]
    statuses = {e["id"]: e["status"] for e in report["ledger"]}
    ok = thm["verdict"] == "(1,1,1,1)" and thm["status"] == "established"
    ok &= thm["assumed"] == sorted(DOCUMENTED_ASSUMED)
    ok &= all(s != "recomputed" for s in statuses.values())
    ok &= exit_code(report) == 0 and proc.returncode == 0 and same
    assert verdict(acceptance_log, "9 verify-all verdict (1,1,1,1), documented assumptions, deterministic",
                   ok, elapsed, 600, f"assumed: {thm['assumed']}; identical rerun: {same}")
