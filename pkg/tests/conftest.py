import pytest

from apverify.curves import curve
from apverify.jacobian import Jacobian, mordell_weil_generators


@pytest.fixture(scope="session")
def C1():
    return curve(1)


@pytest.fixture(scope="session")
def J1(C1):
    return Jacobian(C1)


@pytest.fixture(scope="session")
def gens(J1):
    return mordell_weil_generators(J1)


@pytest.fixture(scope="session")
def structures(C1):
    from apverify.counting import group_structure
    return {7: group_structure(C1, 7, N=2400), 13: group_structure(C1, 13, N=28500)}


@pytest.fixture(scope="session")
def prime_data_7_13(J1, gens, structures):
    from apverify.sieve import prime_data
    Q1, Q2 = gens
    return {p: prime_data(J1, Q1, Q2, p, structures[p]) for p in (7, 13)}


@pytest.fixture(scope="session")
def small_multiples(J1, gens):
    """a Q1 + b Q2 over Q for |a|, |b| <= 4, with reductions at 7 and 13."""
    Q1, Q2 = gens
    table = {}
    for a in range(-4, 5):
        base = Q1 * a
        for b in range(-4, 5):
            P = base + Q2 * b
            table[(a, b)] = {"Q": P, 7: J1.reduce_mod_p(P, 7), 13: J1.reduce_mod_p(P, 13)}
    return table


@pytest.fixture(scope="session")
def kernel_points(J1, gens):
    from apverify.chabauty import kernel_of_reduction_points
    Q1, Q2 = gens
    return kernel_of_reduction_points(J1, Q1, Q2, 7)


@pytest.fixture(scope="session")
def series_f1(C1):
    from apverify.chabauty import differential_series
    return differential_series(C1.f, 20)


# -- acceptance reporting -----------------------------------------------------

_ACCEPTANCE = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in _ACCEPTANCE:
        terminalreporter.write_line(line)
