import pytest

from pbwlength import FieldSpec, GeneratorSet, SquareMatrix, build_filtration, quantum_plane

Q = FieldSpec.rationals()
F5 = FieldSpec.prime(5)


def mat(rows, field=Q):
    return SquareMatrix.from_rows(rows, field)


@pytest.fixture(scope="session")
def qp2():
    g = quantum_plane(2, 5)
    return g, build_filtration(g)


@pytest.fixture(scope="session")
def qp3():
    g = quantum_plane(3)
    return g, build_filtration(g)


@pytest.fixture
def sum_set():
    """{A, B, A+B} over F_5: the letters 1, 2 are independent mod L_0, letter 3 is not."""
    a = mat([[1, 2], [0, 3]], F5)
    b = mat([[0, 1], [4, 1]], F5)
    g = GeneratorSet(F5, (a, b, a + b))
    return g, build_filtration(g)


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion for the summary."""
    state = {"detail": ""}
    yield state
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {request.node.name}  {state['detail']}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
