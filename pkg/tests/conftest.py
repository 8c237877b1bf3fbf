import pytest

from pseudohadamard import generator, oracle
from pseudohadamard.matrix import BinMatrix, is_pseudo_hadamard

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def generated():
    """Generator output for the small sizes, keyed by m."""
    return {m: list(generator.iter_matrices(m)) for m in (2, 6, 10)}


@pytest.fixture(scope="session")
def oracle6():
    return oracle.brute_force_row_gram(6)


@pytest.fixture(scope="session")
def pseudo6(oracle6):
    """Every 6x6 first-generation pseudo-Hadamard matrix."""
    return [M for M in oracle6 if is_pseudo_hadamard(M)]


@pytest.fixture(scope="session")
def hadamard3():
    """Every 3x3 Hadamard matrix, by enumeration of all 512 zero-one matrices."""
    from pseudohadamard.matrix import is_hadamard

    out = []
    for bits in range(1 << 9):
        M = BinMatrix(3, tuple((bits >> (3 * i)) & 7 for i in range(3)))
        if is_hadamard(M):
            out.append(M)
    return out


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        number, title = marker.args
        details = "; ".join(str(v) for k, v in rep.user_properties if k == "detail")
        verdict = "PASS" if rep.passed else "FAIL"
        ACCEPTANCE_LINES.append(f"[{verdict}] {number:>2}. {title}" + (f" -- {details}" if details else ""))
