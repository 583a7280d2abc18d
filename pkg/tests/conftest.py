import pytest

from betti_lab.algebra_core import FieldSpec
from betti_lab.hilbert_betti import analyze_H

EX1 = (1, 2, 3, 3, 1, 0)
EX2 = (1, 2, 3, 4, 2, 1, 0)

# filled by test_acceptance, printed after the run
ACCEPTANCE = {}


@pytest.fixture
def F():
    return FieldSpec.prime(10007)


@pytest.fixture
def ex1():
    return analyze_H(EX1)


@pytest.fixture
def ex2():
    return analyze_H(EX2)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k[2:])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{key} {'PASS' if ok else 'FAIL'}  {detail}")
