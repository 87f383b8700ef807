import pytest

from dnquad.quadring import RingElt, make_ctx

TABLE_DS = (10, 58, 106, 202, 298)

# Reference quadruple for d = 10, n = 26 + 6 sqrt(10)
EX1_N = RingElt(26, 6)
EX1_ELEMS = [RingElt(19, 6), RingElt(-8, 6), RingElt(35, 18), RingElt(35, 42)]
EX1_ROOTS = [(12, 3), (31, 9), (39, 13), (4, 9), (-4, 15), (39, 27)]

# Reference quadruple for d = 58, n = 18 + 2 sqrt(58)
EX2_N = RingElt(18, 2)
EX2_ELEMS = [RingElt(19603, 2574), RingElt(543627, -70094),
             RingElt(543616, -70094), RingElt(2154883, -282950)]
EX2_ROOTS = [(9807, 1287), (9796, 1287), (-3, 1), (-533820, 71381),
             (1077447, -141475), (-1077436, 141475)]


@pytest.fixture(scope="session")
def ctx10():
    return make_ctx(10)


@pytest.fixture(scope="session")
def ctx58():
    return make_ctx(58)


@pytest.fixture(scope="session")
def ctx2():
    return make_ctx(2)


ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_RESULTS):
        ok, line = ACCEPTANCE_RESULTS[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {line}")
