import json
from pathlib import Path

import pytest

from relrep.algebra import JoinSemilatticeSemigroup, ResiduatedSemigroup
from relrep.enumeration import enumerate_algebras

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_path(name):
    return FIXTURES / name


@pytest.fixture
def two_chain_rs():
    return ResiduatedSemigroup.build([[1, 1], [0, 1]], [[0, 0], [0, 1]])


@pytest.fixture
def one_element_rs():
    return ResiduatedSemigroup.build([[1]], [[0]], [[0]], [[0]])


@pytest.fixture
def two_chain_max():
    return JoinSemilatticeSemigroup.build([[0, 1], [1, 1]], [[0, 1], [1, 1]])


@pytest.fixture
def one_element_jsl():
    return JoinSemilatticeSemigroup.build([[0]], [[0]])


def m3_z3():
    """M3 lattice (bottom 0, atoms 1..3, top 4) with atoms multiplying as Z3.

    The attacker wins the representability game at depth 4 on every goal
    whose right-hand side is an atom.
    """
    doc = json.loads((FIXTURES / "m3_z3.json").read_text())
    return JoinSemilatticeSemigroup.build(doc["compose"], doc["join"])


@pytest.fixture(scope="session")
def rs_upto3():
    return [rs for n in (1, 2, 3) for rs in enumerate_algebras("rs", n)]


@pytest.fixture(scope="session")
def jsl_upto2():
    return [a for n in (1, 2) for a in enumerate_algebras("jsl", n)]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[key])
