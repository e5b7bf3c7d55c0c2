import json
import os

import pytest

# one line per acceptance check, appended by tests/test_acceptance.py and
# echoed after the run so the verdicts survive output capture
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.write_sep("=", "acceptance summary")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)

from jacobiweights import (
    build_gl,
    build_sl2,
    defining_rep,
    double,
    enumerate_diagrams,
    rep_R,
)

HERE = os.path.dirname(__file__)


@pytest.fixture(scope="session")
def golden():
    with open(os.path.join(HERE, "golden_corpus.json")) as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def gl2():
    return build_gl(2)


@pytest.fixture(scope="session")
def gl3():
    return build_gl(3)


@pytest.fixture(scope="session")
def sl2():
    return build_sl2()


@pytest.fixture(scope="session")
def rep2(gl2):
    return defining_rep(gl2)


@pytest.fixture(scope="session")
def rep3(gl3):
    return defining_rep(gl3)


@pytest.fixture(scope="session")
def dbl2(gl2):
    return double(gl2)


@pytest.fixture(scope="session")
def R2(rep2, dbl2):
    return rep_R(rep2, dbl2)


@pytest.fixture(scope="session")
def corpus3():
    return enumerate_diagrams(3)


@pytest.fixture(scope="session")
def corpus4():
    return enumerate_diagrams(4)
