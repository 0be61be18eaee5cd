import numpy as np
import pytest

from lstat_edgeworth.population import Population
from lstat_edgeworth.weights import WeightScheme, weights_from_score

BUILTIN_KINDS = ("constant", "gini", "center", "trimmed")


def builtin_weights(kind, n):
    if kind == "trimmed":
        return weights_from_score("trimmed", n, 0.2, 0.8)
    if kind == "gini" and n < 2:
        return weights_from_score("constant", n)
    return weights_from_score(kind, n)


def random_population(rs, N, ties=False):
    vals = rs.standard_t(4, size=N)
    if ties:
        vals = np.round(vals, 0)
    return Population(vals)


@pytest.fixture
def hand_pop():
    return Population([0.0, 1.0, 2.0, 3.0, 4.0])


@pytest.fixture
def max_weights():
    """``c = (0, 2)`` at n = 2: L_2 is the sample maximum."""
    return WeightScheme([0.0, 2.0])


@pytest.fixture
def rs():
    return np.random.default_rng(20240611)


# acceptance report ----------------------------------------------------------

ACCEPTANCE_RESULTS = {}


def record_criterion(number, title, passed, detail=""):
    """Store and print one acceptance line; the terminal summary repeats them."""
    line = f"criterion {number} [{'PASS' if passed else 'FAIL'}] {title}"
    if detail:
        line += f" :: {detail}"
    ACCEPTANCE_RESULTS[number] = line
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[number])
