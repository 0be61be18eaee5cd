import io
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lstat_edgeworth.errors import DomainError, PopulationParseError
from lstat_edgeworth.population import (
    Population,
    cdf,
    central_variance,
    ghm_at,
    load_population,
    logistic_quantile,
    moment,
    simulate_logistic,
)


def test_load_sorts_and_discards_order():
    pop = load_population(b"3\n1\n2\n")
    assert pop.values.tolist() == [1.0, 2.0, 3.0]
    assert pop.N == 3


def test_load_keeps_ties():
    pop = load_population(io.BytesIO(b"5\n5"))
    assert pop.values.tolist() == [5.0, 5.0]


def test_load_reports_line_number():
    with pytest.raises(PopulationParseError) as exc:
        load_population(b"1\nx\n")
    assert exc.value.line == 2
    assert "line 2" in str(exc.value)


def test_load_header_and_blank_lines(tmp_path):
    path = tmp_path / "pop.txt"
    path.write_text("# values\n2.5\n\n-1e3\n")
    assert load_population(path).values.tolist() == [-1000.0, 2.5]


def test_load_header_only_first_line():
    with pytest.raises(PopulationParseError):
        load_population(b"1\n# late header\n2\n")


@pytest.mark.parametrize("data", [b"", b"4\n", b"# only header\n7\n"])
def test_load_too_few(data):
    with pytest.raises(DomainError):
        load_population(data)


def test_load_rejects_nonfinite():
    with pytest.raises(PopulationParseError):
        load_population(b"1\ninf\n")


def test_logistic_inverse_transform():
    assert logistic_quantile(0.5) == 0.0
    assert logistic_quantile(math.e / (1 + math.e)) == pytest.approx(1.0, abs=1e-15)


def test_simulate_logistic_deterministic():
    a = simulate_logistic(100, 42)
    b = simulate_logistic(100, 42)
    assert np.array_equal(a.values, b.values)
    assert not np.array_equal(a.values, simulate_logistic(100, 43).values)
    assert np.all(np.diff(a.values) >= 0)


def test_simulate_logistic_small_n():
    with pytest.raises(DomainError):
        simulate_logistic(1, 0)


def test_simulate_logistic_moments_plausible():
    pop = simulate_logistic(20000, 3)
    assert abs(pop.mean()) < 0.05
    assert pop.variance() == pytest.approx(math.pi ** 2 / 3, rel=0.05)


@pytest.mark.parametrize(
    "values, s, absolute, expected",
    [
        ([-1, 0, 1], 1, False, 0.0),
        ([0, 1, 2, 3, 4], 1, False, 2.0),
        ([-1, 0, 1], 3, True, 2 / 3),
    ],
)
def test_moment(values, s, absolute, expected):
    assert moment(Population(values), s, absolute) == pytest.approx(expected, abs=1e-15)


def test_central_variance():
    assert central_variance(Population([-1, 0, 1])) == pytest.approx(2 / 3)
    assert central_variance(Population([0, 1, 2, 3, 4])) == 2.0


def test_spacings_boundary():
    d = Population([3, 1, 2, 2]).spacings()
    assert d.tolist() == [0.0, 1.0, 0.0, 1.0, 0.0]


@pytest.mark.parametrize("k, expected", [(2, (0.5, 0.0, 0.25)), (1, (0.0, 0.5, 0.0))])
def test_ghm_two_point(k, expected):
    assert ghm_at(Population([0, 1]), k) == pytest.approx(expected)


def test_ghm_range():
    with pytest.raises(DomainError):
        ghm_at(Population([0, 1]), 3)


def test_cdf():
    assert cdf(Population([0, 1]), 0.5) == 0.5
    assert cdf(Population([0, 1]), -1) == 0.0
    assert cdf(Population([5, 5]), 5) == 1.0


pops = st.lists(st.floats(-1e6, 1e6, allow_nan=False), min_size=2, max_size=40).map(Population)


@settings(max_examples=200, deadline=None)
@given(pops)
def test_ghm_invariants(pop):
    mean = pop.mean()
    abs_mean = moment(pop, 1, absolute=True)
    G, H, M = zip(*(ghm_at(pop, k) for k in range(1, pop.N + 1)))
    scale = np.max(np.abs(pop.values)) + 1.0
    for k in range(pop.N):
        x = pop.values[k]
        # telescoping identity
        assert abs((G[k] - H[k]) - (x - mean)) <= 1e-12 * scale
        assert G[k] + H[k] <= abs_mean + abs(x) + 1e-12 * scale
        assert M[-1] <= G[k] + H[k] + 1e-12 * scale
    assert np.all(np.diff(G) >= -1e-12 * scale)
    assert np.all(np.diff(H) <= 1e-12 * scale)
    assert np.all(np.diff(M) >= -1e-12 * scale)


@settings(max_examples=100, deadline=None)
@given(pops)
def test_sorted_and_spacings_nonnegative(pop):
    d = pop.spacings()
    assert d[0] == 0 and d[-1] == 0
    assert np.all(d >= 0)
    assert math.fsum(d) == pytest.approx(pop.values[-1] - pop.values[0], abs=1e-9)
