from collections import Counter
import math

import numpy as np
import pytest

from lstat_edgeworth import rng
from lstat_edgeworth.edgeworth import sigma_tilde
from lstat_edgeworth.errors import DegenerateStatisticError, DomainError
from lstat_edgeworth.kernels import expected_L
from lstat_edgeworth.montecarlo import (
    EmpiricalCdf,
    SimulationPlan,
    draw_sample,
    empirical_quantile,
    l_statistic,
    simulate_cdf,
    simulate_L,
)
from lstat_edgeworth.population import Population
from lstat_edgeworth.weights import WeightScheme, weights_from_score


def test_draw_sample_basic():
    s = draw_sample(Population(range(10)), 4, 17, 3)
    assert len(set(s)) == 4 and all(1 <= k <= 10 for k in s)
    assert s == draw_sample(Population(range(10)), 4, 17, 3)
    with pytest.raises(DomainError):
        draw_sample(Population(range(5)), 5, 0, 0)


def test_subset_frequencies_chi_square():
    R = 60_000
    counts = Counter(tuple(sorted(draw_sample(4, 2, r, 9))) for r in range(R))
    assert len(counts) == 6
    for c in counts.values():
        se = math.sqrt(R * (1 / 6) * (5 / 6))
        assert abs(c - R / 6) <= 3 * se
    chi2 = sum((c - R / 6) ** 2 / (R / 6) for c in counts.values())
    assert chi2 < 20.5  # 0.999 quantile with 5 degrees of freedom


def test_inclusion_probability():
    N, n, R = 20, 6, 100_000
    key_seed = 11
    counts = np.zeros(N)
    for r in range(R):
        counts[np.array(draw_sample(N, n, r, key_seed)) - 1] += 1
    hits = counts
    p = n / N
    se = math.sqrt(p * (1 - p) / R) * R
    assert np.all(np.abs(hits - R * p) <= 4 * se)


def test_l_statistic_examples():
    assert l_statistic([2, 0], WeightScheme([1, 1])) == 1.0
    assert l_statistic([3, 1, 2], WeightScheme([0, 0, 3])) == 3.0
    assert l_statistic([1, 1, 1], WeightScheme([0.5, 1.0, 1.5])) == 1.0
    with pytest.raises(DomainError):
        l_statistic([1, 2], WeightScheme([1, 1, 1]))


def test_simulate_L_matches_scalar_path():
    pop = Population(np.random.default_rng(2).normal(size=30))
    w = weights_from_score("center", 7)
    L = simulate_L(pop, w, 200, seed=5)
    for r in (0, 1, 57, 199):
        sample = pop.values[np.array(draw_sample(pop, 7, r, 5)) - 1]
        assert L[r] == l_statistic(sample, w)


@pytest.mark.parametrize("workers", [2, 3, 7])
def test_workers_bit_identical(workers):
    pop = Population(np.random.default_rng(3).normal(size=50))
    w = weights_from_score("center", 9)
    a = simulate_L(pop, w, 10_001, seed=8, workers=1)
    b = simulate_L(pop, w, 10_001, seed=8, workers=workers)
    assert a.tobytes() == b.tobytes()


def test_simulate_cdf_centering():
    pop = Population(range(5))
    w = WeightScheme([1, 1])
    st = sigma_tilde(pop, w, "exact").sigma
    plan = SimulationPlan(100_000, 4, 2, expected_L(pop, w), st)
    ecdf = simulate_cdf(pop, w, plan)
    sd = float(np.std(ecdf.sorted_values))
    assert abs(ecdf.mean()) <= 4 * sd / math.sqrt(ecdf.R)
    assert sd == pytest.approx(1.0, abs=0.02)


def test_ecdf_convergence():
    pop = Population(np.random.default_rng(1).normal(size=25))
    w = weights_from_score("constant", 5)
    st = sigma_tilde(pop, w, "exact").sigma
    mL = expected_L(pop, w)
    grid = np.linspace(-3, 3, 121)
    ref = simulate_cdf(pop, w, SimulationPlan(400_000, 99, 5, mL, st))(grid)
    d1 = np.max(np.abs(simulate_cdf(pop, w, SimulationPlan(5_000, 1, 5, mL, st))(grid) - ref))
    d4 = np.max(np.abs(simulate_cdf(pop, w, SimulationPlan(20_000, 1, 5, mL, st))(grid) - ref))
    assert d4 < d1


def test_plan_validation():
    with pytest.raises(DegenerateStatisticError):
        SimulationPlan(10, 0, 2, 0.0, 0.0)
    with pytest.raises(DomainError):
        SimulationPlan(0, 0, 2, 0.0, 1.0)
    with pytest.raises(DomainError):
        simulate_cdf(Population(range(5)), WeightScheme([1, 1]), SimulationPlan(10, 0, 3, 0.0, 1.0))


@pytest.mark.parametrize("values, q, expected", [((1, 2, 3, 4), 0.5, 2), ((1, 2, 3, 4), 0.99, 4), ((7,), 0.3, 7)])
def test_empirical_quantile(values, q, expected):
    assert empirical_quantile(EmpiricalCdf(values), q) == expected


def test_empirical_quantile_domain():
    with pytest.raises(DomainError):
        empirical_quantile(EmpiricalCdf([1.0]), 0.0)


def test_dump_roundtrip(tmp_path):
    e = EmpiricalCdf([3.0, -1.0, 2.5], seed=12)
    path = tmp_path / "vals.bin"
    e.dump(path)
    assert EmpiricalCdf.load(path).sorted_values.tolist() == [-1.0, 2.5, 3.0]
    meta = (tmp_path / "vals.bin.meta").read_text()
    assert "seed = 12" in meta and rng.GENERATOR_VERSION in meta


def test_ecdf_call():
    e = EmpiricalCdf([1, 2, 2, 3])
    assert e(2) == 0.75 and e(0.5) == 0.0
