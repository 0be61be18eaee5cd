import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lstat_edgeworth.errors import DomainError
from lstat_edgeworth.weights import (
    TabulatedScore,
    WeightScheme,
    difference,
    parse_weights_spec,
    smoothness_constants,
    weights_from_score,
)


def test_constant():
    assert weights_from_score("constant", 3).c.tolist() == [1.0, 1.0, 1.0]


def test_gini_prefactor():
    assert weights_from_score("gini", 3).c == pytest.approx([-2.0, 0.0, 2.0], abs=1e-15)


def test_center():
    c = weights_from_score("center", 5).c
    assert c == pytest.approx([5 / 6, 4 / 3, 3 / 2, 4 / 3, 5 / 6], rel=1e-15)


def test_trimmed():
    c = weights_from_score("trimmed", 9, 0.25, 0.75).c
    # u = j/10, kept strictly inside (0.25, 0.75)
    assert c.tolist() == [0, 0, 2, 2, 2, 2, 2, 0, 0]


@pytest.mark.parametrize("t", [(0.5, 0.5), (0.0, 0.5), (0.6, 0.4), (0.2, 1.0)])
def test_trimmed_bad_params(t):
    with pytest.raises(DomainError):
        weights_from_score("trimmed", 5, *t)


def test_gini_needs_two():
    with pytest.raises(DomainError):
        weights_from_score("gini", 1)


def test_custom_table(tmp_path):
    path = tmp_path / "J.csv"
    path.write_text("u,J\n0.1,0\n0.9,8\n")
    w = parse_weights_spec(f"custom:{path}")(3)
    # u = 0.25, 0.5, 0.75 interpolated on the line through (0.1,0) and (0.9,8)
    assert w.c == pytest.approx([1.5, 4.0, 6.5])
    assert w.origin[0] == "custom"


def test_custom_no_prefactor():
    score = TabulatedScore([0.1, 0.9], [1.0, 1.0])
    assert weights_from_score("custom", 4, score=score).c.tolist() == [1.0] * 4


@pytest.mark.parametrize("v, expected", [(1, [2, 3]), (2, [1]), (0, [1, 3, 6])])
def test_difference(v, expected):
    assert difference(WeightScheme([1, 3, 6]), v).tolist() == expected


def test_difference_order_range():
    with pytest.raises(DomainError):
        difference(WeightScheme([1, 3, 6]), 3)


def test_smoothness_constant():
    rep = smoothness_constants(weights_from_score("constant", 7))
    assert (rep.a, rep.b, rep.c, rep.d) == (1.0, 0.0, 0.0, 0.0)


def test_smoothness_center_n5():
    rep = smoothness_constants(weights_from_score("center", 5))
    assert rep.a == pytest.approx(1.5)
    assert rep.b == pytest.approx(2.5)
    assert rep.c == pytest.approx(25 / 3)
    assert rep.d == pytest.approx(0.0, abs=1e-12)


def test_smoothness_empty_orders():
    rep = smoothness_constants(WeightScheme([2.0, -1.0]))
    assert (rep.c, rep.d) == (0.0, 0.0)


def test_trimmed_b_grows_linearly():
    bs = [smoothness_constants(weights_from_score("trimmed", n, 0.25, 0.75)).b for n in (40, 80, 160)]
    # jump of height 2 in J: b = 2n
    assert bs == pytest.approx([80, 160, 320])


@pytest.mark.parametrize("kind", ["center", "gini"])
def test_smooth_scores_bounded(kind):
    reps = [smoothness_constants(weights_from_score(kind, n)) for n in range(5, 201)]
    assert max(r.b for r in reps) < 10
    assert max(r.c for r in reps) < 20


vectors = st.integers(2, 30).flatmap(
    lambda n: st.tuples(
        st.lists(st.floats(-100, 100), min_size=n, max_size=n),
        st.lists(st.floats(-100, 100), min_size=n, max_size=n),
        st.floats(-5, 5),
        st.floats(-5, 5),
    )
)


@settings(max_examples=100, deadline=None)
@given(vectors)
def test_difference_linear(data):
    c1, c2, a, b = data
    c1, c2 = np.array(c1), np.array(c2)
    for v in range(min(4, c1.size)):
        lhs = difference(a * c1 + b * c2, v)
        rhs = a * difference(c1, v) + b * difference(c2, v)
        assert np.allclose(lhs, rhs, rtol=1e-9, atol=1e-9 * 2 ** v * 1000)


@pytest.mark.parametrize("deg", [0, 1, 2, 3])
def test_difference_kills_polynomials(deg, rs):
    coef = rs.normal(size=deg + 1)
    j = np.arange(1, 21, dtype=float)
    c = np.polyval(coef, j)
    d = difference(c, deg + 1)
    assert np.max(np.abs(d)) <= 1e-9 * np.max(np.abs(c))


def test_parse_spec_errors():
    for bad in ("trimmed:0.3", "center:1", "nope", "trimmed:a,b"):
        with pytest.raises(DomainError):
            parse_weights_spec(bad)
