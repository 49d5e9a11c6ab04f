import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from p2pgrowth import DistVector, DomainError
from p2pgrowth.statcheck import (
    EmpiricalDist,
    mean_ci,
    tail_exceedance,
    tv_between,
    tv_distance,
    wilson_interval,
)


def test_tv_examples():
    point = DistVector(0, [0, 0, 1.0])
    assert tv_distance(EmpiricalDist.from_samples([2, 2, 2]), point) == 0
    assert tv_distance(EmpiricalDist.from_samples([0, 1]), point) == 1
    with pytest.raises(DomainError):
        tv_distance(EmpiricalDist(np.zeros(3)), point)


def test_tv_counts_model_mass_outside_window():
    truncated = DistVector(0, [0.5, 0.3], 0.2)
    emp = EmpiricalDist(np.array([5, 3, 2]))
    assert tv_distance(emp, truncated) == pytest.approx(0.2)


def test_tv_self_consistency():
    rng = np.random.default_rng(0)
    p = rng.dirichlet(np.ones(50))
    draws = rng.choice(50, size=10**6, p=p)
    assert tv_distance(EmpiricalDist.from_samples(draws), DistVector(0, p)) < 0.005


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_tv_symmetry_and_triangle(seed):
    rng = np.random.default_rng(seed)
    p, q, r = (rng.dirichlet(np.ones(rng.integers(1, 12))) for _ in range(3))
    assert tv_between(p, q) == pytest.approx(tv_between(q, p))
    assert tv_between(p, r) <= tv_between(p, q) + tv_between(q, r) + 1e-12
    assert 0 <= tv_between(p, q) <= 1 + 1e-12


def test_tail_exceedance_examples():
    n = 1000
    tf = tail_exceedance(np.zeros(n), 1.0)
    assert tf.freq == 0 and tf.lower == 0
    assert tf.upper == pytest.approx(3.84 / (n + 3.84), rel=1e-3)
    assert tail_exceedance(np.arange(10), 5).freq == 0.5
    assert tail_exceedance(np.arange(10), 4, side="lower").freq == 0.5


def test_wilson_coverage():
    rng = np.random.default_rng(3)
    n, covered = 10**5, 0
    for _ in range(100):
        hits = rng.binomial(n, 0.1)
        lo, hi = wilson_interval(hits, n)
        covered += lo <= 0.1 <= hi
    assert covered >= 93


def test_mean_ci_examples():
    c = mean_ci(np.full(10, 3.0))
    assert c.lower == c.upper == 3.0
    alt = mean_ci(np.tile([0.0, 1.0], 5000))
    assert alt.mean == 0.5
    assert alt.upper - alt.mean == pytest.approx(0.0098, abs=1e-4)
    normal = mean_ci(np.random.default_rng(1).standard_normal(10**6))
    assert abs(normal.mean) < 0.005
    with pytest.raises(DomainError):
        mean_ci([1.0])
