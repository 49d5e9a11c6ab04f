import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import rk4_transient, urn_law_exact, urn_mean_exact
from p2pgrowth import CapacityError, DomainError, NumericError, growth


# --- pure-birth transient law ---------------------------------------------------

def test_pmf_k0_is_exponential():
    for t, lam in [(0.3, 1.0), (2.0, 3.5), (0.0, 1.0)]:
        assert growth.pure_birth_pmf(0, t, lam) == pytest.approx(math.exp(-lam * t), rel=1e-15)


def test_pmf_examples():
    e = math.exp
    assert growth.pure_birth_pmf(1, 1.0, 1.0) == pytest.approx(2 * e(-0.5) - 2 * e(-1), abs=1e-15)
    want = 0.5 * (3 * e(-1) - 12 * e(-0.5) + 9 * e(-1 / 3))
    assert growth.pure_birth_pmf(2, 1.0, 1.0) == pytest.approx(want, abs=1e-13)
    assert growth.pure_birth_pmf(1, 1.0, 1.0) == pytest.approx(0.477302, abs=1e-6)
    assert growth.pure_birth_pmf(2, 1.0, 1.0) == pytest.approx(0.137023, abs=5e-6)


def test_pmf_matches_ode_oracle():
    times = [0.5, 1.0, 3.0, 10.0]
    ode = rk4_transient(1.0, 0.0, times)
    for row, t in zip(ode, times):
        got = np.array([growth.pure_birth_pmf(k, t, 1.0) for k in range(31)])
        assert np.max(np.abs(got - row[:31])) < 1e-8


def test_double_mode_refuses_cancellation():
    # the alternating sum loses every digit long before k = 150
    with pytest.raises(NumericError):
        growth.pure_birth_pmf(60, 5.0, 1.0, precision="double")
    assert 0.0 <= growth.pure_birth_pmf(60, 5.0, 1.0) < 1e-30


@pytest.mark.parametrize("lt", [0.5, 2.0, 7.0, 20.0])
def test_normalisation_deficit(lt):
    k_max = 4 * math.ceil(lt) + 50
    dist = growth.pure_birth_dist(lt, 1.0, k_max)
    assert dist.mass_deficit < 1e-8


def test_pmf_domain():
    with pytest.raises(DomainError):
        growth.pure_birth_pmf(-1, 1.0, 1.0)
    with pytest.raises(DomainError):
        growth.pure_birth_pmf(1, -1.0, 1.0)
    with pytest.raises(DomainError):
        growth.pure_birth_pmf(1, 1.0, 0.0)


# --- embedded chain -----------------------------------------------------------

def test_embedded_closed_examples():
    assert growth.embedded_pmf_closed(1, 1) == pytest.approx(1.0)
    assert growth.embedded_pmf_closed(2, 1) == pytest.approx(0.5)
    assert growth.embedded_pmf_closed(2, 2) == pytest.approx(0.5)
    assert growth.embedded_pmf_closed(3, 2) == pytest.approx(7 / 12)


def test_embedded_table_examples():
    assert growth.embedded_pmf_table(0).rows[0].tolist() == [1.0]
    row3 = growth.embedded_pmf_table(3).rows[3]
    assert row3 == pytest.approx([0, 1 / 4, 7 / 12, 1 / 6], abs=1e-15)


def test_embedded_table_matches_enumeration_and_closed_form():
    table = growth.embedded_pmf_table(30)
    for n in range(1, 31):
        exact = [float(p) for p in urn_law_exact(n)]
        assert table.rows[n] == pytest.approx(exact, abs=1e-14)
        closed = [growth.embedded_pmf_closed(n, k) for k in range(1, n + 1)]
        assert np.max(np.abs(np.array(closed) - table.rows[n][1:])) < 1e-10


def test_embedded_table_invariants():
    table = growth.embedded_pmf_table(200)
    for n, row in enumerate(table.rows):
        # 1/n! underflows past n = 170, so positivity is only checked below that
        assert len(row) == n + 1
        assert abs(math.fsum(row) - 1) < 1e-12
        if n >= 1:
            assert row[0] == 0 and (n > 150 or np.all(row[1:] > 0))


def test_embedded_table_capacity():
    with pytest.raises(CapacityError):
        growth.embedded_pmf_table(growth.MAX_TABLE_STEPS + 1)


# --- means and bounds ---------------------------------------------------------

def test_mean_formula_examples():
    assert growth.mean_out_degree_asymptotic(0) == 0
    assert growth.mean_out_degree_asymptotic(1) == 1
    assert growth.mean_out_degree_asymptotic(3) == 2.0
    table = growth.embedded_pmf_table(3)
    assert table.mean(3) == pytest.approx(23 / 12, abs=1e-15)


def test_small_n_mean_gap_is_exact():
    assert urn_mean_exact(2) == Fraction(3, 2)
    assert urn_mean_exact(3) == Fraction(23, 12)
    assert growth.mean_out_degree_asymptotic(2) == pytest.approx(1.5616, abs=1e-4)


def test_out_degree_bound_examples():
    assert growth.out_degree_tail_bound(100, 0.5, "upper") == pytest.approx(0.3206, abs=1e-4)
    assert growth.out_degree_tail_bound(10000, 0.3, "lower") == pytest.approx(0.01458, abs=1e-5)
    assert growth.out_degree_tail_bound(50, 1e-9) == pytest.approx(1.0)
    for eps in (0.0, 1.0, -0.2):
        with pytest.raises(DomainError):
            growth.out_degree_tail_bound(10, eps)


def test_in_degree_formulas():
    assert growth.in_degree_mean_asymptotic(1) == pytest.approx(0.9428, abs=1e-4)
    assert growth.in_degree_mean_asymptotic(10**6) == pytest.approx(942.809, abs=1e-3)
    assert growth.in_degree_mean_exact(1) == pytest.approx(1.0)
    assert growth.in_degree_mean_exact(2) == pytest.approx(1.5)
    assert growth.arc_probability_asymptotic(5, 6) == 1.0
    assert growth.arc_probability_asymptotic(4, 6) == pytest.approx(1 / math.sqrt(3))
    assert growth.arc_probability_asymptotic(1, 10**4 + 2) == pytest.approx(0.007071, abs=1e-6)
    with pytest.raises(DomainError):
        growth.arc_probability_asymptotic(6, 6)


def test_in_degree_bounds():
    assert growth.in_degree_tail_bound(800, 0.5, "upper") == pytest.approx(0.1890, abs=1e-4)
    assert growth.in_degree_tail_bound(800, 0.5, "lower") == pytest.approx(0.0822, abs=1e-4)
    assert growth.in_degree_tail_bound(800, 1e-9, "upper") == pytest.approx(1.0)
    with pytest.raises(DomainError):
        growth.in_degree_tail_bound(800, 0.0)


def test_spanning_tree_asymptotic():
    assert growth.expected_spanning_trees_log(1) == pytest.approx(-0.05889, abs=1e-5)
    assert growth.expected_spanning_trees_log(2) == pytest.approx(0.22879, abs=1e-5)
    assert growth.expected_spanning_trees_log(100) == pytest.approx(175.98, abs=1e-2)
    assert math.isfinite(growth.expected_spanning_trees_log(10**6))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 25), st.floats(0.01, 8.0))
def test_pmf_in_unit_interval(k, t):
    p = growth.pure_birth_pmf(k, t, 1.0)
    assert 0.0 <= p <= 1.0
