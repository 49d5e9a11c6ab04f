import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import growth_graph_law
from p2pgrowth import CapacityError, DomainError, derive_stream
from p2pgrowth.graphkit import (
    DagSnapshot,
    arborescence_count_exact,
    count_arborescences_matrix_tree,
    count_arborescences_product,
    degree_profiles,
    dumps_edge_list,
    loads_edge_list,
    read_edge_list,
    write_edge_list,
)
from p2pgrowth.netsim import sample_growth_arcs

PATH = DagSnapshot.from_arcs([(1, 2, "organic"), (2, 3, "organic")], root=1)
TRIANGLE = DagSnapshot.from_arcs([(1, 2, "organic"), (1, 3, "organic"), (2, 3, "organic")], root=1)


def test_examples():
    assert count_arborescences_product(PATH) == 0.0
    assert count_arborescences_matrix_tree(PATH) == 1
    assert count_arborescences_product(TRIANGLE) == pytest.approx(math.log(2))
    assert count_arborescences_matrix_tree(TRIANGLE) == 2
    lonely = DagSnapshot.from_arcs([(1, 2, "organic")], root=1, nodes=[3])
    assert count_arborescences_product(lonely) == -math.inf
    assert count_arborescences_matrix_tree(lonely) == 0


def test_degree_profiles():
    prof = degree_profiles(PATH)
    assert prof["out_degree_by_rank"].tolist() == [1, 1, 0]
    assert prof["in_degree_by_rank"].tolist() == [0, 1, 1]
    assert degree_profiles(TRIANGLE)["in_degree_by_rank"][2] == 2


def random_dag(rng, n):
    arcs = [(i, j, "organic") for j in range(1, n) for i in range(j) if rng.random() < 0.5]
    return DagSnapshot.from_arcs(arcs, root=0, nodes=range(n))


def test_product_equals_matrix_tree_on_random_dags():
    rng = np.random.default_rng(8)
    for _ in range(200):
        g = random_dag(rng, int(rng.integers(2, 9)))
        log_count = count_arborescences_product(g)
        exact = count_arborescences_matrix_tree(g)
        if exact == 0:
            assert log_count == -math.inf
        else:
            assert round(math.exp(log_count)) == exact


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32))
def test_handshake(seed):
    g = random_dag(np.random.default_rng(seed), 10)
    prof = degree_profiles(g)
    assert prof["out_degree_by_rank"].sum() == prof["in_degree_by_rank"].sum() == len(g.arcs)


def test_simulated_graph_counts_agree():
    arcs = sample_growth_arcs(12, derive_stream(4, 0))
    g = DagSnapshot.from_arcs(arcs, root=0, nodes=range(12))
    assert round(math.exp(count_arborescences_product(g))) == count_arborescences_matrix_tree(g)


def test_validation_and_capacity():
    with pytest.raises(DomainError):
        DagSnapshot.from_arcs([(2, 1, "organic")], root=1)
    with pytest.raises(DomainError):
        DagSnapshot.from_arcs([(0, 1, "organic")], root=1)
    with pytest.raises(DomainError):
        count_arborescences_product(object())
    with pytest.raises(CapacityError):
        count_arborescences_matrix_tree(DagSnapshot(tuple(range(21)), (), 0))


def test_general_multigraph_oracle():
    # a 2-cycle plus root: the root must reach both, 1 arborescence per entry arc
    assert arborescence_count_exact([0, 1, 2], [(0, 1), (1, 2), (2, 1)], 0) == 1
    assert arborescence_count_exact([0, 1, 2], [(0, 1), (0, 2), (1, 2), (2, 1)], 0) == 3


def test_edge_list_roundtrip(tmp_path):
    g = DagSnapshot.from_arcs([(0, 1, "organic"), (0, 3, "recovery")], root=0, nodes=[7])
    text = dumps_edge_list(g)
    assert text.splitlines()[0] == "root 0"
    assert loads_edge_list(text) == g
    write_edge_list(g, tmp_path / "g.txt")
    assert read_edge_list(tmp_path / "g.txt") == g
    with pytest.raises(DomainError):
        loads_edge_list("0 1 organic\n")
    with pytest.raises(DomainError):
        loads_edge_list("root 0\n0 x organic\n")


def test_expected_tree_count_does_not_factorise():
    # exact law of the 5-node graph: in-degrees are not independent, so
    # E(T) differs from the product of the mean in-degrees
    law = growth_graph_law(5)
    assert sum(p for p, _ in law) == 1
    e_t = sum(p * math.prod(inn[1:]) for p, inn in law)
    means = [sum(p * inn[v] for p, inn in law) for v in range(1, 5)]
    assert e_t == Fraction(227, 36)
    assert math.prod(means) > e_t


def test_simulated_tree_count_matches_enumeration():
    from p2pgrowth.experiments import spanning_tree_mean

    m = spanning_tree_mean(4, 40_000, 12).metrics
    assert abs(m["mean_T"] - 227 / 36) < 3 * m["std_error"]
