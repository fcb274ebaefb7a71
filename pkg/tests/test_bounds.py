import math
import warnings

import pytest

from conftest import naive_max_independent_set, random_graph_corpus
from locsparse import gen
from locsparse.bounds import (
    BoundParameters,
    asymptotic_bound,
    average_degree_reduction,
    balanced_iset_size,
    greedy_independent_set,
    guarantee_ceiling,
    log_partition_lower_bound,
    occupancy_ratio_reference,
    sparse_independent_set,
)
from locsparse.errors import PreconditionError
from locsparse.graph import Graph, count_cliques
from locsparse.hardcore import log_fraction, transfer_partition_function


def test_greedy_known_cases():
    w = greedy_independent_set(gen.cycle(5))
    assert w.size >= 2
    w = greedy_independent_set(gen.edgeless(7))
    assert w.size == 7 and w.guarantee == 7
    w = greedy_independent_set(gen.petersen())
    assert w.size >= 3
    assert w.size == 4 == naive_max_independent_set(gen.petersen())


def test_greedy_achieves_average_degree_bound():
    for g in random_graph_corpus(40, 1, 14, seed=500):
        w = greedy_independent_set(g)
        assert g.is_independent(w.vertices)
        demand = -(-g.n * g.n // (g.n + 2 * g.num_edges()))
        assert w.size >= demand


def test_sparse_r2_single_edge():
    g = Graph(16, [(0, 1)])
    w = sparse_independent_set(g, 1, 2)
    assert w.size >= 8
    assert w.guarantee == pytest.approx(8.0)


def test_sparse_r3_path():
    w = sparse_independent_set(gen.path(729), 1, 3)
    assert w.guarantee == pytest.approx(9.0)
    assert w.size >= 9
    assert w.size == 365  # greedy on a path takes every other vertex


def test_sparse_r3_random_triangle_free():
    g = gen.random_triangle_free(800, 2000, seed=4)
    w = sparse_independent_set(g, 1, 3)
    assert g.is_independent(w.vertices)
    assert w.size >= guarantee_ceiling(math.sqrt(800) / 3)


def test_sparse_descend_case_fires_on_complete_bipartite():
    # every vertex of K_{m,m} is heavy, so the recursion descends into a
    # neighborhood (an edgeless side) and finishes by greedy
    m = 365
    edges = [(a, m + b) for a in range(m) for b in range(m)]
    g = Graph(2 * m, edges)
    w = sparse_independent_set(g, 1, 3)
    assert [t["case"] for t in w.trace] == ["descend", "greedy_base"]
    assert w.size == m
    assert w.size >= guarantee_ceiling(w.guarantee)
    descend = w.trace[0]
    assert descend["child_budget"] >= 1
    # the child the recursion descends into satisfies the next level's floor
    assert g.degree(descend["vertex"]) >= 2 ** 4


def test_sparse_r2_guarantee_versus_exact_alpha():
    # base-case statement: alpha >= n / (2 sqrt(k)) for graphs with <= k edges
    for g in random_graph_corpus(12, 16, 20, seed=321, p_lo=0.05, p_hi=0.3):
        k = max(g.num_edges(), 1)
        w = sparse_independent_set(g, k, 2)
        demand = guarantee_ceiling(g.n / (2 * math.sqrt(k)))
        assert w.size >= demand
        assert naive_max_independent_set(g) >= demand


def test_sparse_precondition_messages():
    with pytest.raises(PreconditionError, match="r must be"):
        sparse_independent_set(gen.path(20), 1, 1)
    with pytest.raises(PreconditionError, match="k must be"):
        sparse_independent_set(gen.path(20), 0.5, 2)
    with pytest.raises(PreconditionError, match="n >= r"):
        sparse_independent_set(gen.path(10), 1, 2)
    with pytest.raises(PreconditionError, match="not .*sparse"):
        sparse_independent_set(gen.complete(20), 1, 2)


def test_log_partition_bound_values():
    assert log_partition_lower_bound(729, 1, 3, 1, 9) == pytest.approx(0.0, abs=1e-9)
    got = log_partition_lower_bound(2000, 1, 3, 1, 10)
    assert got == pytest.approx(10 * (math.log(2000) - 2 * math.log(30)), rel=1e-12)
    z = log_fraction(transfer_partition_function("path", 2000, 1)[0])
    assert z >= got


def test_log_partition_bound_holds_on_paths_and_cycles():
    for family in ("path", "cycle"):
        for n in (729, 1500, 4000):
            for lam in (0.5, 1, 2):
                z = log_fraction(transfer_partition_function(family, n, lam)[0])
                a_star = balanced_iset_size(n, 1, 3, lam)
                for a in range(1, math.floor(a_star) + 1):
                    bound = log_partition_lower_bound(n, 1, 3, lam, a)
                    assert z >= bound - 1e-9
                    assert z >= 3 * a - 1e-9


def test_log_partition_bound_preconditions():
    with pytest.raises(PreconditionError):
        log_partition_lower_bound(729, 1, 2, 1, 5)
    with pytest.raises(PreconditionError):
        log_partition_lower_bound(100, 1, 3, 1, 5)
    with pytest.raises(PreconditionError):
        log_partition_lower_bound(729, 1, 3, 1, 0)


def test_ratio_reference_values():
    # omega = e^3 at r=3, k=1; z = 1/e makes omega*z = e^2
    val = occupancy_ratio_reference(1 / math.e, 1, 3)
    assert val == pytest.approx((1 / math.e) / 2)
    val = occupancy_ratio_reference(10, 1, 4)
    assert val == pytest.approx(0.5 * 10 / math.log(math.e**2 * 10))
    with pytest.raises(PreconditionError):
        occupancy_ratio_reference(1e-9, 1, 3)


def test_ratio_reference_monotone_beyond_knee():
    vals = [occupancy_ratio_reference(z, 1, 3) for z in (0.5, 1, 2, 5, 10)]
    assert vals == sorted(vals)


@pytest.mark.filterwarnings("ignore::UserWarning")
def test_bound_parameters_and_asymptotics():
    params = BoundParameters(1e6, 0.0, 3)
    eta = 3 * math.log(math.log(1e6)) / math.log(1e6)
    assert params.scale == pytest.approx(eta)
    assert asymptotic_bound("iset_max_deg", params, 10**6) == pytest.approx(1 / eta, rel=1e-6)
    assert asymptotic_bound("iset_max_deg", params, 10**6) == pytest.approx(1.7538, rel=1e-3)
    assert asymptotic_bound("iset_avg_deg", params, 10**6) == pytest.approx(
        asymptotic_bound("iset_max_deg", params, 10**6) / 9)
    assert asymptotic_bound("chi_c", params, 10**6) == pytest.approx(eta * 1e6)


def test_bound_parameters_domain():
    with pytest.raises(PreconditionError):
        BoundParameters(2.0, 0.0, 3)
    with pytest.raises(PreconditionError):
        BoundParameters(100.0, 1.5, 3)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        BoundParameters(100.0, 0.0, 5)  # loglog(100) ~ 1.53 < 5
    assert any("exceeds" in str(w.message) for w in caught)


@pytest.mark.filterwarnings("ignore::UserWarning")
def test_asymptotic_chi_c_needs_eps_below_one():
    params = BoundParameters(1e6, 1.0, 3)
    with pytest.raises(PreconditionError):
        asymptotic_bound("chi_c", params, 100)


def test_reduction_regular_clique_free_keeps_everything():
    g = gen.cycle(12)
    sub, report = average_degree_reduction(g, k=4.0, r=2, eps=0.0)
    assert sub.n == 12
    assert report["core_count"] == 12


def test_reduction_star_drops_center():
    g = gen.star(9)  # center 0, degree 9; average degree 1.8
    sub, report = average_degree_reduction(g, k=10 / 3, r=2, eps=0.0)
    assert 0 not in report["core_vertices"]
    assert report["core_count"] >= 4


def test_reduction_random_instance():
    g = gen.random_locally_sparse(30, 6, k=1, r=3, seed=11)
    d = g.avg_degree()
    k = g.n * d ** 0.0 / 4  # eps = 0, r = 3
    total = count_cliques(g, g.full_mask, 4)
    if total <= math.floor(k):
        sub, report = average_degree_reduction(g, k, 3, 0.0)
        assert report["core_count"] >= (g.n + 2) // 3


def test_reduction_precondition():
    with pytest.raises(PreconditionError):
        average_degree_reduction(gen.complete(6), k=1.0, r=2, eps=0.0)


def test_witness_json():
    w = greedy_independent_set(gen.cycle(5))
    obj = w.to_dict()
    assert obj["size"] == len(obj["vertices"]) == w.size
    assert "guarantee" in obj and "trace" in obj
