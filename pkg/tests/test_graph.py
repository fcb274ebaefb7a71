import json
import math

import pytest

from conftest import (
    naive_automorphism_count,
    naive_clique_count,
    naive_copy_count,
    random_graph_corpus,
)
from locsparse import gen
from locsparse.errors import PreconditionError
from locsparse.graph import (
    Graph,
    automorphism_count,
    certify_local_sparsity,
    clique_budget_from_pattern,
    count_cliques,
    count_subgraph_copies,
)


def test_clique_count_k5_neighborhood():
    k5 = gen.complete(5)
    assert count_cliques(k5, k5.adj[0], 3) == math.comb(4, 3) == 4


def test_clique_count_cycle_neighborhood_edgeless():
    c5 = gen.cycle(5)
    assert count_cliques(c5, c5.adj[0], 2) == 0


def test_clique_count_petersen_triangle_free():
    pet = gen.petersen()
    assert naive_clique_count(pet, range(10), 3) == 0
    assert count_cliques(pet, pet.full_mask, 3) == 0


def test_clique_count_matches_naive_enumeration():
    for g in random_graph_corpus(25, 3, 12, seed=101):
        for r in (2, 3, 4):
            assert count_cliques(g, g.full_mask, r) == naive_clique_count(g, range(g.n), r)
        for v in range(g.n):
            assert count_cliques(g, g.adj[v], 3) == naive_clique_count(g, g.neighbors(v), 3)


def test_clique_count_r_too_large_returns_zero():
    g = gen.complete(4)
    assert count_cliques(g, g.full_mask, 5) == 0


def test_certify_k4_fails_everywhere():
    cert = certify_local_sparsity(gen.complete(4), 0, 3)
    assert not cert.verdict
    assert sorted(v["v"] for v in cert.violations) == [0, 1, 2, 3]
    assert all(v["count"] == 1 and v["k_floor"] == 0 for v in cert.violations)


def test_certify_triangle_free_passes():
    assert certify_local_sparsity(gen.cycle(7), 0, 3).verdict


def test_certify_matches_brute_force_recount():
    g = gen.gnp(12, 0.4, seed=7)
    cert = certify_local_sparsity(g, 2, 3)
    expected_violations = [
        v for v in range(g.n) if naive_clique_count(g, g.neighbors(v), 3) > 2
    ]
    assert [v["v"] for v in cert.violations] == expected_violations
    assert cert.counts == [naive_clique_count(g, g.neighbors(v), 3) for v in range(g.n)]


def test_certify_monotone_in_budget():
    for g in random_graph_corpus(10, 4, 10, seed=33):
        small = certify_local_sparsity(g, 1, 3)
        large = certify_local_sparsity(g, 5, 3)
        if small.verdict:
            assert large.verdict


def test_certify_isolated_vertices_pass():
    g = Graph(3)
    assert certify_local_sparsity(g, 0, 2).verdict


def test_certificate_json_shape():
    cert = certify_local_sparsity(gen.complete(4), 0, 3)
    obj = json.loads(cert.to_json())
    assert obj["verdict"] is False
    assert {"v", "count", "k_floor"} == set(obj["violations"][0])


def test_copy_count_k2_is_edge_count():
    for g in random_graph_corpus(8, 2, 8, seed=5):
        assert count_subgraph_copies(g, gen.complete(2)) == g.num_edges()


def test_copy_count_examples_and_oracle():
    assert count_subgraph_copies(gen.complete(3), gen.path(3)) == 3
    assert count_subgraph_copies(gen.complete(4), gen.cycle(4)) == 3
    for g in random_graph_corpus(6, 3, 6, seed=77):
        for pattern in (gen.path(3), gen.cycle(3), gen.path(4)):
            assert count_subgraph_copies(g, pattern) == naive_copy_count(g, pattern)


def test_copy_count_of_clique_matches_clique_count():
    for g in random_graph_corpus(10, 3, 9, seed=13):
        for r in (2, 3, 4):
            assert count_subgraph_copies(g, gen.complete(r)) == count_cliques(g, g.full_mask, r)


def test_automorphism_counts():
    for r in (1, 2, 3, 4, 5):
        assert automorphism_count(gen.complete(r)) == math.factorial(r)
    assert automorphism_count(gen.cycle(5)) == 10
    assert automorphism_count(gen.path(4)) == 2
    for g in random_graph_corpus(8, 2, 6, seed=19):
        assert automorphism_count(g) == naive_automorphism_count(g)


def test_automorphism_count_divides_factorial():
    for g in random_graph_corpus(10, 2, 7, seed=23):
        assert math.factorial(g.n) % automorphism_count(g) == 0


def test_pattern_guard():
    with pytest.raises(PreconditionError):
        automorphism_count(gen.complete(11))
    with pytest.raises(PreconditionError):
        count_subgraph_copies(gen.complete(12), gen.complete(11))


def test_clique_budget_conversion():
    assert clique_budget_from_pattern(5, gen.complete(3)) == 5
    assert clique_budget_from_pattern(3, gen.cycle(4)) == 1
    assert clique_budget_from_pattern(1.5, gen.path(3)) == pytest.approx(2 / 3)


def test_budget_conversion_soundness():
    # a graph with at most k pattern copies has at most the converted budget
    # of r-cliques (floor-compared), spot-checked on small graphs
    pattern = gen.path(3)
    for g in random_graph_corpus(10, 3, 7, seed=41):
        copies = count_subgraph_copies(g, pattern)
        converted = clique_budget_from_pattern(copies, pattern)
        assert count_cliques(g, g.full_mask, 3) <= math.floor(converted) or copies == 0


def test_graph_invariants():
    g = gen.gnp(9, 0.5, seed=3)
    assert all(not g.has_edge(v, v) for v in range(g.n))
    assert all(g.has_edge(u, v) == g.has_edge(v, u) for u in range(g.n) for v in range(g.n))
    assert g.max_degree() == max(g.degrees())
    assert abs(g.avg_degree() - 2 * g.num_edges() / g.n) < 1e-12


def test_self_loop_rejected():
    with pytest.raises(ValueError):
        Graph(3, [(1, 1)])


def test_edge_list_round_trip():
    g = gen.gnp(8, 0.4, seed=11)
    assert Graph.from_edge_list(g.to_edge_list()) == g


def test_edge_list_comments_and_declared_n():
    text = "# n = 5\n0 1\n# trailing comment\n2 3  # inline\n"
    g = Graph.from_edge_list(text)
    assert g.n == 5 and g.has_edge(0, 1) and g.has_edge(2, 3)


def test_dimacs_reader():
    text = "c sample\np edge 4 3\ne 1 2\ne 2 3\ne 3 4\n"
    g = Graph.from_dimacs(text)
    assert g == gen.path(4)


def test_json_round_trip():
    g = gen.petersen()
    assert Graph.from_dict(json.loads(json.dumps(g.to_dict()))) == g


def test_induced_subgraph_relabels():
    g = gen.cycle(6)
    sub, ids = g.induced([0, 1, 2, 4])
    assert ids == [0, 1, 2, 4]
    assert sub.num_edges() == 2  # edges 0-1 and 1-2 survive
