import pytest

from locsparse import gen
from locsparse.errors import PreconditionError
from locsparse.graph import certify_local_sparsity, count_cliques


def test_gnp_extremes():
    assert gen.gnp(6, 0.0, seed=1).num_edges() == 0
    assert gen.gnp(6, 1.0, seed=1).num_edges() == 15


def test_gnp_deterministic():
    a = gen.gnp(12, 0.4, seed=7)
    b = gen.gnp(12, 0.4, seed=7)
    assert a == b
    assert a.to_edge_list() == b.to_edge_list()
    assert a != gen.gnp(12, 0.4, seed=8)


def test_triangle_free_certificate_and_bipartite():
    g = gen.random_triangle_free(20, 30, seed=5)
    assert g.num_edges() == 30
    assert certify_local_sparsity(g, 0, 3).verdict
    # bipartite: 2-colorable by BFS
    color = {}
    for start in range(g.n):
        if start in color:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for u in g.neighbors(v):
                if u not in color:
                    color[u] = 1 - color[v]
                    stack.append(u)
                else:
                    assert color[u] != color[v]
    side = sum(1 for v in color.values() if v == 0)
    assert max(side, g.n - side) >= g.n // 2


def test_triangle_free_infeasible_m():
    with pytest.raises(PreconditionError):
        gen.random_triangle_free(6, 10, seed=1)


def test_locally_sparse_certified():
    for seed in range(4):
        g = gen.random_locally_sparse(18, 7, k=2, r=3, seed=seed)
        assert g.max_degree() <= 7
        assert certify_local_sparsity(g, 2, 3).verdict


def test_locally_sparse_zero_budget_is_clique_free():
    g = gen.random_locally_sparse(16, 8, k=0, r=3, seed=2)
    assert count_cliques(g, g.full_mask, 4) == 0
    assert certify_local_sparsity(g, 0, 3).verdict


def test_locally_sparse_huge_budget_behaves_like_capped_gnp():
    g = gen.random_locally_sparse(12, 4, k=10**9, r=3, seed=3)
    assert g.max_degree() <= 4
    assert g.num_edges() > 0


def test_locally_sparse_deterministic():
    a = gen.random_locally_sparse(15, 6, k=1, r=3, seed=9)
    b = gen.random_locally_sparse(15, 6, k=1, r=3, seed=9)
    assert a.to_edge_list() == b.to_edge_list()


def test_petersen_shape():
    g = gen.petersen()
    assert g.n == 10
    assert g.degrees() == [3] * 10
    assert count_cliques(g, g.full_mask, 3) == 0


def test_complete_multipartite_clique_number():
    g = gen.complete_multipartite([2, 2, 3])
    assert count_cliques(g, g.full_mask, 3) == 2 * 2 * 3
    assert count_cliques(g, g.full_mask, 4) == 0


def test_path_is_triangle_sparse():
    assert certify_local_sparsity(gen.path(30), 1, 3).verdict


def test_family_dispatch():
    assert gen.family("kneser", n=5, k=2) == gen.petersen()
    assert gen.family("cycle", n=4).num_edges() == 4
    with pytest.raises(PreconditionError):
        gen.family("nope")
    with pytest.raises(PreconditionError):
        gen.family("gnp", n=5)  # missing p/seed
