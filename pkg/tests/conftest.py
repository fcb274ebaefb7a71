"""Shared brute-force oracles and corpus helpers.

The oracles here are deliberately naive (full enumeration); they stay
independent of the library code paths they check.
"""

import random
from itertools import combinations, permutations, product

from locsparse import gen
from locsparse.graph import Graph, bits


def naive_independence_counts(g: Graph) -> tuple[int, ...]:
    """Count independent sets by size via full 2^n enumeration."""
    counts = [0] * (g.n + 1)
    for s in range(1 << g.n):
        m = s
        ok = True
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            if g.adj[v] & s:
                ok = False
                break
        if ok:
            counts[s.bit_count()] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return tuple(counts)


def naive_max_independent_set(g: Graph) -> int:
    return len(naive_independence_counts(g)) - 1


def naive_clique_count(g: Graph, vertices, r: int) -> int:
    verts = list(bits(vertices)) if isinstance(vertices, int) else list(vertices)
    return sum(
        1 for sub in combinations(verts, r)
        if all(g.has_edge(a, b) for a, b in combinations(sub, 2))
    )


def naive_automorphism_count(f: Graph) -> int:
    count = 0
    for perm in permutations(range(f.n)):
        if all(f.has_edge(perm[u], perm[v]) == f.has_edge(u, v)
               for u, v in combinations(range(f.n), 2)):
            count += 1
    return count


def naive_copy_count(g: Graph, f: Graph) -> int:
    """Distinct subgraphs of g isomorphic to f, via raw permutation scan."""
    hits = 0
    fedges = f.edges()
    for perm in permutations(range(g.n), f.n):
        if all(g.has_edge(perm[u], perm[v]) for u, v in fedges):
            hits += 1
    return hits // naive_automorphism_count(f)


def enumerate_cover_colorings(g: Graph, cover) -> int:
    """Count proper assignments by brute force over the list product."""
    maps = cover.pair_maps()
    vertices = list(range(g.n))
    total = 0
    for choice in product(*(cover.lists[v] for v in vertices)):
        phi = dict(zip(vertices, choice))
        if all(maps.get((u, v), {}).get(phi[u]) != phi[v] for u, v in g.edges()):
            total += 1
    return total


def random_graph_corpus(count: int, n_lo: int, n_hi: int, seed: int,
                        p_lo: float = 0.1, p_hi: float = 0.7) -> list[Graph]:
    rng = random.Random(seed)
    return [
        gen.gnp(rng.randint(n_lo, n_hi), rng.uniform(p_lo, p_hi),
                seed=rng.randrange(2**30))
        for _ in range(count)
    ]
