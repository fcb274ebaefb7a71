"""Seeded instance generators: random graphs, sparsity-constrained graphs,
and fixed families for known-answer tests."""

from __future__ import annotations

import math
import random
from itertools import combinations

from .errors import PreconditionError
from .graph import Graph, bits, count_cliques_in_adj


def gnp(n: int, p: float, seed: int) -> Graph:
    """Binomial random graph; deterministic per seed."""
    if not 0.0 <= p <= 1.0:
        raise PreconditionError(f"edge probability must be in [0,1], got {p}")
    rng = random.Random(seed)
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return Graph(n, edges)


def random_triangle_free(n: int, m: int, seed: int) -> Graph:
    """Random bipartite graph with exactly m edges (hence triangle-free)."""
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    half = (n + 1) // 2
    left, right = perm[:half], perm[half:]
    capacity = len(left) * len(right)
    if m < 0 or m > capacity:
        raise PreconditionError(
            f"infeasible edge count {m}: bipartite sides hold at most {capacity}")
    pairs = [(u, v) for u in left for v in right]
    edges = rng.sample(pairs, m)
    return Graph(n, edges)


def random_locally_sparse(n: int, max_deg: int, k: float, r: int, seed: int) -> Graph:
    """Greedy edge insertion over a seeded shuffle of all pairs, rejecting any
    edge that would push a neighborhood past floor(k) r-cliques or a vertex
    past max_deg.  Rejection is permanent."""
    if k < 0:
        raise PreconditionError(f"clique budget must be nonnegative, got {k}")
    if r < 2:
        raise PreconditionError(f"clique order must be >= 2, got {r}")
    rng = random.Random(seed)
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    adj = [0] * n
    k_floor = math.floor(k)
    for u, v in pairs:
        if adj[u].bit_count() >= max_deg or adj[v].bit_count() >= max_deg:
            continue
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        affected = [u, v] + list(bits(adj[u] & adj[v]))
        if any(count_cliques_in_adj(adj, adj[w], r) > k_floor for w in affected):
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
    edges = [(u, v) for u in range(n) for v in bits(adj[u]) if v > u]
    return Graph(n, edges)


# -- fixed families ---------------------------------------------------------

def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise PreconditionError(f"cycle needs >= 3 vertices, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph(n, list(combinations(range(n), 2)))


def edgeless(n: int) -> Graph:
    return Graph(n)


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def kneser(n: int, k: int) -> Graph:
    """Vertices are k-subsets of [n]; edges join disjoint subsets."""
    subsets = list(combinations(range(n), k))
    idx = {s: i for i, s in enumerate(subsets)}
    edges = []
    for a, b in combinations(subsets, 2):
        if not set(a) & set(b):
            edges.append((idx[a], idx[b]))
    return Graph(len(subsets), edges)


def petersen() -> Graph:
    return kneser(5, 2)


def complete_multipartite(sizes: list[int]) -> Graph:
    n = sum(sizes)
    part = []
    for i, s in enumerate(sizes):
        part += [i] * s
    edges = [(u, v) for u, v in combinations(range(n), 2) if part[u] != part[v]]
    return Graph(n, edges)


def family(name: str, **params) -> Graph:
    """Dispatch a named family; used by the CLI `gen` subcommand."""
    builders = {
        "path": lambda: path(int(params["n"])),
        "cycle": lambda: cycle(int(params["n"])),
        "complete": lambda: complete(int(params["n"])),
        "edgeless": lambda: edgeless(int(params["n"])),
        "star": lambda: star(int(params["leaves"])),
        "petersen": petersen,
        "kneser": lambda: kneser(int(params["n"]), int(params["k"])),
        "complete_multipartite": lambda: complete_multipartite(
            [int(s) for s in params["sizes"]]),
        "gnp": lambda: gnp(int(params["n"]), float(params["p"]), int(params["seed"])),
        "triangle_free": lambda: random_triangle_free(
            int(params["n"]), int(params["m"]), int(params["seed"])),
        "locally_sparse": lambda: random_locally_sparse(
            int(params["n"]), int(params["max_deg"]), float(params["k"]),
            int(params["r"]), int(params["seed"])),
    }
    if name not in builders:
        raise PreconditionError(f"unknown family: {name}")
    try:
        return builders[name]()
    except KeyError as exc:
        raise PreconditionError(f"family {name} missing parameter {exc}") from exc
