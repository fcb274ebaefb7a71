"""Min-degree boosting by iterated doubling.

Each round takes two disjoint copies of the current graph and joins the two
instances of every vertex whose degree is still below the target, raising the
minimum degree by one while leaving the maximum degree and every neighborhood's
clique structure unchanged.  After j = delta - min_degree rounds the original
graph embeds 2^j times, vertex-disjointly, with its sparsity budgets carried
through."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import InternalCheckError, PreconditionError
from .graph import Graph, bits, certify_local_sparsity, per_vertex

MAX_DOUBLINGS = 20


@dataclass
class EmbeddingResult:
    g_prime: Graph
    homs: list[list[int]]
    k_tilde: list[float]
    r_tilde: list[int]
    j: int

    def to_dict(self) -> dict:
        return {
            "j": self.j,
            "n_prime": self.g_prime.n,
            "edges": [[u, v] for u, v in self.g_prime.edges()],
            "homs": self.homs,
            "k_tilde": self.k_tilde,
            "r_tilde": self.r_tilde,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _double(g: Graph, delta: int) -> Graph:
    n = g.n
    edges = []
    for u, v in g.edges():
        edges.append((u, v))
        edges.append((u + n, v + n))
    for v in range(n):
        if g.degree(v) < delta:
            edges.append((v, v + n))
    return Graph(2 * n, edges)


def min_degree_boost(g: Graph, delta: int, k_map, r_map) -> EmbeddingResult:
    """Iterate the doubling until the minimum degree reaches delta
    (j = max(delta - min_degree, 0) rounds); verifies all invariants before
    returning."""
    if g.n < 1:
        raise PreconditionError("embedding needs n >= 1")
    if delta > g.max_degree():
        raise PreconditionError(
            f"target min degree {delta} exceeds max degree {g.max_degree()}")
    ks = per_vertex(k_map, g.n, float)
    rs = per_vertex(r_map, g.n, int)
    j = max(delta - g.min_degree(), 0)
    if j > MAX_DOUBLINGS:
        raise PreconditionError(
            f"doubling depth {j} exceeds guard {MAX_DOUBLINGS} (2^j blowup)")

    cur = g
    for i in range(j):
        before = cur.degrees()
        cur = _double(cur, delta)
        after = cur.degrees()
        for v, d_old in enumerate(before):
            expect = d_old + 1 if d_old < delta else d_old
            if after[v] != expect or after[v + len(before)] != expect:
                raise InternalCheckError(
                    f"round {i}: degree of {v} moved {d_old} -> {after[v]}")

    copies = 1 << j
    homs = [[v + g.n * m for v in range(g.n)] for m in range(copies)]
    k_tilde = [ks[u % g.n] for u in range(cur.n)]
    r_tilde = [rs[u % g.n] for u in range(cur.n)]
    result = EmbeddingResult(cur, homs, k_tilde, r_tilde, j)
    ok, detail = verify_embedding(g, result, delta, ks, rs)
    if not ok:
        raise InternalCheckError(f"construction violated an invariant: {detail}")
    return result


def verify_embedding(g: Graph, result: EmbeddingResult, delta: int,
                     k_map=None, r_map=None) -> tuple[bool, str | None]:
    """Independent recheck of the embedding contract:
      I1 min degree >= delta, I2 max degree preserved, I3 size n * 2^j,
      I4 every map is a graph homomorphism with pairwise-disjoint images and
      carries the (k, r) budgets through.  Also rechecks that local sparsity
      certified on the source stays certified on the result."""
    gp = result.g_prime
    if gp.n != g.n * (1 << result.j):
        return False, f"I3: size {gp.n} != {g.n} * 2^{result.j}"
    if g.n and gp.min_degree() < delta:
        return False, f"I1: min degree {gp.min_degree()} < {delta}"
    if gp.max_degree() != g.max_degree():
        return False, f"I2: max degree {gp.max_degree()} != {g.max_degree()}"
    if len(result.homs) != 1 << result.j:
        return False, f"I4: expected {1 << result.j} maps, got {len(result.homs)}"
    seen: set[int] = set()
    for idx, hom in enumerate(result.homs):
        if len(hom) != g.n:
            return False, f"I4: map {idx} has wrong domain size"
        image = set(hom)
        if len(image) != g.n:
            return False, f"I4: map {idx} is not injective"
        if image & seen:
            return False, f"I4: map {idx} shares vertices with an earlier image"
        seen |= image
        for u, v in g.edges():
            if not gp.has_edge(hom[u], hom[v]):
                return False, f"I4: map {idx} sends edge ({u}, {v}) to a non-edge"
    if k_map is not None and r_map is not None:
        ks = per_vertex(k_map, g.n, float)
        rs = per_vertex(r_map, g.n, int)
        for hom in result.homs:
            for v in range(g.n):
                if result.k_tilde[hom[v]] != ks[v] or result.r_tilde[hom[v]] != rs[v]:
                    return False, f"I4: budgets not carried through at vertex {v}"
        if certify_local_sparsity(g, ks, rs).verdict:
            if not certify_local_sparsity(gp, result.k_tilde, result.r_tilde).verdict:
                return False, "sparsity transfer: certified source, uncertified result"
    return True, None
