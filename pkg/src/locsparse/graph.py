"""Bitset-backed simple graphs, clique counting, and local-sparsity certificates.

Vertices are 0..n-1.  Adjacency is one Python int per vertex, so neighborhood
intersection is a single big-int AND and degree is a popcount; the clique
counter recurses on candidate masks, shrinking them with each branching vertex.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .errors import PreconditionError

MAX_VERTICES = 10**6
MAX_PATTERN_VERTICES = 10


def bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Immutable simple undirected graph with bitset adjacency rows."""

    __slots__ = ("n", "adj", "labels")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (),
                 labels: Sequence[str] | None = None):
        if n < 0 or n > MAX_VERTICES:
            raise PreconditionError(f"vertex count out of range: {n}")
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{n - 1}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.adj = adj
        self.labels = list(labels) if labels is not None else None

    # -- basic accessors -------------------------------------------------

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def avg_degree(self) -> float:
        if self.n == 0:
            return 0.0
        return sum(self.degrees()) / self.n

    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            m = self.adj[u] >> (u + 1) << (u + 1)
            for v in bits(m):
                out.append((u, v))
        return out

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def closed_neighborhood(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def is_independent(self, vertices: Iterable[int]) -> bool:
        m = mask_of(vertices)
        return all(self.adj[v] & m == 0 for v in bits(m))

    def induced(self, subset) -> tuple["Graph", list[int]]:
        """Induced subgraph on `subset` (mask or iterable), relabeled 0..s-1.

        Returns the subgraph and the list mapping new ids to old ids.
        """
        m = subset if isinstance(subset, int) else mask_of(subset)
        old_ids = list(bits(m))
        pos = {v: i for i, v in enumerate(old_ids)}
        edges = []
        for v in old_ids:
            for w in bits(self.adj[v] & m):
                if w > v:
                    edges.append((pos[v], pos[w]))
        return Graph(len(old_ids), edges), old_ids

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, tuple(self.adj)))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges()})"

    # -- serialization ----------------------------------------------------

    def to_edge_list(self) -> str:
        lines = [f"# n = {self.n}"]
        lines += [f"{u} {v}" for u, v in self.edges()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edge_list(cls, text: str) -> "Graph":
        declared_n = None
        edges = []
        max_id = -1
        for raw in text.splitlines():
            header = re.match(r"\s*#\s*n\s*=\s*(\d+)", raw)
            if header:
                declared_n = int(header.group(1))
                continue
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"bad edge line: {raw!r}")
            u, v = int(parts[0]), int(parts[1])
            edges.append((u, v))
            max_id = max(max_id, u, v)
        n = declared_n if declared_n is not None else max_id + 1
        return cls(n, edges)

    @classmethod
    def from_dimacs(cls, text: str) -> "Graph":
        """DIMACS .col format: 'p edge n m' header, 'e u v' lines (1-indexed)."""
        n = None
        edges = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            parts = line.split()
            if parts[0] == "p":
                if len(parts) < 4 or parts[1] not in ("edge", "edges", "col"):
                    raise ValueError(f"bad problem line: {raw!r}")
                n = int(parts[2])
            elif parts[0] == "e":
                u, v = int(parts[1]), int(parts[2])
                edges.append((u - 1, v - 1))
        if n is None:
            raise ValueError("missing 'p edge' line")
        return cls(n, edges)

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [[u, v] for u, v in self.edges()]}

    @classmethod
    def from_dict(cls, obj: dict) -> "Graph":
        return cls(int(obj["n"]), [tuple(e) for e in obj["edges"]])


def load_graph(path: str, fmt: str = "auto") -> Graph:
    with open(path) as fh:
        text = fh.read()
    if fmt == "auto":
        lower = path.lower()
        if lower.endswith(".col") or lower.endswith(".dimacs"):
            fmt = "dimacs"
        elif lower.endswith(".json"):
            fmt = "json"
        else:
            fmt = "edgelist"
    if fmt == "edgelist":
        return Graph.from_edge_list(text)
    if fmt == "dimacs":
        return Graph.from_dimacs(text)
    if fmt == "json":
        return Graph.from_dict(json.loads(text))
    raise ValueError(f"unknown graph format: {fmt}")


def save_graph(g: Graph, path: str, fmt: str = "edgelist") -> None:
    if fmt == "edgelist":
        text = g.to_edge_list()
    elif fmt == "json":
        text = json.dumps(g.to_dict()) + "\n"
    else:
        raise ValueError(f"unknown graph format: {fmt}")
    with open(path, "w") as fh:
        fh.write(text)


# -- clique counting ------------------------------------------------------

def count_cliques_in_adj(adj: Sequence[int], subset: int, r: int) -> int:
    """Number of r-subsets of `subset` that are pairwise adjacent in `adj`."""
    if r < 1:
        raise PreconditionError(f"clique order must be >= 1, got {r}")

    def rec(cand: int, need: int) -> int:
        if need == 1:
            return cand.bit_count()
        if cand.bit_count() < need:
            return 0
        total = 0
        m = cand
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            total += rec(m & adj[v], need - 1)
        return total

    return rec(subset, r)


def count_cliques(g: Graph, subset, r: int) -> int:
    """Exact count of r-vertex cliques inside `subset` (mask or iterable)."""
    m = subset if isinstance(subset, int) else mask_of(subset)
    return count_cliques_in_adj(g.adj, m, r)


# -- local sparsity certification ------------------------------------------

def per_vertex(value, n: int, cast=float) -> list:
    """Broadcast a scalar / dict / sequence / callable to a per-vertex list."""
    if callable(value):
        return [cast(value(v)) for v in range(n)]
    if isinstance(value, dict):
        return [cast(value[v]) for v in range(n)]
    if isinstance(value, (list, tuple)):
        if len(value) != n:
            raise ValueError(f"per-vertex sequence has length {len(value)}, want {n}")
        return [cast(x) for x in value]
    return [cast(value)] * n


@dataclass
class SparsityCertificate:
    """Per-vertex clique counts witnessing (or refuting) local sparsity."""

    r_map: list[int]
    k_map: list[float]
    counts: list[int]
    violations: list[dict] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "violations": self.violations}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def certify_local_sparsity(g: Graph, k_map, r_map) -> SparsityCertificate:
    """Check that every neighborhood G[N(v)] holds at most floor(k(v))
    cliques of size r(v)."""
    ks = per_vertex(k_map, g.n, float)
    rs = per_vertex(r_map, g.n, int)
    for v, r in enumerate(rs):
        if r < 2:
            raise PreconditionError(f"clique order at vertex {v} must be >= 2, got {r}")
    counts = []
    violations = []
    for v in range(g.n):
        c = count_cliques_in_adj(g.adj, g.adj[v], rs[v])
        counts.append(c)
        k_floor = math.floor(ks[v])
        if c > k_floor:
            violations.append({"v": v, "count": c, "k_floor": k_floor})
    return SparsityCertificate(rs, ks, counts, violations)


# -- subgraph copies and automorphisms --------------------------------------

def _search_order(f: Graph) -> list[int]:
    # most-connected-to-placed first; seeds from the highest-degree vertex
    order: list[int] = []
    placed: set[int] = set()
    for _ in range(f.n):
        best = max(
            (v for v in range(f.n) if v not in placed),
            key=lambda v: (sum(1 for u in bits(f.adj[v]) if u in placed),
                           f.adj[v].bit_count(), -v),
        )
        order.append(best)
        placed.add(best)
    return order


def _injective_edge_maps(g: Graph, f: Graph) -> int:
    """Count injective maps V(f) -> V(g) sending every edge of f to an edge of g."""
    if f.n == 0:
        return 1
    if f.n > g.n:
        return 0
    order = _search_order(f)
    fdeg = [f.adj[v].bit_count() for v in range(f.n)]
    image = [-1] * f.n
    gn_mask = g.full_mask
    count = 0

    def place(i: int, used: int) -> None:
        nonlocal count
        if i == len(order):
            count += 1
            return
        x = order[i]
        cand = None
        for y in bits(f.adj[x]):
            if image[y] >= 0:
                row = g.adj[image[y]]
                cand = row if cand is None else cand & row
        if cand is None:
            cand = gn_mask
        cand &= ~used
        for u in bits(cand):
            if g.adj[u].bit_count() >= fdeg[x]:
                image[x] = u
                place(i + 1, used | (1 << u))
        image[x] = -1

    place(0, 0)
    return count


def automorphism_count(f: Graph) -> int:
    """Size of the automorphism group, by pruned permutation search."""
    if f.n > MAX_PATTERN_VERTICES:
        raise PreconditionError(
            f"pattern too large for automorphism search: {f.n} > {MAX_PATTERN_VERTICES}")
    # an edge-preserving bijection of a finite graph preserves non-edges too
    return _injective_edge_maps(f, f)


def count_subgraph_copies(g: Graph, pattern: Graph) -> int:
    """Subgraphs of g isomorphic to `pattern` (not necessarily induced),
    counted as distinct (vertex set, edge set) pairs."""
    if pattern.n > MAX_PATTERN_VERTICES:
        raise PreconditionError(
            f"pattern too large: {pattern.n} > {MAX_PATTERN_VERTICES}")
    maps = _injective_edge_maps(g, pattern)
    aut = automorphism_count(pattern)
    assert maps % aut == 0
    return maps // aut


def clique_budget_from_pattern(k: float, pattern: Graph) -> float:
    """Clique budget ceil(k)*|Aut(pattern)|/r! certifying that a graph with at
    most k pattern copies per neighborhood has that many r-cliques per
    neighborhood (r = pattern order)."""
    if k < 0:
        raise PreconditionError(f"budget must be nonnegative, got {k}")
    r = pattern.n
    return math.ceil(k) * automorphism_count(pattern) / math.factorial(r)
