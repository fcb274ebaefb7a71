"""Constructive independent-set algorithms and the exact clique-sparsity
inequalities, plus asymptotic reference calculators.

The constructive core is `sparse_independent_set`: the inductive proof of the
bound alpha >= (1/r) * (n / k^(1/r))^(1/(r-1)) for graphs with at most k
r-cliques is replayed as an algorithm.  The base case is the min-degree greedy
achieving the average-degree bound; the inductive case descends into the
neighborhood of a high-degree vertex that lies in few r-cliques.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

from .errors import InternalCheckError, PreconditionError
from .graph import Graph, bits, count_cliques, count_cliques_in_adj

GUARANTEE_SLACK = 1e-9


def guarantee_ceiling(value: float) -> int:
    """Integer demand from a real-valued guarantee; float ties resolve in the
    construction's favor."""
    return max(0, math.ceil(value - GUARANTEE_SLACK))


@dataclass
class IndependentSetWitness:
    vertices: tuple[int, ...]
    guarantee: float
    trace: list[dict] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.vertices)

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "vertices": list(self.vertices),
            "guarantee": self.guarantee,
            "trace": self.trace,
        }


def _assert_independent(g: Graph, vertices) -> None:
    if not g.is_independent(vertices):
        raise InternalCheckError("constructed set is not independent")


def greedy_independent_set(g: Graph) -> IndependentSetWitness:
    """Min-degree greedy: repeatedly take a minimum-degree vertex and delete
    its closed neighborhood.  Output size >= ceil(n / (1 + avg degree)),
    checked with exact integer arithmetic (n^2 / (n + 2m))."""
    n = g.n
    chosen: list[int] = []
    trace: list[dict] = []
    remaining = g.full_mask
    while remaining:
        v = min(bits(remaining), key=lambda u: ((g.adj[u] & remaining).bit_count(), u))
        trace.append({"pick": v, "residual_degree": (g.adj[v] & remaining).bit_count()})
        chosen.append(v)
        remaining &= ~(g.adj[v] | (1 << v))
    guarantee = n / (1.0 + g.avg_degree()) if n else 0.0
    witness = IndependentSetWitness(tuple(sorted(chosen)), guarantee, trace)
    _assert_independent(g, witness.vertices)
    if n:
        demand = -(-n * n // (n + 2 * g.num_edges()))
        if witness.size < demand:
            raise InternalCheckError(
                f"greedy found {witness.size} < guaranteed {demand}")
    return witness


def _heavy_descent(g: Graph, k: float, r: int, depth: int,
                   trace: list[dict]) -> list[int]:
    """One level of the inductive construction; returns vertex ids of g."""
    n = g.n
    # a graph never holds more than C(n, r) r-cliques, so the budget may be
    # clamped; the guarantee only improves
    k_cap = float(math.comb(n, r))
    k_eff = min(k, k_cap)

    if r == 2:
        w = greedy_independent_set(g)
        trace.append({"depth": depth, "case": "greedy_base", "n": n, "k": k_eff})
        return list(w.vertices)

    shape = ((r - 1) / r) ** (r - 2 - 1 / (r - 1))
    deg_threshold = shape * n ** ((r - 2) / (r - 1)) * k_eff ** (1 / (r * (r - 1)))
    heavy = [v for v in range(n) if g.degree(v) >= deg_threshold]

    if len(heavy) >= (r - 1) * k_eff ** (1 / r):
        # cliques of size r through v == (r-1)-cliques in G[N(v)]; scanning for
        # the minimum guarantees the averaging bound sum n_v <= r*k
        best_v = min(heavy, key=lambda v: (count_cliques_in_adj(g.adj, g.adj[v], r - 1), v))
        best_cnt = count_cliques_in_adj(g.adj, g.adj[best_v], r - 1)
        if best_cnt * len(heavy) > r * k_eff * (1 + 1e-12):
            raise InternalCheckError("averaging bound failed over heavy vertices")
        child_budget = r * k_eff ** (1 - 1 / r) / (r - 1)
        if child_budget < 1:
            raise InternalCheckError(f"child budget below 1: {child_budget}")
        child_n = g.degree(best_v)
        child_floor = (r - 1) ** (2 * (r - 1))
        if child_n < child_floor:
            raise InternalCheckError(
                f"child instance too small: {child_n} < {child_floor}")
        sub, old_ids = g.induced(g.adj[best_v])
        # defensive recount of the child certificate
        if count_cliques(sub, sub.full_mask, r - 1) > math.floor(child_budget):
            raise InternalCheckError("child neighborhood exceeds its clique budget")
        trace.append({
            "depth": depth, "case": "descend", "n": n, "k": k_eff,
            "degree_threshold": deg_threshold, "heavy_count": len(heavy),
            "vertex": best_v, "cliques_through_vertex": best_cnt,
            "child_budget": child_budget,
        })
        inner = _heavy_descent(sub, child_budget, r - 1, depth + 1, trace)
        return [old_ids[i] for i in inner]

    trace.append({
        "depth": depth, "case": "greedy_sparse", "n": n, "k": k_eff,
        "degree_threshold": deg_threshold, "heavy_count": len(heavy),
    })
    return list(greedy_independent_set(g).vertices)


def sparse_independent_set(g: Graph, k: float, r: int) -> IndependentSetWitness:
    """Independent set of size >= ceil((1/r) * (n / k^(1/r))^(1/(r-1))) in a
    graph with at most floor(k) cliques of size r.

    Preconditions: integer r >= 2, k >= 1, n >= r^(2r), and the clique count
    is verified before descending.
    """
    if int(r) != r or r < 2:
        raise PreconditionError(f"r must be an integer >= 2, got {r}")
    r = int(r)
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")
    n = g.n
    size_floor = r ** (2 * r)
    if n < size_floor:
        raise PreconditionError(f"n >= r^(2r) required: {n} < {size_floor}")
    total = count_cliques(g, g.full_mask, r)
    if total > math.floor(k):
        raise PreconditionError(
            f"graph is not ({k}, {r})-sparse: {total} cliques > floor(k) = {math.floor(k)}")

    trace: list[dict] = []
    vertices = _heavy_descent(g, float(k), r, 0, trace)
    guarantee = (n / k ** (1 / r)) ** (1 / (r - 1)) / r
    witness = IndependentSetWitness(tuple(sorted(vertices)), guarantee, trace)
    _assert_independent(g, witness.vertices)
    if witness.size < guarantee_ceiling(guarantee):
        raise InternalCheckError(
            f"witness size {witness.size} below guarantee {guarantee}")
    return witness


# -- exact partition-function inequality ---------------------------------------

def log_partition_lower_bound(n: int, k: float, r: int, lam: float,
                              iset_size: int) -> float:
    """Lower bound on log Z(lam) for a graph with at most k r-cliques:
    a * (log(n*lam) - log(k)/r - (r-1)*log(r*a)) for any integer a >= 1."""
    if r < 3:
        raise PreconditionError(f"r must be >= 3, got {r}")
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")
    if n < r ** (2 * r):
        raise PreconditionError(f"n >= r^(2r) required: {n} < {r ** (2 * r)}")
    if iset_size < 1 or int(iset_size) != iset_size:
        raise PreconditionError(f"independent-set size must be a positive integer")
    if lam <= 0:
        raise PreconditionError(f"fugacity must be positive, got {lam}")
    a = int(iset_size)
    return a * (math.log(n * lam) - math.log(k) / r - (r - 1) * math.log(r * a))


def balanced_iset_size(n: int, k: float, r: int, lam: float) -> float:
    """The real-valued size choice (1/(r*e^(r/(r-1)))) * (n*lam/k^(1/r))^(1/(r-1))
    that turns the log-partition bound into z >= r * size."""
    return (n * lam / k ** (1 / r)) ** (1 / (r - 1)) / (r * math.e ** (r / (r - 1)))


def occupancy_ratio_reference(log_z: float, k: float, r: int) -> float:
    """Idealized large-n reference for lam*Z'/Z in terms of z = log Z:
    z / ((r-2) * log(omega*z)) with omega = e^(r/(r-2)) * k^(1/(r(r-2))).

    Reporting-only: the concentration factor that tends to 1 is dropped, so
    this is not a certified bound at finite n."""
    if r < 3:
        raise PreconditionError(f"r must be >= 3, got {r}")
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")
    omega = math.e ** (r / (r - 2)) * k ** (1 / (r * (r - 2)))
    if omega * log_z <= 1:
        raise PreconditionError(
            f"omega*z must exceed 1 for the log to be positive, got {omega * log_z}")
    return log_z / ((r - 2) * math.log(omega * log_z))


# -- asymptotic calculators ------------------------------------------------------

@dataclass(frozen=True)
class BoundParameters:
    """Degree scale with sparsity exponent; .scale is eps + r*loglog/log of
    the degree, the factor the asymptotic bounds are phrased in."""

    degree: float
    eps: float
    r: int

    def __post_init__(self):
        if self.degree <= math.e:
            raise PreconditionError(
                f"degree scale must exceed e, got {self.degree}")
        if not 0.0 <= self.eps <= 1.0:
            raise PreconditionError(f"eps must be in [0,1], got {self.eps}")
        if self.r < 3:
            raise PreconditionError(f"r must be >= 3, got {self.r}")
        if self.r > math.log(math.log(self.degree)):
            warnings.warn(
                f"r = {self.r} exceeds loglog(degree) = "
                f"{math.log(math.log(self.degree)):.3f}; the asymptotic bounds "
                "are outside their intended range", stacklevel=2)

    @property
    def scale(self) -> float:
        d = self.degree
        return self.eps + self.r * math.log(math.log(d)) / math.log(d)


ASYMPTOTIC_KINDS = ("iset_max_deg", "iset_avg_deg", "chi_c")


def reference_output(kind: str, value: float) -> dict:
    """Wire shape for reference values: always flagged as asymptotic, never a
    certified bound at finite size."""
    return {"kind": kind, "value": value, "asymptotic_reference": True}


def asymptotic_bound(kind: str, params: BoundParameters, n: int) -> float:
    """Reference values of the large-degree bounds with the vanishing factor
    dropped; never asserted, only reported."""
    if kind == "iset_max_deg":
        return n / (params.scale * params.degree)
    if kind == "iset_avg_deg":
        return n / (9 * params.scale * params.degree)
    if kind == "chi_c":
        if params.eps >= 1.0:
            raise PreconditionError("chi_c bound needs eps < 1")
        ratio = (1 + params.eps) / (1 - params.eps)
        return params.scale * params.degree * min(2.0, ratio)
    raise PreconditionError(f"unknown bound kind: {kind}")


# -- average-degree to max-degree reduction ---------------------------------------

def average_degree_reduction(g: Graph, k: float, r: int, eps: float):
    """Keep the vertices of degree <= 3d whose neighborhoods hold at most
    floor(3*d^(eps*r)) r-cliques; at least n/3 vertices survive.

    Requires the graph to carry at most floor(k) cliques of size r+1 with
    k <= n * d^(eps*r) / (r+1)."""
    n = g.n
    if n < 1:
        raise PreconditionError("reduction needs n >= 1")
    d = g.avg_degree()
    k_limit = n * d ** (eps * r) / (r + 1)
    if k > k_limit * (1 + 1e-9):
        raise PreconditionError(
            f"k = {k} exceeds n*d^(eps*r)/(r+1) = {k_limit}")
    total = count_cliques(g, g.full_mask, r + 1)
    if total > math.floor(k):
        raise PreconditionError(
            f"graph is not ({k}, {r + 1})-sparse: {total} cliques of size {r + 1}")

    neighborhood_budget = math.floor(3 * d ** (eps * r))
    low_degree = [v for v in range(n) if g.degree(v) <= 3 * d]
    sparse_nbhd = [v for v in range(n)
                   if count_cliques_in_adj(g.adj, g.adj[v], r) <= neighborhood_budget]
    core = sorted(set(low_degree) & set(sparse_nbhd))
    demand = (n + 2) // 3
    if len(core) < demand:
        raise InternalCheckError(
            f"core has {len(core)} vertices, counting argument promises {demand}")
    sub, old_ids = g.induced(core)
    report = {
        "n": n,
        "avg_degree": d,
        "low_degree_count": len(low_degree),
        "sparse_neighborhood_count": len(sparse_nbhd),
        "core_count": len(core),
        "core_demand": demand,
        "core_vertices": old_ids,
        "neighborhood_budget": neighborhood_budget,
    }
    return sub, report
