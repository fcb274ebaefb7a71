"""Correspondence covers, exact and heuristic cover coloring, and the
hypothesis checkers for the two coloring frameworks.

A cover gives each vertex its own list of globally-unique color ids and each
edge a matching between the endpoint lists; a proper coloring picks one color
per list avoiding every matched pair.  The condition checkers verify theorem
hypotheses only — they never claim a coloring exists.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .graph import Graph, bits, per_vertex
from .hardcore import eval_poly, mask_polynomial
from .occupancy import OccupancyCertificate

SOLVE_MAX_N = 30
SOLVE_MAX_FOLD = 8
ALPHA_MIN_DEGREE_GUARD = 18
C3_EXACT_LIMIT = 1000


# -- covers -------------------------------------------------------------------

@dataclass
class CorrespondenceCover:
    """lists: v -> ordered tuple of color ids (globally unique across vertices);
    matchings: (u, v) with u < v -> tuple of (color in L(u), color in L(v))."""

    lists: dict[int, tuple[int, ...]]
    matchings: dict[tuple[int, int], tuple[tuple[int, int], ...]]

    def validate(self, g: Graph) -> None:
        owner: dict[int, int] = {}
        for v, colors in self.lists.items():
            if not 0 <= v < g.n:
                raise PreconditionError(f"list for unknown vertex {v}")
            for c in colors:
                if c in owner:
                    raise PreconditionError(
                        f"color {c} appears in lists of {owner[c]} and {v}")
                owner[c] = v
        if set(self.lists) != set(range(g.n)):
            raise PreconditionError("every vertex needs a color list")
        for (u, v), pairs in self.matchings.items():
            if u >= v:
                raise PreconditionError(f"matching key ({u}, {v}) not normalized")
            if not g.has_edge(u, v):
                raise PreconditionError(f"matching on non-edge ({u}, {v})")
            seen_u: set[int] = set()
            seen_v: set[int] = set()
            for cu, cv in pairs:
                if owner.get(cu) != u or owner.get(cv) != v:
                    raise PreconditionError(
                        f"pair ({cu}, {cv}) on edge ({u}, {v}) uses foreign colors")
                if cu in seen_u or cv in seen_v:
                    raise PreconditionError(
                        f"edge ({u}, {v}) pairs do not form a matching")
                seen_u.add(cu)
                seen_v.add(cv)

    @property
    def fold_size(self) -> int:
        return min((len(c) for c in self.lists.values()), default=0)

    def pair_maps(self) -> dict[tuple[int, int], dict[int, int]]:
        """Directed lookup: (u, v) -> {color of u: matched color of v}."""
        out: dict[tuple[int, int], dict[int, int]] = {}
        for (u, v), pairs in self.matchings.items():
            out[(u, v)] = {cu: cv for cu, cv in pairs}
            out[(v, u)] = {cv: cu for cu, cv in pairs}
        return out

    def to_dict(self) -> dict:
        return {
            "lists": {str(v): list(c) for v, c in sorted(self.lists.items())},
            "matchings": [
                {"u": u, "v": v, "pairs": [list(p) for p in pairs]}
                for (u, v), pairs in sorted(self.matchings.items())
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, obj: dict) -> "CorrespondenceCover":
        lists = {int(v): tuple(c) for v, c in obj["lists"].items()}
        matchings = {
            (m["u"], m["v"]): tuple((p[0], p[1]) for p in m["pairs"])
            for m in obj["matchings"]
        }
        return cls(lists, matchings)


def cover_from_lists(g: Graph, lists: dict[int, list[int]]) -> CorrespondenceCover:
    """Identity correspondences: a shared list color is matched with itself on
    every edge; colorings of the result biject with list colorings."""
    global_lists: dict[int, tuple[int, ...]] = {}
    global_id: dict[tuple[int, int], int] = {}
    nxt = 0
    for v in range(g.n):
        colors = list(lists[v])
        ids = []
        for c in colors:
            global_id[(v, c)] = nxt
            ids.append(nxt)
            nxt += 1
        global_lists[v] = tuple(ids)
    matchings = {}
    for u, v in g.edges():
        shared = set(lists[u]) & set(lists[v])
        matchings[(u, v)] = tuple(
            (global_id[(u, c)], global_id[(v, c)]) for c in sorted(shared))
    cover = CorrespondenceCover(global_lists, matchings)
    cover.validate(g)
    return cover


def random_cover(g: Graph, q: int, seed: int, twist: str = "full",
                 p: float = 1.0) -> CorrespondenceCover:
    """Uniformly random perfect matching between the q-lists of each edge
    (twist="full"); with twist="partial" each pair is kept with probability p."""
    if q < 1:
        raise PreconditionError(f"fold size must be >= 1, got {q}")
    if twist not in ("full", "partial"):
        raise PreconditionError(f"twist must be full|partial, got {twist!r}")
    rng = random.Random(seed)
    lists = {v: tuple(v * q + i for i in range(q)) for v in range(g.n)}
    matchings = {}
    for u, v in g.edges():
        perm = list(range(q))
        rng.shuffle(perm)
        pairs = [(u * q + i, v * q + perm[i]) for i in range(q)]
        if twist == "partial":
            pairs = [pair for pair in pairs if rng.random() < p]
        matchings[(u, v)] = tuple(pairs)
    cover = CorrespondenceCover(lists, matchings)
    cover.validate(g)
    return cover


def is_list_like(cover: CorrespondenceCover) -> bool:
    """A cover arises from a list assignment iff identifying matched colors
    globally never merges two colors of one vertex's list (union-find)."""
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for pairs in cover.matchings.values():
        for a, b in pairs:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    for colors in cover.lists.values():
        roots = [find(c) for c in colors]
        if len(set(roots)) != len(roots):
            return False
    return True


# -- coloring ------------------------------------------------------------------

def validate_assignment(g: Graph, cover: CorrespondenceCover,
                        phi: dict[int, int]) -> None:
    """Raise unless phi picks a color from each list and avoids every matched
    pair across every edge."""
    for v in range(g.n):
        if v not in phi:
            raise PreconditionError(f"vertex {v} is uncolored")
        if phi[v] not in cover.lists[v]:
            raise PreconditionError(f"color {phi[v]} not in list of vertex {v}")
    maps = cover.pair_maps()
    for u, v in g.edges():
        fwd = maps.get((u, v), {})
        if fwd.get(phi[u]) == phi[v]:
            raise PreconditionError(
                f"edge ({u}, {v}) joins matched colors ({phi[u]}, {phi[v]})")


def solve_exact(g: Graph, cover: CorrespondenceCover):
    """Backtracking with forward checking; returns a validated assignment or
    None for a correct (exhaustive) UNSAT verdict."""
    cover.validate(g)
    if g.n > SOLVE_MAX_N:
        raise PreconditionError(f"exact solver limited to n <= {SOLVE_MAX_N}")
    if any(len(c) > SOLVE_MAX_FOLD for c in cover.lists.values()):
        raise PreconditionError(f"exact solver limited to fold <= {SOLVE_MAX_FOLD}")
    if any(len(c) == 0 for c in cover.lists.values()):
        return None
    maps = cover.pair_maps()
    avail: dict[int, list[int]] = {v: list(cover.lists[v]) for v in range(g.n)}
    phi: dict[int, int] = {}

    def choose() -> int:
        return min((v for v in range(g.n) if v not in phi),
                   key=lambda v: (len(avail[v]), v))

    def assign(v: int, c: int) -> list[tuple[int, int]] | None:
        removed = []
        for u in g.neighbors(v):
            if u in phi:
                continue
            blocked = maps.get((v, u), {}).get(c)
            if blocked is not None and blocked in avail[u]:
                avail[u].remove(blocked)
                removed.append((u, blocked))
                if not avail[u]:
                    for w, col in removed:
                        avail[w].append(col)
                    return None
        return removed

    def search() -> bool:
        if len(phi) == g.n:
            return True
        v = choose()
        for c in list(avail[v]):
            phi[v] = c
            removed = assign(v, c)
            if removed is not None:
                if search():
                    return True
                for w, col in removed:
                    avail[w].append(col)
            del phi[v]
        return False

    if search():
        validate_assignment(g, cover, phi)
        return dict(phi)
    return None


def heuristic_color(g: Graph, cover: CorrespondenceCover, seed: int,
                    max_iters: int = 10**5):
    """Random greedy with conflict-driven recoloring; a returned assignment is
    validated proper, a give-up is NOT an unsatisfiability claim.

    Returns (assignment or None, info dict)."""
    cover.validate(g)
    if any(len(c) == 0 for c in cover.lists.values()):
        return None, {"status": "give_up", "iters": 0}
    rng = random.Random(seed)
    maps = cover.pair_maps()

    def conflicts(phi, v, c) -> int:
        return sum(1 for u in g.neighbors(v)
                   if u in phi and maps.get((v, u), {}).get(c) == phi[u])

    def greedy_start():
        phi = {}
        order = list(range(g.n))
        rng.shuffle(order)
        for v in order:
            best = min(cover.lists[v],
                       key=lambda c: (conflicts(phi, v, c), rng.random()))
            phi[v] = best
        return phi

    def conflicted(phi):
        bad = []
        for u, v in g.edges():
            if maps.get((u, v), {}).get(phi[u]) == phi[v]:
                bad += [u, v]
        return bad

    iters = 0
    while iters <= max_iters:
        phi = greedy_start()
        stall = 0
        while iters <= max_iters:
            bad = conflicted(phi)
            if not bad:
                validate_assignment(g, cover, phi)
                return phi, {"status": "colored", "iters": iters}
            v = rng.choice(bad)
            cur = conflicts(phi, v, phi[v])
            best = min(cover.lists[v],
                       key=lambda c: (conflicts(phi, v, c), rng.random()))
            if conflicts(phi, v, best) >= cur:
                stall += 1
            else:
                stall = 0
            phi[v] = best
            iters += 1
            if stall > 50 * max(g.n, 1):
                break
    return None, {"status": "give_up", "iters": iters}


# -- hypothesis checkers ----------------------------------------------------------

def dkps_default_ell(k_max: float, r_max: int, max_degree: int, lam: float) -> float:
    """Subgraph-size scale making the partition-function condition analytic:
    k^(1/r) * e^r * log(8*Delta^4)^(r-1) / lam."""
    return (k_max ** (1 / r_max) * math.e ** r_max
            * math.log(8 * max_degree ** 4) ** (r_max - 1) / lam)


def dkps_condition_check(g: Graph, cover: CorrespondenceCover,
                         cert: OccupancyCertificate, ell: float) -> dict:
    """Hypothesis report for the occupancy-driven coloring framework:
      (a) per-vertex list sizes against beta_u, gamma_u, and ell,
      (b) Z_F(lam) >= 8*Delta^4 for every induced F in a neighborhood with
          at least ell/8 vertices,
      (c) cover structure (list-like covers need only induced-mode occupancy,
          others need strong mode).
    Verifies hypotheses only; produces no coloring."""
    cover.validate(g)
    delta = g.max_degree()
    if delta > 22:
        raise PreconditionError(
            f"exhaustive Z_F checks guarded at degree 22, got {delta}")
    log_delta = math.log(delta) if delta >= 2 else 0.0
    min_size = math.ceil(ell / 8)
    zf_floor = 8 * delta ** 4

    list_like = is_list_like(cover)
    mode_ok = list_like or cert.mode == "strong"
    ell_above_log = ell > log_delta
    denom_arg = 7 * log_delta / ell if ell > 0 else math.inf
    denominator_ok = denom_arg < 1

    per_vertex_report = {}
    zf_witness = None
    poly_memo: dict[int, tuple[int, ...]] = {}
    lam_exact = Fraction(cert.lam)
    for u in range(g.n):
        if denominator_ok:
            need = (cert.beta[u] * (cert.lam / (1 + cert.lam))
                    * ell / (1 - math.sqrt(denom_arg))
                    + cert.gamma[u] * g.degree(u))
            list_ok = len(cover.lists[u]) >= need
        else:
            need = math.inf
            list_ok = False
        zf_ok = True
        nb = g.adj[u]
        if nb.bit_count() >= min_size:
            for smask in _submasks_of(nb):
                if smask.bit_count() < min_size:
                    continue
                coeffs = mask_polynomial(g.adj, smask, poly_memo)
                if eval_poly(coeffs, lam_exact) < zf_floor:
                    zf_ok = False
                    if zf_witness is None:
                        zf_witness = {"u": u, "vertices": list(bits(smask))}
                    break
        per_vertex_report[u] = {
            "list_size": len(cover.lists[u]),
            "list_size_needed": need,
            "list_size_ok": list_ok,
            "zf_ok": zf_ok,
        }

    all_lists = all(r["list_size_ok"] for r in per_vertex_report.values())
    all_zf = all(r["zf_ok"] for r in per_vertex_report.values())
    overall = all_lists and all_zf and mode_ok and ell_above_log and denominator_ok
    return {
        "theorem": "dkps",
        "hypotheses_verified": overall,
        "produces_coloring": False,
        "conditions": {
            "max_degree_at_least_64": delta >= 64,  # flagged, not gating
            "ell_above_log_degree": ell_above_log,
            "ell_denominator_ok": denominator_ok,
            "cover_list_like": list_like,
            "occupancy_mode_ok": mode_ok,
            "all_list_sizes_ok": all_lists,
            "all_partition_floors_ok": all_zf,
        },
        "ell": ell,
        "zf_floor": zf_floor,
        "zf_witness": zf_witness,
        "per_vertex": per_vertex_report,
    }


def _submasks_of(mask: int):
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


def _median_from_coeffs(coeffs) -> int:
    total = sum(coeffs)
    tail = 0
    for ell in range(len(coeffs) - 1, 0, -1):
        tail += coeffs[ell]
        if 2 * tail >= total:
            return ell
    return 0


def min_median_independence(g: Graph, v: int, t: int):
    """Minimum median independence number over subsets S of N(v) whose induced
    subgraph has at least t independent sets; math.inf if none qualifies."""
    deg = g.degree(v)
    if deg > ALPHA_MIN_DEGREE_GUARD:
        raise PreconditionError(
            f"degree {deg} exceeds the exhaustive guard {ALPHA_MIN_DEGREE_GUARD}")
    best = math.inf
    poly_memo: dict[int, tuple[int, ...]] = {}
    for smask in _submasks_of(g.adj[v]):
        coeffs = mask_polynomial(g.adj, smask, poly_memo)
        if sum(coeffs) >= t:
            best = min(best, _median_from_coeffs(coeffs))
    return best


def median_independence_lower_bound(n_sub: int, k: float, r: int, total_isets: int) -> float:
    """log(i) / (2r * log(r * k^(1/(r(r-1))) * log(i))) for a graph with at
    most k r-cliques; i = number of independent sets."""
    if r < 2:
        raise PreconditionError(f"r must be >= 2, got {r}")
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")
    if n_sub < r ** (2 * r):
        raise PreconditionError(f"n >= r^(2r) required: {n_sub} < {r ** (2 * r)}")
    if total_isets < 2:
        raise PreconditionError(f"need at least 2 independent sets, got {total_isets}")
    from .hardcore import log_big
    log_i = log_big(int(total_isets))
    return log_i / (2 * r * math.log(r * k ** (1 / (r * (r - 1))) * log_i))


def bknp_condition_values(deg: float, ell: float, t: float, eps: float,
                          max_degree: int) -> dict:
    """Pure arithmetic for the three block conditions at one vertex:
      C1: eps*(1-eps)*ell*t >= 18*log(Delta) + 6*log(16)
      C2: ell >= 36*log(Delta) + 12*log(16)
      C3: binom(deg, ell)/ell! < Delta^-3 / 8
    C3 uses exact big integers when ell is integral and small, and the
    continuous lgamma extension otherwise."""
    log_delta = math.log(max_degree)
    c1 = eps * (1 - eps) * ell * t >= 18 * log_delta + 6 * math.log(16)
    c2 = ell >= 36 * log_delta + 12 * math.log(16)
    if ell > deg:
        c3 = True  # binomial is zero
    elif float(ell).is_integer() and float(deg).is_integer() and deg <= C3_EXACT_LIMIT:
        il, ideg = int(ell), int(deg)
        c3 = 8 * max_degree ** 3 * math.comb(ideg, il) < math.factorial(il)
    else:
        log_lhs = (math.lgamma(deg + 1) - math.lgamma(ell + 1)
                   - math.lgamma(deg - ell + 1) - math.lgamma(ell + 1))
        c3 = log_lhs < -3 * log_delta - math.log(8)
    return {"c1": c1, "c2": c2, "c3": c3}


def bknp_default_maps(g: Graph, gamma_exp: float = 0.01):
    """Block-size choices ell = deg^(1/2 + gamma), t = deg^(1/2 - 2*gamma)."""
    ell = {v: g.degree(v) ** (0.5 + gamma_exp) for v in range(g.n)}
    t = {v: g.degree(v) ** (0.5 - 2 * gamma_exp) for v in range(g.n)}
    return ell, t


def bknp_condition_check(g: Graph, cover: CorrespondenceCover, eps: float,
                         ell_map, t_map, alpha_min_map=None) -> dict:
    """Hypothesis report for the median-independence coloring framework:
    per-vertex C1/C2/C3 plus the list-size floor
        max(2*deg/((1-eps)^2 * alpha_min), 2*t*ell/eps).
    Verifies hypotheses only; produces no coloring."""
    cover.validate(g)
    if not 0.0 < eps < 0.5:
        raise PreconditionError(f"eps must be in (0, 1/2), got {eps}")
    delta = g.max_degree()
    if delta < 2:
        raise PreconditionError("checker needs max degree >= 2 for log(Delta)")
    ells = per_vertex(ell_map, g.n, float)
    ts = per_vertex(t_map, g.n, float)
    report = {}
    for v in range(g.n):
        conds = bknp_condition_values(g.degree(v), ells[v], ts[v], eps, delta)
        if alpha_min_map is not None:
            a_min = alpha_min_map[v]
        else:
            a_min = min_median_independence(g, v, math.ceil(ts[v]))
        if a_min == math.inf:
            degree_term = 0.0
        else:
            degree_term = 2 * g.degree(v) / ((1 - eps) ** 2 * a_min)
        need = max(degree_term, 2 * ts[v] * ells[v] / eps)
        conds.update({
            "alpha_min": a_min if a_min != math.inf else None,
            "list_size": len(cover.lists[v]),
            "list_size_needed": need,
            "list_size_ok": len(cover.lists[v]) >= need,
        })
        report[v] = conds
    overall = all(r["c1"] and r["c2"] and r["c3"] and r["list_size_ok"]
                  for r in report.values())
    return {
        "theorem": "bknp",
        "hypotheses_verified": overall,
        "produces_coloring": False,
        "eps": eps,
        "per_vertex": report,
    }


# -- list-size thresholds -----------------------------------------------------------

def list_size_threshold(kind: str, deg: float, eps: float, r: int, mu: float) -> float:
    """Asymptotic reference list sizes; "dkps" carries the min{2, (1+e)/(1-e)}
    shape with a 1+mu factor, "bknp" the relaxed 30+mu factor."""
    if deg <= math.e:
        raise PreconditionError(f"degree must exceed e, got {deg}")
    scale = eps + r * math.log(math.log(deg)) / math.log(deg)
    if kind == "dkps":
        if eps >= 1.0:
            raise PreconditionError("dkps threshold needs eps < 1")
        return (1 + mu) * min(2.0, (1 + eps) / (1 - eps)) * deg * scale
    if kind == "bknp":
        return (30 + mu) * deg * scale
    raise PreconditionError(f"unknown threshold kind: {kind}")


def min_degree_ok_dkps(deg: float, max_degree: int, eps_max: float, r_max: int) -> bool:
    """deg >= Delta^min(2*eps, (1+eps)/2) * log(8*Delta^4)^r."""
    exponent = min(2 * eps_max, (1 + eps_max) / 2)
    return deg >= max_degree ** exponent * math.log(8 * max_degree ** 4) ** r_max


def min_degree_ok_bknp(deg: float, max_degree: int) -> bool:
    """deg >= log^2(Delta)."""
    return deg >= math.log(max_degree) ** 2
