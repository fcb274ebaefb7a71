"""Local occupancy certificates for the hard-core model.

A certificate assigns each vertex u a pair (beta_u, gamma_u).  It is valid at
fugacity lam if for every vertex u and every subgraph F of G[N(u)] (induced
subgraphs in "induced" mode, arbitrary edge subsets in "strong" mode):

    beta_u * lam/(1+lam) * 1/Z_F(lam) + gamma_u * lam*Z_F'(lam)/Z_F(lam) >= 1.

A valid induced-mode certificate pins the occupancy fraction of the whole
graph below by 1/(beta + gamma*Delta).  The checker is exhaustive and exact
(rational arithmetic per F); the closed-form parameter constructor is only
guaranteed at large degree scales, so its output is always re-checked.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import InternalCheckError, NoCrossingError, PreconditionError
from .graph import Graph, bits, per_vertex
from .hardcore import eval_poly, eval_poly_derivative, mask_polynomial

INDUCED_DEGREE_GUARD = 22
STRONG_DEGREE_GUARD = 12
STRONG_EDGE_GUARD = 20
DEFAULT_TOLERANCE = Fraction(1, 10**12)


@dataclass
class OccupancyCertificate:
    lam: float
    beta: list[float]
    gamma: list[float]
    mode: str = "induced"
    provenance: str = "manual"
    solver_inputs: dict | None = None

    def __post_init__(self):
        if self.lam <= 0:
            raise PreconditionError(f"fugacity must be positive, got {self.lam}")
        if self.mode not in ("induced", "strong"):
            raise PreconditionError(f"mode must be induced|strong, got {self.mode!r}")
        if any(b <= 0 for b in self.beta) or any(c <= 0 for c in self.gamma):
            raise PreconditionError("beta and gamma must be positive")
        if len(self.beta) != len(self.gamma):
            raise PreconditionError("beta and gamma lengths differ")

    @property
    def n(self) -> int:
        return len(self.beta)

    @classmethod
    def uniform(cls, lam: float, beta: float, gamma: float, n: int,
                mode: str = "induced", provenance: str = "manual") -> "OccupancyCertificate":
        return cls(lam, [beta] * n, [gamma] * n, mode, provenance)

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "mode": self.mode,
            "vertices": [{"v": v, "beta": self.beta[v], "gamma": self.gamma[v]}
                         for v in range(self.n)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, obj: dict) -> "OccupancyCertificate":
        rows = sorted(obj["vertices"], key=lambda r: r["v"])
        return cls(float(obj["lambda"]),
                   [float(r["beta"]) for r in rows],
                   [float(r["gamma"]) for r in rows],
                   obj.get("mode", "induced"))


@dataclass
class CheckVerdict:
    passed: bool
    worst_margin: float
    witness_u: int | None
    witness_vertices: tuple[int, ...] | None
    witness_edges: tuple[tuple[int, int], ...] | None
    mode: str
    exhaustive: bool = True
    n_checked: int = 0

    def to_dict(self) -> dict:
        wit = None
        if self.witness_u is not None:
            mask = 0
            for v in self.witness_vertices:
                mask |= 1 << v
            wit = {"u": self.witness_u, "f_mask": mask,
                   "vertices": list(self.witness_vertices)}
            if self.witness_edges is not None:
                wit["edges"] = [list(e) for e in self.witness_edges]
        return {
            "pass": self.passed,
            "worst_margin": self.worst_margin,
            "mode": self.mode,
            "exhaustive": self.exhaustive,
            "witness": wit,
        }


def _submasks(mask: int):
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


def occupancy_margin(coeffs, lam: Fraction, beta: Fraction, gamma: Fraction) -> Fraction:
    """LHS - 1 of the occupancy inequality for a subgraph with the given
    independence polynomial; exact."""
    z = eval_poly(coeffs, lam)
    zp = eval_poly_derivative(coeffs, lam)
    return beta * (lam / (1 + lam)) / z + gamma * lam * zp / z - 1


def _edge_subset_coeffs(vertices: list[int], edge_subset) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(vertices)}
    adj = [0] * len(vertices)
    for a, b in edge_subset:
        adj[pos[a]] |= 1 << pos[b]
        adj[pos[b]] |= 1 << pos[a]
    return mask_polynomial(adj, (1 << len(vertices)) - 1)


def check_certificate(g: Graph, cert: OccupancyCertificate,
                      tolerance: Fraction = DEFAULT_TOLERANCE) -> CheckVerdict:
    """Exhaustively evaluate the occupancy inequality over every (u, F).

    Induced mode iterates all vertex subsets of each neighborhood (including
    the empty one, for which Z = 1 and Z' = 0).  Strong mode additionally
    iterates all edge subsets of each induced candidate.
    """
    if cert.n != g.n:
        raise PreconditionError(f"certificate covers {cert.n} vertices, graph has {g.n}")
    strong = cert.mode == "strong"
    guard = STRONG_DEGREE_GUARD if strong else INDUCED_DEGREE_GUARD
    if g.n and g.max_degree() > guard:
        raise PreconditionError(
            f"max degree {g.max_degree()} exceeds the {cert.mode}-mode guard "
            f"{guard}; use check_certificate_sampled for a non-exhaustive audit")
    lam = Fraction(cert.lam)
    poly_memo: dict[int, tuple[int, ...]] = {}
    worst: tuple[Fraction, int, int, tuple | None] | None = None
    n_checked = 0

    for u in range(g.n):
        beta = Fraction(cert.beta[u])
        gamma = Fraction(cert.gamma[u])
        nb = g.adj[u]
        if strong:
            pairs = [(a, b) for a, b in combinations(bits(nb), 2) if g.has_edge(a, b)]
            if len(pairs) > STRONG_EDGE_GUARD:
                raise PreconditionError(
                    f"neighborhood of {u} has {len(pairs)} edges; strong mode "
                    f"enumerates edge subsets and is guarded at {STRONG_EDGE_GUARD}")
        for smask in _submasks(nb):
            if strong:
                verts = list(bits(smask))
                inner = [(a, b) for a, b in pairs if smask >> a & 1 and smask >> b & 1]
                for em in range(1 << len(inner)):
                    subset = tuple(inner[i] for i in range(len(inner)) if em >> i & 1)
                    coeffs = _edge_subset_coeffs(verts, subset)
                    margin = occupancy_margin(coeffs, lam, beta, gamma)
                    n_checked += 1
                    key = (margin, u, smask, subset)
                    if worst is None or key[:3] < worst[:3]:
                        worst = key
            else:
                coeffs = mask_polynomial(g.adj, smask, poly_memo)
                margin = occupancy_margin(coeffs, lam, beta, gamma)
                n_checked += 1
                key = (margin, u, smask, None)
                if worst is None or key[:3] < worst[:3]:
                    worst = key

    if worst is None:
        return CheckVerdict(True, math.inf, None, None, None, cert.mode, True, 0)
    margin, u, smask, edges = worst
    return CheckVerdict(margin >= -tolerance, float(margin), u,
                        tuple(bits(smask)), edges, cert.mode, True, n_checked)


def check_certificate_sampled(g: Graph, cert: OccupancyCertificate, samples: int,
                              seed: int,
                              tolerance: Fraction = DEFAULT_TOLERANCE) -> CheckVerdict:
    """Random (u, F) audit for graphs beyond the exhaustive guard; a pass here
    is NOT a proof of validity."""
    rng = random.Random(seed)
    lam = Fraction(cert.lam)
    poly_memo: dict[int, tuple[int, ...]] = {}
    worst = None
    for _ in range(samples):
        u = rng.randrange(g.n)
        nb = g.adj[u]
        smask = 0
        for v in bits(nb):
            if rng.random() < 0.5:
                smask |= 1 << v
        coeffs = mask_polynomial(g.adj, smask, poly_memo)
        margin = occupancy_margin(coeffs, lam, Fraction(cert.beta[u]),
                                  Fraction(cert.gamma[u]))
        key = (margin, u, smask)
        if worst is None or key < worst:
            worst = key
    margin, u, smask = worst
    return CheckVerdict(margin >= -tolerance, float(margin), u, tuple(bits(smask)),
                        None, cert.mode, exhaustive=False, n_checked=samples)


def certified_occupancy_bound(cert: OccupancyCertificate, max_degree: int) -> Fraction:
    """1/(beta + gamma*Delta) with the per-vertex maxima (conservative).
    If the certificate passes the induced-mode check on a graph of this max
    degree, the exact occupancy fraction is at least this value."""
    beta = Fraction(max(cert.beta))
    gamma = Fraction(max(cert.gamma))
    return 1 / (beta + gamma * max_degree)


# -- closed-form parameters from the degree scale --------------------------------

def _omega(r: int, k: float) -> float:
    return math.e ** (r / (r - 2)) * k ** (1 / (r * (r - 2)))


def solve_balance_point(d: float, lam: float, sigma: float, r: int, k: float,
                        tol: float = 1e-10) -> float:
    """Root z* of  d * lam/(1+lam) * e^(-z) = (1-sigma)/(r-2) * z/log(omega*z)
    on [e/omega, log(tau) + 10], where tau = d * lam/(1+lam) * (r-2)/(1-sigma).

    Bisection to absolute tolerance `tol`, then Newton polish; the returned
    root satisfies |LHS - RHS|/RHS < 1e-8.
    """
    if r < 3 or int(r) != r:
        raise PreconditionError(f"r must be an integer >= 3, got {r}")
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")
    if not 0.0 < sigma < 1.0:
        raise PreconditionError(f"sigma must be in (0,1), got {sigma}")
    if lam <= 0 or d <= 0:
        raise PreconditionError("fugacity and degree scale must be positive")

    omega = _omega(r, k)
    lam_f = lam / (1 + lam)
    tau = d * lam_f * (r - 2) / (1 - sigma)

    def lhs(z: float) -> float:
        return d * lam_f * math.exp(-z)

    def rhs(z: float) -> float:
        return (1 - sigma) / (r - 2) * z / math.log(omega * z)

    lo = math.e / omega
    hi = math.log(tau) + 10 if tau > 0 else 10.0
    if hi <= lo or lhs(lo) <= rhs(lo):
        raise NoCrossingError(
            f"no crossing in [{lo:.4g}, {hi:.4g}]: degree scale d = {d} is "
            "below the solvable threshold for these (lam, sigma, r, k)")
    if lhs(hi) >= rhs(hi):
        raise NoCrossingError(f"bracket end {hi:.4g} does not cross")

    a, b = lo, hi
    while b - a > tol:
        mid = (a + b) / 2
        if lhs(mid) > rhs(mid):
            a = mid
        else:
            b = mid
    z = (a + b) / 2
    # Newton polish on log(LHS) - log(RHS); keeps the residual at machine scale
    for _ in range(4):
        big_l = math.log(omega * z)
        h = math.log(d * lam_f) - z - math.log((1 - sigma) / (r - 2)) \
            - math.log(z) + math.log(big_l)
        dh = -1 - 1 / z + 1 / (z * big_l)
        step = h / dh
        if a <= z - step <= b:
            z -= step

    residual = abs(lhs(z) - rhs(z)) / rhs(z)
    if residual >= 1e-8:
        raise InternalCheckError(f"solver residual {residual} exceeds 1e-8")
    return z


def balance_function(z: float, beta: float, gamma: float, lam: float,
                     sigma: float, r: int, k: float) -> float:
    """The auxiliary objective g(z) whose minimum over log-partition values is
    pinned to 1/(1-sigma) by the parameter construction."""
    omega = _omega(r, k)
    return (beta * lam / (1 + lam) * math.exp(-z)
            + gamma * (1 - sigma) / (r - 2) * z / math.log(omega * z))


def occupancy_parameters(d: float, lam: float, sigma: float, r: int,
                         k: float) -> tuple[float, float, dict]:
    """Closed-form (beta, gamma) from the balance point z*:

        beta  = d * (r-2)/(1-sigma)^2 * L*(L-1) / (z*((z*+1)*L - 1))
        gamma =     (r-2)/(1-sigma)^2 * L^2     / ((z*+1)*L - 1)

    with L = log(omega * z*).  The 1/(1-sigma) safety factor is already folded
    in.  Diagnostics report the small-subgraph threshold t0 and whether beta
    clears the floor (1+lam)^(1+t0)/lam required for subgraphs below it.
    """
    z = solve_balance_point(d, lam, sigma, r, k)
    omega = _omega(r, k)
    if omega * z <= math.e:
        raise PreconditionError(
            f"omega*z* = {omega * z:.4g} <= e; parameters need log(omega*z*) > 1")
    big_l = math.log(omega * z)
    denom = (z + 1) * big_l - 1
    beta = d * (r - 2) / (1 - sigma) ** 2 * big_l * (big_l - 1) / (z * denom)
    gamma = (r - 2) / (1 - sigma) ** 2 * big_l ** 2 / denom
    t0 = math.log(d) / (2 * math.log(1 + lam))
    small_t_floor = (1 + lam) ** (1 + t0) / lam
    diagnostics = {
        "z_star": z,
        "omega": omega,
        "tau": d * lam / (1 + lam) * (r - 2) / (1 - sigma),
        "t0": t0,
        "small_t_floor": small_t_floor,
        "small_t_ok": beta >= small_t_floor,
    }
    return beta, gamma, diagnostics


def auto_certify(g: Graph, lam: float, sigma: float = 0.1, d_map=None,
                 r_map=3, k_map=1.0, mode: str = "induced",
                 tolerance: Fraction = DEFAULT_TOLERANCE
                 ) -> tuple[OccupancyCertificate, CheckVerdict]:
    """Build a certificate from the closed forms (d defaults to deg(u)) and
    validate it with the exhaustive checker.  The closed forms are only
    guaranteed at large degree scales, so the checker verdict is the ground
    truth; no pass is asserted here."""
    ds = per_vertex(d_map if d_map is not None else
                    (lambda v: float(g.degree(v))), g.n, float)
    rs = per_vertex(r_map, g.n, int)
    ks = per_vertex(k_map, g.n, float)
    beta, gamma = [], []
    diags = []
    for u in range(g.n):
        b, c, diag = occupancy_parameters(ds[u], lam, sigma, rs[u], ks[u])
        beta.append(b)
        gamma.append(c)
        diags.append(diag)
    cert = OccupancyCertificate(lam, beta, gamma, mode, provenance="lemma_params",
                                solver_inputs={"sigma": sigma, "d": ds,
                                               "r": rs, "k": ks,
                                               "diagnostics": diags})
    verdict = check_certificate(g, cert, tolerance)
    return cert, verdict
