"""Exact hard-core model machinery.

Independence polynomials are computed with exact integer coefficients via the
vertex-elimination recursion Z(G) = Z(G - v) + x * Z(G - N[v]), with connected
components split multiplicatively and subgraph masks memoized.  Evaluations at
a fugacity use exact rational arithmetic (floats are converted to the exact
binary rational they represent), so certificate margins carry no rounding.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError
from .graph import Graph, bits

POLY_MAX_N = 34
EXACT_SAMPLE_MAX_N = 30

_LN2 = math.log(2)


# -- polynomial arithmetic on exact integer coefficient tuples ---------------

def _poly_add(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    return tuple(c + (b[i] if i < len(b) else 0) for i, c in enumerate(a))


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return tuple(out)


def _components(adj: Sequence[int], mask: int) -> list[int]:
    comps = []
    rem = mask
    while rem:
        comp = rem & -rem
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v] & mask
            frontier = nxt & ~comp
            comp |= frontier
        comps.append(comp)
        rem &= ~comp
    return comps


def mask_polynomial(adj: Sequence[int], mask: int, memo: dict | None = None) -> tuple[int, ...]:
    """Independence polynomial coefficients of the subgraph induced on mask."""
    if memo is None:
        memo = {}

    def rec(m: int) -> tuple[int, ...]:
        if m == 0:
            return (1,)
        cached = memo.get(m)
        if cached is not None:
            return cached
        comps = _components(adj, m)
        if len(comps) > 1:
            result = (1,)
            for c in comps:
                result = _poly_mul(result, rec(c))
        else:
            v = max(bits(m), key=lambda u: (adj[u] & m).bit_count())
            without_v = rec(m ^ (1 << v))
            with_v = rec(m & ~(adj[v] | (1 << v)))
            result = _poly_add(without_v, (0,) + with_v)
        memo[m] = result
        return result

    return rec(mask)


def eval_poly(coeffs: Sequence[int], lam: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * lam + c
    return acc


def eval_poly_derivative(coeffs: Sequence[int], lam: Fraction) -> Fraction:
    acc = Fraction(0)
    for j in range(len(coeffs) - 1, 0, -1):
        acc = acc * lam + j * coeffs[j]
    return acc


# -- the polynomial object ---------------------------------------------------

@dataclass(frozen=True)
class IndependencePolynomial:
    """coeffs[j] = number of independent sets of size j (exact integers)."""

    coeffs: tuple[int, ...]
    n: int

    @property
    def alpha(self) -> int:
        """Independence number: degree of the polynomial."""
        return len(self.coeffs) - 1

    @property
    def total(self) -> int:
        """Number of independent sets, the value Z(1)."""
        return sum(self.coeffs)

    def z(self, lam) -> Fraction:
        return eval_poly(self.coeffs, Fraction(lam))

    def z_prime(self, lam) -> Fraction:
        return eval_poly_derivative(self.coeffs, Fraction(lam))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "coeffs": [c if abs(c) < 2**53 else str(c) for c in self.coeffs],
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "IndependencePolynomial":
        return cls(tuple(int(c) for c in obj["coeffs"]), int(obj["n"]))


def independence_polynomial(g: Graph) -> IndependencePolynomial:
    if g.n > POLY_MAX_N:
        raise PreconditionError(
            f"exact polynomial limited to n <= {POLY_MAX_N}, got {g.n}; "
            "use transfer_partition_function for declared paths/cycles")
    coeffs = mask_polynomial(g.adj, g.full_mask)
    return IndependencePolynomial(coeffs, g.n)


# -- transfer recurrence for paths and cycles (unbounded n) -------------------

def transfer_partition_function(family: str, n: int, lam) -> tuple[Fraction, Fraction]:
    """(Z, dZ/dlambda) for a path or cycle, via the linear recurrence
    Z(P_n) = Z(P_{n-1}) + lam * Z(P_{n-2}).  Exact rationals."""
    lam = Fraction(lam)
    if family == "path":
        if n < 1:
            raise PreconditionError(f"path needs n >= 1, got {n}")
        top = n
    elif family == "cycle":
        if n < 3:
            raise PreconditionError(f"cycle needs n >= 3, got {n}")
        top = n - 1
    else:
        raise PreconditionError(f"family must be 'path' or 'cycle', got {family!r}")

    z = [Fraction(1), 1 + lam]
    zp = [Fraction(0), Fraction(1)]
    for i in range(2, top + 1):
        z.append(z[i - 1] + lam * z[i - 2])
        zp.append(zp[i - 1] + z[i - 2] + lam * zp[i - 2])
    if family == "path":
        return z[n], zp[n]
    # condition on one cycle vertex: out -> P_{n-1}, in -> P_{n-3} plus itself
    Z = z[n - 1] + lam * z[n - 3]
    Zp = zp[n - 1] + z[n - 3] + lam * zp[n - 3]
    return Z, Zp


def log_big(x: int) -> float:
    """Natural log of a positive integer too large for float conversion."""
    if x <= 0:
        raise ValueError("log of nonpositive integer")
    nbits = x.bit_length()
    if nbits <= 512:
        return math.log(x)
    shift = nbits - 512
    return math.log(x >> shift) + shift * _LN2


def log_fraction(x: Fraction) -> float:
    return log_big(x.numerator) - log_big(x.denominator)


# -- occupancy fraction -------------------------------------------------------

def occupancy_fraction_exact(poly: IndependencePolynomial, lam) -> Fraction:
    """(1/n) * lam * Z'(lam) / Z(lam) as an exact rational."""
    if poly.n < 1:
        raise PreconditionError("occupancy fraction needs n >= 1")
    lam = Fraction(lam)
    return lam * poly.z_prime(lam) / (poly.n * poly.z(lam))


def occupancy_fraction(src, lam) -> float:
    poly = independence_polynomial(src) if isinstance(src, Graph) else src
    return float(occupancy_fraction_exact(poly, lam))


def median_independence_number(poly: IndependencePolynomial) -> int:
    """Largest size ell such that at least half of all independent sets have
    size >= ell; exact integer comparison (2*tail >= total)."""
    if poly.n < 1:
        raise PreconditionError("median independence number needs n >= 1")
    total = poly.total
    tail = 0
    for ell in range(poly.alpha, 0, -1):
        tail += poly.coeffs[ell]
        if 2 * tail >= total:
            return ell
    return 0


# -- samplers ------------------------------------------------------------------

@dataclass
class HardCoreSampleStats:
    lam: float
    steps: int
    empirical_occupancy: float
    seed: int

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "steps": self.steps,
            "empirical_occupancy": self.empirical_occupancy,
            "seed": self.seed,
        }


def glauber_sample(g: Graph, lam: float, steps: int, seed: int,
                   trace_path: str | None = None,
                   trace_stride: int = 1) -> HardCoreSampleStats:
    """Single-site dynamics: pick a uniform vertex; with probability
    lam/(1+lam) try to insert it (succeeds iff no neighbor is occupied),
    otherwise remove it.  Occupancy is averaged over the second half."""
    if steps < 1:
        raise PreconditionError(f"steps must be >= 1, got {steps}")
    if g.n < 1:
        raise PreconditionError("sampler needs n >= 1")
    rng = random.Random(seed)
    adj = g.adj
    n = g.n
    p_insert = lam / (1.0 + lam)
    cur = 0
    size = 0
    half_start = steps // 2
    acc = 0
    kept = 0
    trace = open(trace_path, "w") if trace_path else None
    try:
        if trace:
            trace.write("step,size\n")
        for step in range(steps):
            v = rng.randrange(n)
            bit = 1 << v
            if rng.random() < p_insert:
                if adj[v] & cur == 0 and not cur & bit:
                    cur |= bit
                    size += 1
            elif cur & bit:
                cur &= ~bit
                size -= 1
            if step >= half_start:
                acc += size
                kept += 1
            if trace and step % trace_stride == 0:
                trace.write(f"{step},{size}\n")
    finally:
        if trace:
            trace.close()
    return HardCoreSampleStats(lam, steps, acc / (kept * n), seed)


class ExactSampler:
    """Draws exactly from the hard-core law by conditioning vertex by vertex:
    P[v in I | earlier choices] = lam * Z(active minus N[v]) / Z(active)."""

    def __init__(self, g: Graph, lam):
        if g.n > EXACT_SAMPLE_MAX_N:
            raise PreconditionError(
                f"exact sampler limited to n <= {EXACT_SAMPLE_MAX_N}, got {g.n}")
        self.g = g
        self.lam = Fraction(lam)
        self._z_memo: dict[int, Fraction] = {0: Fraction(1)}

    def _z(self, mask: int) -> Fraction:
        cached = self._z_memo.get(mask)
        if cached is not None:
            return cached
        v = (mask & -mask).bit_length() - 1
        closed = self.g.adj[v] | (1 << v)
        val = self._z(mask & ~(1 << v)) + self.lam * self._z(mask & ~closed)
        self._z_memo[mask] = val
        return val

    def sample(self, rng: random.Random) -> frozenset[int]:
        active = self.g.full_mask
        chosen = 0
        for v in range(self.g.n):
            bit = 1 << v
            if not active & bit:
                continue
            closed = self.g.adj[v] | bit
            p = float(self.lam * self._z(active & ~closed) / self._z(active))
            if rng.random() < p:
                chosen |= bit
                active &= ~closed
            else:
                active &= ~bit
        assert self.g.is_independent(bits(chosen))
        return frozenset(bits(chosen))


def exact_sample(g: Graph, lam, seed: int) -> frozenset[int]:
    return ExactSampler(g, lam).sample(random.Random(seed))
