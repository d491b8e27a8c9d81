"""Probability distributions on subsets of [n] and expected induced matching polynomials."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Dict, FrozenSet, Iterable, Mapping, Sequence, Tuple

from .graphs import Multigraph
from .matchings import matched_masks
from .polys import DiffOperator, MultiPoly
from .stability import NOT_REFUTED, REFUTED, StabilityVerdict

__all__ = [
    "SubsetDistribution",
    "DistributionError",
    "partition_function",
    "bernoulli_dist",
    "uniform_k_dist",
    "tg_operator",
    "induced_matching_poly",
    "expected_induced_matching_poly",
    "rayleigh_refute",
    "bivariate_multiaffine_stable",
    "exp_stable",
    "example_distribution",
]

MAX_N = 12


class DistributionError(ValueError):
    pass


@dataclass(frozen=True)
class SubsetDistribution:
    """Finite distribution on subsets of {0..n-1}; zero-probability sets are not stored."""

    n: int
    support: Tuple[Tuple[FrozenSet[int], Fraction], ...]

    def __init__(self, n: int, support: Mapping[Iterable[int], object] | Iterable):
        items = support.items() if isinstance(support, Mapping) else support
        merged: Dict[FrozenSet[int], Fraction] = {}
        for s, p in items:
            key = frozenset(int(v) for v in s)
            if any(v < 0 or v >= n for v in key):
                raise DistributionError(f"subset {sorted(key)} not inside [0, {n})")
            p = Fraction(p)
            if p < 0:
                raise DistributionError("probabilities must be nonnegative")
            if key in merged:
                raise DistributionError(f"subset {sorted(key)} listed twice")
            merged[key] = p
        if sum(merged.values()) != 1:
            raise DistributionError(f"probabilities sum to {sum(merged.values())}, not 1")
        ordered = sorted(((s, p) for s, p in merged.items() if p), key=lambda t: (len(t[0]), sorted(t[0])))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "support", tuple(ordered))

    def prob(self, s: Iterable[int]) -> Fraction:
        key = frozenset(s)
        for t, p in self.support:
            if t == key:
                return p
        return Fraction(0)

    def has_constant_parity(self) -> bool:
        return len({len(s) % 2 for s, _ in self.support}) <= 1

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "support": [
                {"set": sorted(s), "num": str(p.numerator), "den": str(p.denominator)}
                for s, p in self.support
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "SubsetDistribution":
        try:
            n = int(obj["n"])
            items = [(e["set"], Fraction(int(e["num"]), int(e["den"]))) for e in obj["support"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise DistributionError(f"malformed distribution JSON: {exc}") from None
        return cls(n, items)


def partition_function(P: SubsetDistribution) -> MultiPoly:
    """Z_P(x) = sum_S P(S) x^S."""
    return MultiPoly(P.n, {tuple(int(i in s) for i in range(P.n)): p for s, p in P.support})


def bernoulli_dist(p: Sequence) -> SubsetDistribution:
    """Independent inclusion of vertex i with probability p[i]."""
    ps = [Fraction(v) for v in p]
    if any(v < 0 or v > 1 for v in ps):
        raise DistributionError("Bernoulli probabilities must lie in [0, 1]")
    n = len(ps)
    if n > MAX_N:
        raise DistributionError(f"n={n} exceeds the full-support cap {MAX_N}")
    support = {}
    for bits in product((0, 1), repeat=n):
        w = Fraction(1)
        for b, v in zip(bits, ps):
            w *= v if b else 1 - v
        if w:
            support[tuple(i for i in range(n) if bits[i])] = w
    return SubsetDistribution(n, support)


def uniform_k_dist(n: int, k: int) -> SubsetDistribution:
    if not 0 <= k <= n:
        raise DistributionError("need 0 <= k <= n")
    w = Fraction(1, comb(n, k))
    return SubsetDistribution(n, {s: w for s in combinations(range(n), k)})


def example_distribution(a, b, c, d) -> SubsetDistribution:
    """P({0,1}) = a, P({0}) = b, P({1}) = c, P(empty) = d."""
    return SubsetDistribution(2, {(0, 1): a, (0,): b, (1,): c, (): d})


def tg_operator(G: Multigraph) -> DiffOperator:
    """prod over edges {i,j} of (1 - d_i d_j)."""
    if not G.is_simple():
        raise ValueError("T_G is defined here for simple graphs only")
    op = DiffOperator.identity(G.n)
    for i, j in G.edges:
        op = op * (1 - DiffOperator.partial_product((i, j), G.n))
    return op


def induced_matching_poly(G: Multigraph, subset: Iterable[int]) -> MultiPoly:
    """mu_{G[S]} in the complement convention, written in the n variables of G.

    Vertices outside S carry no variable.
    """
    H, labels = G.induced(subset)
    s_mask = sum(1 << v for v in labels)
    out: Dict[int, int] = {}
    for m, c in matched_masks(H).items():
        covered = sum(1 << labels[i] for i in range(H.n) if m >> i & 1)
        out[s_mask ^ covered] = out.get(s_mask ^ covered, 0) + c
    return MultiPoly.from_masks(G.n, out)


def expected_induced_matching_poly(G: Multigraph, P: SubsetDistribution) -> MultiPoly:
    """E_P[mu_{G[S]}(x)], computed directly and as T_G applied to Z_P; both must agree."""
    if not G.is_simple():
        raise ValueError("expected induced matching polynomials need a simple graph")
    if G.n != P.n:
        raise ValueError("graph and distribution live on different vertex sets")
    direct = MultiPoly(G.n)
    for s, p in P.support:
        direct = direct + induced_matching_poly(G, s) * p
    via_op = tg_operator(G)(partition_function(P))
    if direct != via_op:
        raise ArithmeticError("direct sum and T_G(Z_P) disagree")
    return direct


@dataclass(frozen=True)
class RayleighWitness:
    point: Tuple[Fraction, ...]
    i: int
    j: int
    gap: Fraction  # Z * d_ij Z - d_i Z * d_j Z, positive when the inequality fails

    def verify(self, Z: MultiPoly) -> bool:
        return _rayleigh_gap(Z, self.point, self.i, self.j) == self.gap > 0

    def to_json(self) -> dict:
        return {"kind": "rayleigh", "point": [str(c) for c in self.point], "i": self.i, "j": self.j,
                "gap": str(self.gap)}


def _rayleigh_gap(Z: MultiPoly, point, i: int, j: int) -> Fraction:
    zi = Z.derivative(i)
    zj = Z.derivative(j)
    zij = zi.derivative(j)
    return Z.evaluate(point) * zij.evaluate(point) - zi.evaluate(point) * zj.evaluate(point)


def rayleigh_refute(P: SubsetDistribution, trials: int = 200, seed: int = 0,
                    bound: int = 5, max_den: int = 10) -> StabilityVerdict:
    """Search random real points in [-bound, bound]^n for a violated Rayleigh inequality."""
    Z = partition_function(P)
    n = P.n
    rng = random.Random(seed)
    derivs = {}
    for i in range(n):
        derivs[i] = Z.derivative(i)
    for t in range(trials):
        point = tuple(_bounded_point(rng, bound, max_den) for _ in range(n))
        zval = Z.evaluate(point)
        dvals = [derivs[i].evaluate(point) for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                gap = zval * derivs[i].derivative(j).evaluate(point) - dvals[i] * dvals[j]
                if gap > 0:
                    return StabilityVerdict(REFUTED, RayleighWitness(point, i, j, gap), t + 1)
    return StabilityVerdict(NOT_REFUTED, None, trials)


def _bounded_point(rng: random.Random, bound: int, max_den: int) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(-bound * den, bound * den), den)


def _check_nonneg(*vals) -> Tuple[Fraction, ...]:
    out = tuple(Fraction(v) for v in vals)
    if any(v < 0 for v in out):
        raise ValueError("coefficients must be nonnegative")
    return out


def bivariate_multiaffine_stable(a, b, c, d) -> bool:
    """Stability of a*x1*x2 + b*x1 + c*x2 + d with nonnegative coefficients: bc - ad >= 0."""
    a, b, c, d = _check_nonneg(a, b, c, d)
    return b * c - a * d >= 0


def exp_stable(a, b, c, d) -> bool:
    """Stability of a*(x1*x2 - 1) + b*x1 + c*x2 + d: bc - a(d - a) >= 0."""
    a, b, c, d = _check_nonneg(a, b, c, d)
    return b * c - a * (d - a) >= 0
