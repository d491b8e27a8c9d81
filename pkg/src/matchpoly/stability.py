"""Refuting real stability by restriction to lines.

A real polynomial f is stable iff t -> f(a + t*b) is real-rooted for every
real base point a and every direction b with positive entries. Drawing such
lines at random can therefore only ever *refute* stability; a refutation comes
with a witness that can be re-checked exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Tuple

from .polys import MultiPoly, UniPoly
from .roots import count_real_roots, is_real_rooted, squarefree_part

REFUTED = "refuted"
NOT_REFUTED = "not-refuted"

DEFAULT_BOUND = 10


@dataclass(frozen=True)
class LineWitness:
    base: Tuple[Fraction, ...]
    direction: Tuple[Fraction, ...]
    restriction: UniPoly
    distinct_real_roots: int
    distinct_roots: int

    def verify(self, f: MultiPoly) -> bool:
        p = restrict_to_line(f, self.base, self.direction)
        return p == self.restriction and not is_real_rooted(p)

    def to_json(self) -> dict:
        return {
            "kind": "line",
            "base": [str(c) for c in self.base],
            "direction": [str(c) for c in self.direction],
            "restriction": str(self.restriction),
            "distinct_real_roots": self.distinct_real_roots,
            "distinct_roots": self.distinct_roots,
        }


@dataclass(frozen=True)
class StabilityVerdict:
    status: str
    witness: Optional[object] = None
    trials: int = 0

    @property
    def refuted(self) -> bool:
        return self.status == REFUTED

    def to_json(self) -> dict:
        out = {"status": self.status, "trials": self.trials}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _mul_int(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def restrict_to_line(f: MultiPoly, base: Sequence, direction: Sequence) -> UniPoly:
    """t -> f(base + t*direction), exactly. Direction entries must be positive."""
    n = f.nvars
    base = [Fraction(c) for c in base]
    direction = [Fraction(c) for c in direction]
    if len(base) != n or len(direction) != n:
        raise ValueError(f"line must live in {n} dimensions")
    if any(c <= 0 for c in direction):
        raise ValueError("direction entries must be strictly positive")
    if f.is_zero():
        return UniPoly()
    # x_i = (B_i + t D_i) / Q with integers B, D, Q
    Q = 1
    for c in base + direction:
        Q = _lcm(Q, c.denominator)
    B = [int(c * Q) for c in base]
    D = [int(c * Q) for c in direction]
    L = 1
    for _, c in f.items():
        L = _lcm(L, c.denominator)
    deg = f.total_degree()
    powers = [[[1]] for _ in range(n)]

    def power(i, e):
        pw = powers[i]
        while len(pw) <= e:
            pw.append(_mul_int(pw[-1], [B[i], D[i]]))
        return pw[e]

    acc = [0] * (deg + 1)
    for exp, c in f.items():
        term = [int(c * L) * Q ** (deg - sum(exp))]
        for i, e in enumerate(exp):
            if e:
                term = _mul_int(term, power(i, e))
        for k, v in enumerate(term):
            acc[k] += v
    scale = Fraction(1, L * Q**deg)
    return UniPoly(Fraction(v) * scale for v in acc)


def random_rational(rng: random.Random, bound: int = DEFAULT_BOUND, positive: bool = False) -> Fraction:
    den = rng.randint(1, bound)
    num = rng.randint(1, bound) if positive else rng.randint(-bound, bound)
    return Fraction(num, den)


def refute_stability(
    f: MultiPoly, trials: int = 100, seed: int = 0, bound: int = DEFAULT_BOUND
) -> StabilityVerdict:
    """Look for a line on which f is not real-rooted.

    Deterministic in (f, trials, seed). The zero polynomial is stable by
    convention and is never refuted.
    """
    rng = random.Random(seed)
    n = f.nvars
    if f.is_zero() or n == 0:
        return StabilityVerdict(NOT_REFUTED, None, trials)
    for k in range(trials):
        base = tuple(random_rational(rng, bound) for _ in range(n))
        direction = tuple(random_rational(rng, bound, positive=True) for _ in range(n))
        p = restrict_to_line(f, base, direction)
        if not is_real_rooted(p):
            sqf = squarefree_part(p)
            w = LineWitness(base, direction, p, count_real_roots(sqf), sqf.degree)
            return StabilityVerdict(REFUTED, w, k + 1)
    return StabilityVerdict(NOT_REFUTED, None, trials)
