"""Universal covering trees and spectral radius bounds.

The universal cover U(G) is infinite unless G is a tree, so it is only ever
handled through depth-D truncations. The largest adjacency eigenvalue of a
truncation is a lower bound on rho(G) = r(U(G)); it is found by rational
bisection, where each probe asks whether lambda*I - A is positive definite.
For a tree that question is answered exactly by eliminating leaves upward
(all Schur-complement pivots positive).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Dict, List, Optional, Tuple

from .graphs import Multigraph, adjacency_matrix
from .linalg import charpoly
from .roots import check_roots_bounded, largest_root_upper_bound

__all__ = [
    "TreeTruncation",
    "RhoEstimate",
    "ClosedFormRho",
    "universal_cover_truncation",
    "truncation_size",
    "rho_estimate",
    "closed_form_rho",
    "check_roots_bounded",
    "TruncationTooLarge",
]

NODE_CAP = 200_000
TOLERANCE = Fraction(1, 2**20)


class TruncationTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class TreeTruncation:
    root: int
    depth: int
    parent: Tuple[int, ...]  # parent[0] == -1
    walks: Tuple[Tuple[int, ...], ...]

    def to_graph(self) -> Multigraph:
        return Multigraph(len(self.parent), tuple((p, c) for c, p in enumerate(self.parent) if p >= 0))


@dataclass(frozen=True)
class RhoEstimate:
    value: Fraction
    depth: int
    method: str = "truncation-bisection"


@dataclass(frozen=True)
class ClosedFormRho:
    family: str
    description: str
    upper: Fraction  # rational >= rho(G)


def _require_simple_connected(G: Multigraph) -> None:
    if not G.is_simple():
        raise ValueError("universal covers are handled for simple graphs only")
    if not G.is_connected():
        raise ValueError("graph must be connected")


def _adjacency_lists(G: Multigraph) -> List[List[int]]:
    nb = [[] for _ in range(G.n)]
    for i, j in G.edges:
        nb[i].append(j)
        nb[j].append(i)
    return [sorted(x) for x in nb]


def truncation_size(G: Multigraph, root: int, depth: int) -> int:
    """Number of non-backtracking walks of length <= depth from ``root``."""
    nb = _adjacency_lists(G)
    memo: Dict[Tuple[int, int, int], int] = {}

    def size(prev: int, cur: int, rem: int) -> int:
        key = (prev, cur, rem)
        if key not in memo:
            memo[key] = 1 + (sum(size(cur, u, rem - 1) for u in nb[cur] if u != prev) if rem else 0)
        return memo[key]

    return size(-1, root, depth)


def universal_cover_truncation(G: Multigraph, root: int, depth: int, cap: int = NODE_CAP) -> TreeTruncation:
    """All non-backtracking walks of length <= depth from ``root``, as a rooted tree."""
    _require_simple_connected(G)
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    size = truncation_size(G, root, depth)
    if size > cap:
        raise TruncationTooLarge(f"truncation has {size} nodes, cap is {cap}")
    nb = _adjacency_lists(G)
    parent = [-1]
    walks = [(root,)]
    frontier = [0]
    for _ in range(depth):
        nxt = []
        for node in frontier:
            w = walks[node]
            prev = w[-2] if len(w) > 1 else -1
            for u in nb[w[-1]]:
                if u != prev:
                    parent.append(node)
                    walks.append(w + (u,))
                    nxt.append(len(walks) - 1)
        frontier = nxt
    return TreeTruncation(root, depth, tuple(parent), tuple(walks))


def _positive_definite(nb: List[List[int]], root: int, depth: int, lam: Fraction) -> bool:
    # pivots of lam*I - A eliminated from the leaves; subtrees are shared by (prev, cur, rem)
    memo: Dict[Tuple[int, int, int], Optional[Fraction]] = {}

    def pivot(prev: int, cur: int, rem: int) -> Optional[Fraction]:
        key = (prev, cur, rem)
        if key in memo:
            return memo[key]
        val = lam
        if rem:
            for u in nb[cur]:
                if u == prev:
                    continue
                p = pivot(cur, u, rem - 1)
                if p is None:
                    memo[key] = None
                    return None
                val -= 1 / p
        memo[key] = val if val > 0 else None
        return memo[key]

    return pivot(-1, root, depth) is not None


def _largest_eigen_lower(nb, root: int, depth: int, hi: Fraction, tol: Fraction) -> Fraction:
    lo = Fraction(0)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if _positive_definite(nb, root, depth, mid):
            hi = mid
        else:
            lo = mid
    return lo


def rho_estimate(G: Multigraph, depth: int, tol: Fraction = TOLERANCE, cap: int = NODE_CAP) -> RhoEstimate:
    """Certified lower bound on rho(G) from depth-``depth`` truncations of U(G).

    The bound is the largest eigenvalue of the truncation, rounded down to the
    dyadic grid of spacing ``tol`` (a power of two), maximized over roots.
    It is nondecreasing in ``depth``.
    """
    _require_simple_connected(G)
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    nb = _adjacency_lists(G)
    for r in range(G.n):
        size = truncation_size(G, r, depth)
        if size > cap:
            raise TruncationTooLarge(f"truncation has {size} nodes, cap is {cap}")
    hi = Fraction(1)
    maxdeg = max((len(x) for x in nb), default=0)
    while hi <= maxdeg:
        hi *= 2
    best = max(_largest_eigen_lower(nb, r, depth, hi, tol) for r in range(G.n))
    return RhoEstimate(best, depth)


def _is_cycle(G: Multigraph) -> bool:
    return G.n >= 3 and G.m == G.n and all(G.degree(v) == 2 for v in range(G.n))


def _is_complete(G: Multigraph) -> bool:
    return G.m == G.n * (G.n - 1) // 2


def _sqrt_upper(k: int, scale: int = 10**6) -> Fraction:
    """A rational strictly above 2*sqrt(k), within 2/scale of it."""
    target = 4 * k * scale * scale
    r = isqrt(target)
    if r * r < target:
        r += 1
    return Fraction(r + 1, scale)


def closed_form_rho(G: Multigraph) -> Optional[ClosedFormRho]:
    """Rational upper bound on rho(G) for trees, cycles and complete graphs; None otherwise."""
    _require_simple_connected(G)
    if G.m == G.n - 1:
        if G.n == 1:
            return ClosedFormRho("tree", "r(G) = 0", Fraction(0))
        p = charpoly(adjacency_matrix(G))
        up = largest_root_upper_bound(p, Fraction(1, 10**6))
        return ClosedFormRho("tree", "r(G), largest adjacency eigenvalue", up)
    if _is_cycle(G):
        return ClosedFormRho("cycle", "2", Fraction(2))
    if _is_complete(G):
        k = G.n - 2
        return ClosedFormRho("complete", f"2*sqrt({k})", _sqrt_upper(k))
    return None
