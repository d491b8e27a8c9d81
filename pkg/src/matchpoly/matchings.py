"""Matchings of multigraphs and the matching and subgraph generating polynomials.

Two multivariate conventions are in use and both are provided:

* complement convention: sum over matchings M of (-1)^|M| times the product
  of x_i over vertices *not* covered by M (``matching_poly_multivariate``);
* matched convention: sum of (-1)^|M| times the product over the vertices
  covered by M (``matching_poly_matched``). This is what the multiaffine part
  of the subgraph generating polynomial produces.

For loopless graphs ``complement_transform`` maps one onto the other.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterator, List, Tuple

from .graphs import Multigraph
from .polys import MultiPoly, UniPoly

Matching = Tuple[int, ...]

__all__ = [
    "enumerate_matchings",
    "matching_numbers",
    "matching_poly_multivariate",
    "matching_poly_matched",
    "matching_poly_univariate",
    "matched_masks",
    "subgraph_gen_poly",
]


def enumerate_matchings(G: Multigraph) -> Iterator[Matching]:
    """Every matching (as a sorted tuple of edge ids) exactly once, in lexicographic order.

    Loops never belong to a matching; parallel edges give distinct matchings.
    """
    edges = [(k, (1 << i) | (1 << j)) for k, (i, j) in enumerate(G.edges) if i != j]

    def walk(start: int, used: int, chosen: List[int]):
        yield tuple(chosen)
        for idx in range(start, len(edges)):
            k, mask = edges[idx]
            if used & mask:
                continue
            chosen.append(k)
            yield from walk(idx + 1, used | mask, chosen)
            chosen.pop()

    yield from walk(0, 0, [])


def matched_masks(G: Multigraph) -> Dict[int, int]:
    """{bitmask of covered vertices: signed count}, i.e. the matched-convention polynomial."""
    edges = [(1 << i) | (1 << j) for (i, j) in G.edges if i != j]
    out: Dict[int, int] = {}

    def walk(start: int, used: int, sign: int):
        out[used] = out.get(used, 0) + sign
        for idx in range(start, len(edges)):
            mask = edges[idx]
            if not used & mask:
                walk(idx + 1, used | mask, -sign)

    walk(0, 0, 1)
    return {m: c for m, c in out.items() if c}


def matching_numbers(G: Multigraph) -> List[int]:
    """[m_0, m_1, ...]: the number of matchings of each size."""
    n = G.n
    mult = [[0] * n for _ in range(n)]
    for i, j in G.edges:
        if i != j:
            mult[i][j] += 1
            mult[j][i] += 1
    nbrs = [[(u, mult[v][u]) for u in range(n) if mult[v][u]] for v in range(n)]

    @lru_cache(maxsize=None)
    def count(S: int) -> Tuple[int, ...]:
        if S == 0:
            return (1,)
        v = (S & -S).bit_length() - 1
        rest = S & ~(1 << v)
        acc = list(count(rest))
        for u, w in nbrs[v]:
            if rest >> u & 1:
                sub = count(rest & ~(1 << u))
                if len(acc) < len(sub) + 1:
                    acc.extend([0] * (len(sub) + 1 - len(acc)))
                for k, c in enumerate(sub):
                    acc[k + 1] += w * c
        return tuple(acc)

    return list(count((1 << n) - 1))


def matching_poly_matched(G: Multigraph) -> MultiPoly:
    """sum_M (-1)^|M| prod_{i in V(M)} x_i."""
    return MultiPoly.from_masks(G.n, matched_masks(G))


def matching_poly_multivariate(G: Multigraph) -> MultiPoly:
    """sum_M (-1)^|M| prod_{i not in V(M)} x_i."""
    full = (1 << G.n) - 1
    return MultiPoly.from_masks(G.n, {full ^ m: c for m, c in matched_masks(G).items()})


def matching_poly_univariate(G: Multigraph) -> UniPoly:
    """sum_k (-1)^k m_k x^(n-2k)."""
    coeffs = [0] * (G.n + 1)
    for k, mk in enumerate(matching_numbers(G)):
        coeffs[G.n - 2 * k] = (-1) ** k * mk
    return UniPoly(coeffs)


def subgraph_gen_poly(G: Multigraph) -> MultiPoly:
    """prod over all edges {i, j} (loops included) of (1 - x_i x_j), expanded."""
    out = MultiPoly.constant(G.n, 1)
    for i, j in G.edges:
        e = [0] * G.n
        e[i] += 1
        e[j] += 1
        out = out * MultiPoly(G.n, {(0,) * G.n: 1, tuple(e): -1})
    return out
