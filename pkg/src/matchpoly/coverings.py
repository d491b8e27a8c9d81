"""d-sheeted coverings of multigraphs and averages over them.

A covering is given by one permutation of {0..d-1} per positive edge; the
negative orientation implicitly carries the inverse. Vertex (v, i) of the
covering graph has index v*d + i, and positive edge (u, w) with label s lifts
to the d edges {(u, i), (w, s(i))}.

Coverings are streamed in mixed-radix lexicographic order (edge 0 most
significant, permutations in lexicographic order of their images) and never
materialized as a list.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import check_budget
from .graphs import Multigraph, OrientedEdge, adjacency_matrix
from .groups import FiniteGroup, Permutation, symmetric_group_perms
from .linalg import charpoly, charpoly_batch
from .matchings import matched_masks, matching_numbers
from .polys import MultiPoly, UniPoly, multiaffine_product

__all__ = [
    "CoveringLabeling",
    "GroupLabeling",
    "count_coverings",
    "enumerate_coverings",
    "covering_graph",
    "d_matching_poly",
    "d_matching_poly_multivariate",
    "average_matched_over_covers",
    "edge_factor",
    "expected_cover_gen_poly",
    "expected_cover_gen_poly_map",
    "godsil_gutman_expected_charpoly",
    "std_cover_charpoly",
    "expected_cover_charpoly",
    "hps_identity_check",
    "hps_identity_report",
    "cayley_from_bouquet",
    "group_cover_matrix",
    "regular_cover_matrix",
]

CHUNK = 20000


@dataclass(frozen=True)
class CoveringLabeling:
    d: int
    perms: Tuple[Permutation, ...]

    def __post_init__(self):
        if any(p.d != self.d for p in self.perms):
            raise ValueError("every label must be a permutation of the same d points")

    def sigma(self, e: OrientedEdge) -> Permutation:
        p = self.perms[e.id]
        return p if e.sign > 0 else p.inverse()


@dataclass(frozen=True)
class GroupLabeling:
    group: FiniteGroup
    assignment: Tuple[int, ...]

    def __post_init__(self):
        for g in self.assignment:
            if not 0 <= g < self.group.order:
                raise ValueError(f"label {g} is not an element of the group")

    def gamma(self, e: OrientedEdge) -> int:
        g = self.assignment[e.id]
        return g if e.sign > 0 else self.group.inv(g)


def count_coverings(G: Multigraph, d: int) -> int:
    return factorial(d) ** G.m


def _free_edges(G: Multigraph, gauge: bool) -> Tuple[List[int], List[int]]:
    fixed = G.spanning_forest() if gauge else []
    fixed_set = set(fixed)
    return [k for k in range(G.m) if k not in fixed_set], fixed


def enumerate_coverings(
    G: Multigraph,
    d: int,
    start: int = 0,
    stop: Optional[int] = None,
    gauge: bool = False,
) -> Iterator[CoveringLabeling]:
    """Stream labelings with indices in [start, stop).

    With ``gauge=True`` the edges of a spanning forest are pinned to the
    identity. Relabelling the sheets over each vertex maps every labeling to
    exactly one pinned labeling with an isomorphic covering graph, and every
    pinned labeling has the same number of preimages, so averages of
    isomorphism invariants are unchanged.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    perms = symmetric_group_perms(d)
    ident = perms[0]
    free, _ = _free_edges(G, gauge)
    total = len(perms) ** len(free)
    stop = total if stop is None else min(stop, total)
    base = len(perms)
    for idx in range(start, stop):
        digits = []
        r = idx
        for _ in free:
            r, q = divmod(r, base)
            digits.append(q)
        digits.reverse()
        labels = [ident] * G.m
        for k, q in zip(free, digits):
            labels[k] = perms[q]
        yield CoveringLabeling(d, tuple(labels))


def _digits_array(nfree: int, base: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.zeros((stop - start, nfree), dtype=np.int64)
    for col in range(nfree - 1, -1, -1):
        out[:, col] = idx % base
        idx //= base
    return out


def covering_graph(G: Multigraph, sigma: CoveringLabeling) -> Multigraph:
    """The covering graph; a loop label contributes {(v,i), (v,s(i))} for every i."""
    if len(sigma.perms) != G.m:
        raise ValueError("labeling does not match the edge count of G")
    d = sigma.d
    edges = []
    for (u, w), s in zip(G.edges, sigma.perms):
        for i in range(d):
            edges.append((u * d + i, w * d + s(i)))
    return Multigraph(G.n * d, tuple(edges))


# ---------------------------------------------------------------------------
# d-matching polynomial
# ---------------------------------------------------------------------------


def _dmatch_partial(args) -> List[int]:
    G, d, start, stop, gauge = args
    acc = [0] * (G.n * d + 1)
    for sigma in enumerate_coverings(G, d, start, stop, gauge=gauge):
        for k, mk in enumerate(matching_numbers(covering_graph(G, sigma))):
            acc[k] += mk
    return acc


def _split(total: int, parts: int) -> List[Tuple[int, int]]:
    parts = max(1, min(parts, total)) if total else 1
    step = -(-total // parts) if total else 0
    return [(a, min(a + step, total)) for a in range(0, total, step)] if total else [(0, 0)]


def d_matching_poly(
    G: Multigraph, d: int, budget: Optional[int] = None, gauge: bool = True, workers: int = 1
) -> UniPoly:
    """mu_{d,G}(x): exact average of the matching polynomial over all d-coverings."""
    if d < 1:
        raise ValueError("d must be at least 1")
    free, _ = _free_edges(G, gauge)
    total = factorial(d) ** len(free)
    check_budget(total, budget)
    ranges = _split(total, workers)
    jobs = [(G, d, a, b, gauge) for a, b in ranges]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(_dmatch_partial, jobs))
    else:
        partials = [_dmatch_partial(j) for j in jobs]
    counts = [sum(col) for col in zip(*partials)]
    N = G.n * d
    coeffs = [Fraction(0)] * (N + 1)
    for k, c in enumerate(counts):
        if c:
            coeffs[N - 2 * k] = Fraction((-1) ** k * c, total)
    return UniPoly(coeffs)


def _sum_matched_masks(G: Multigraph, d: int, start: int, stop: int) -> Dict[int, int]:
    acc: Dict[int, int] = {}
    for sigma in enumerate_coverings(G, d, start, stop):
        for m, c in matched_masks(covering_graph(G, sigma)).items():
            acc[m] = acc.get(m, 0) + c
    return acc


def _masks_partial(args) -> Dict[int, int]:
    return _sum_matched_masks(*args)


def average_matched_over_covers(
    G: Multigraph, d: int, budget: Optional[int] = None, workers: int = 1
) -> MultiPoly:
    """Exact average over all d-coverings of the matched-convention matching polynomial."""
    total = count_coverings(G, d)
    check_budget(total, budget)
    jobs = [(G, d, a, b) for a, b in _split(total, workers)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(_masks_partial, jobs))
    else:
        partials = [_masks_partial(j) for j in jobs]
    acc: Dict[int, int] = {}
    for part in partials:
        for m, c in part.items():
            acc[m] = acc.get(m, 0) + c
    return MultiPoly.from_masks(G.n * d, {m: Fraction(c, total) for m, c in acc.items() if c})


def d_matching_poly_multivariate(G: Multigraph, d: int, budget: Optional[int] = None) -> MultiPoly:
    """Average over all d-coverings of the complement-convention multivariate matching
    polynomial, in n*d variables (variable v*d + i for sheet i over v)."""
    total = count_coverings(G, d)
    check_budget(total, budget)
    full = (1 << (G.n * d)) - 1
    acc = _sum_matched_masks(G, d, 0, total)
    return MultiPoly.from_masks(G.n * d, {full ^ m: Fraction(c, total) for m, c in acc.items() if c})


# ---------------------------------------------------------------------------
# expected subgraph generating polynomial over coverings
# ---------------------------------------------------------------------------


def _binomial(nvars: int, a: int, b: int) -> MultiPoly:
    e = [0] * nvars
    e[a] += 1
    e[b] += 1
    return MultiPoly(nvars, {(0,) * nvars: 1, tuple(e): -1})


def edge_factor(G: Multigraph, d: int, k: int) -> MultiPoly:
    """Sum over labels s of edge k of the product of (1 - x_{h,i} x_{t,s(i)}).

    For a loop the fixed points of s are skipped, so a 2-cycle contributes its
    factor twice (once from each endpoint) and a fixed point not at all.
    """
    u, w = G.edges[k]
    N = G.n * d
    out = MultiPoly(N)
    for s in symmetric_group_perms(d):
        term = MultiPoly.constant(N, 1)
        for i in range(d):
            if u == w and s(i) == i:
                continue
            term = term * _binomial(N, u * d + i, w * d + s(i))
        out = out + term
    return out


def expected_cover_gen_poly(G: Multigraph, d: int, budget: Optional[int] = None) -> MultiPoly:
    """E over d-coverings of P_sigma, expanded in full (product of per-edge factors)."""
    check_budget(factorial(d) * G.m, budget, "edge labels")
    N = G.n * d
    out = MultiPoly.constant(N, 1)
    for k in range(G.m):
        out = out * edge_factor(G, d, k)
    return out / count_coverings(G, d)


def expected_cover_gen_poly_map(G: Multigraph, d: int, budget: Optional[int] = None) -> MultiPoly:
    """Multiaffine part of ``expected_cover_gen_poly`` without forming the full product."""
    check_budget(factorial(d) * G.m, budget, "edge labels")
    N = G.n * d
    prod = multiaffine_product((edge_factor(G, d, k) for k in range(G.m)), N)
    return prod / count_coverings(G, d)


# ---------------------------------------------------------------------------
# characteristic polynomials
# ---------------------------------------------------------------------------


def godsil_gutman_expected_charpoly(G: Multigraph, budget: Optional[int] = None) -> UniPoly:
    """Average of det(xI - A^s) over all signings s of the edges of a simple graph."""
    if not G.is_simple():
        raise ValueError("Godsil-Gutman averaging needs a simple graph")
    total = 2**G.m
    check_budget(total, budget, "signings")
    acc = np.zeros(G.n + 1, dtype=object)
    for a in range(0, total, CHUNK):
        b = min(a + CHUNK, total)
        bits = _digits_array(G.m, 2, a, b)
        signs = 1 - 2 * bits
        mats = np.zeros((b - a, G.n, G.n), dtype=np.int64)
        for k, (i, j) in enumerate(G.edges):
            mats[:, i, j] += signs[:, k]
            mats[:, j, i] += signs[:, k]
        acc += charpoly_batch(mats).astype(object).sum(axis=0)
    return UniPoly(Fraction(int(c), total) for c in acc)


def std_cover_charpoly(G: Multigraph, sigma: CoveringLabeling) -> UniPoly:
    """det(xI - A) for the (S_d, std)-covering, as charpoly(H) / charpoly(G).

    The permutation representation splits as std plus the trivial
    representation, whose block is A_G, so the division must be exact.
    """
    H = covering_graph(G, sigma)
    num = charpoly(adjacency_matrix(H))
    den = charpoly(adjacency_matrix(G))
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError("charpoly(G) does not divide charpoly(H): inconsistent covering")
    return q


def _cover_mats(G: Multigraph, d: int, perm_mats: np.ndarray, free: List[int], digits: np.ndarray) -> np.ndarray:
    B = digits.shape[0]
    N = G.n * d
    mats = np.zeros((B, N, N), dtype=np.int64)
    ident = perm_mats[0]
    col = {k: c for c, k in enumerate(free)}
    for k, (u, w) in enumerate(G.edges):
        P = perm_mats[digits[:, col[k]]] if k in col else np.broadcast_to(ident, (B, d, d))
        mats[:, u * d:(u + 1) * d, w * d:(w + 1) * d] += P
        mats[:, w * d:(w + 1) * d, u * d:(u + 1) * d] += P.transpose(0, 2, 1)
    return mats


def expected_cover_charpoly(
    G: Multigraph, d: int, budget: Optional[int] = None, gauge: bool = True
) -> UniPoly:
    """Exact average of charpoly(H) over all d-sheeted coverings H of G."""
    perms = symmetric_group_perms(d)
    perm_mats = np.array([p.matrix() for p in perms], dtype=np.int64)
    free, _ = _free_edges(G, gauge)
    total = len(perms) ** len(free)
    check_budget(total, budget)
    N = G.n * d
    acc = np.zeros(N + 1, dtype=object)
    for a in range(0, total, CHUNK):
        b = min(a + CHUNK, total)
        digits = _digits_array(len(free), len(perms), a, b)
        mats = _cover_mats(G, d, perm_mats, free, digits)
        acc += charpoly_batch(mats).astype(object).sum(axis=0)
    return UniPoly(Fraction(int(c), total) for c in acc)


@dataclass(frozen=True)
class HPSReport:
    d: int
    sheets: int
    expected_std_charpoly: UniPoly
    d_matching: UniPoly
    expected_cover_charpoly: UniPoly
    passed: bool


def hps_identity_report(G: Multigraph, d: int, budget: Optional[int] = None) -> HPSReport:
    """Compare the expected std-representation characteristic polynomial with mu_{d,G}.

    ``d`` is the dimension of the representation, so labelings range over
    S_{d+1}. Both forms are checked: E[charpoly(H)] / charpoly(G) = mu_{d,G}
    and E[charpoly(H)] = mu_{d,G} * charpoly(G).
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    cover = expected_cover_charpoly(G, d + 1, budget)
    base = charpoly(adjacency_matrix(G))
    q, r = divmod(cover, base)
    mu = d_matching_poly(G, d, budget)
    passed = not r and q == mu and cover == mu * base
    return HPSReport(d, d + 1, q, mu, cover, passed)


def hps_identity_check(G: Multigraph, d: int, budget: Optional[int] = None) -> bool:
    return hps_identity_report(G, d, budget).passed


# ---------------------------------------------------------------------------
# group labelings and Cayley graphs
# ---------------------------------------------------------------------------


def group_cover_matrix(G: Multigraph, labeling: GroupLabeling, rep) -> List[List[int]]:
    """A_{gamma,rep}: block (i, j) is the sum of rep(gamma(e)) over oriented edges e from i to j.

    ``rep`` maps a group element to a square integer matrix.
    """
    dim = len(rep(labeling.group.identity))
    N = G.n * dim
    A = [[0] * N for _ in range(N)]
    for e in G.oriented_edges():
        i, j = e.head(G), e.tail(G)
        M = rep(labeling.gamma(e))
        for a in range(dim):
            for b in range(dim):
                A[i * dim + a][j * dim + b] += M[a][b]
    return A


def regular_cover_matrix(G: Multigraph, labeling: GroupLabeling) -> List[List[int]]:
    return group_cover_matrix(G, labeling, labeling.group.regular_matrix)


def cayley_from_bouquet(gens: Sequence[int], group: FiniteGroup) -> Tuple[Multigraph, List[int]]:
    """Cayley graph of ``group`` for ``gens``: edge {h, g*h} for each generator g and element h.

    Equals the regular-representation covering of the bouquet with one loop
    per generator. Returns the graph and the element index of each vertex.
    """
    for g in gens:
        if not 0 <= g < group.order:
            raise ValueError(f"generator {g} is not an element of the group")
    edges = [(h, group.mul(g, h)) for g in gens for h in range(group.order)]
    return Multigraph(group.order, tuple(edges)), list(range(group.order))
