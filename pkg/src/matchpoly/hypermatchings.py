"""Relaxed matchings of hypergraphs and the polynomials eta_H and eta_H^kappa.

A relaxed matching picks, from some of the edges, a subset of at least two
vertices, with the chosen subsets pairwise disjoint. Choices are labeled by
the edge id they come from, so repeated edges contribute independently.
Relaxed kappa-subgraphs drop disjointness and instead cap every vertex
degree at kappa_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .graphs import Hypergraph, delete_edge, disjoint_union
from .polys import DiffOperator, MultiPoly, UniPoly, falling_factorial, map_operator

__all__ = [
    "RelaxedMatching",
    "RelaxedSubgraph",
    "edge_subsets",
    "enumerate_relaxed_matchings",
    "enumerate_relaxed_subgraphs",
    "weight",
    "relaxed_matching_poly",
    "relaxed_matching_poly_univariate",
    "relaxed_kappa_subgraph_poly",
    "edge_operator",
    "relaxed_poly_via_operators",
    "relaxed_poly_product_form",
    "delete_vertices_weak",
    "identity_suite",
    "IdentityReport",
    "unlabeled_matching_count",
]

Choice = Tuple[int, Tuple[int, ...]]  # (edge id, chosen subset)


@dataclass(frozen=True)
class RelaxedMatching:
    pairs: Tuple[Choice, ...] = ()

    def __post_init__(self):
        ids = [k for k, _ in self.pairs]
        if len(set(ids)) != len(ids):
            raise ValueError("edge ids must be distinct")
        seen = set()
        for _, s in self.pairs:
            if len(s) < 2:
                raise ValueError("chosen subsets need at least two vertices")
            if seen & set(s):
                raise ValueError("chosen subsets must be pairwise disjoint")
            seen |= set(s)

    @property
    def vertices(self) -> frozenset:
        return frozenset(v for _, s in self.pairs for v in s)

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class RelaxedSubgraph:
    pairs: Tuple[Choice, ...] = ()

    def __post_init__(self):
        ids = [k for k, _ in self.pairs]
        if len(set(ids)) != len(ids):
            raise ValueError("edge ids must be distinct")
        if any(len(s) < 2 for _, s in self.pairs):
            raise ValueError("chosen subsets need at least two vertices")

    def degree(self, v: int) -> int:
        return sum(v in s for _, s in self.pairs)

    @property
    def vertices(self) -> frozenset:
        return frozenset(v for _, s in self.pairs for v in s)

    def __len__(self) -> int:
        return len(self.pairs)


def weight(M) -> int:
    """prod over chosen subsets of (|S| - 1)."""
    w = 1
    for _, s in M.pairs:
        w *= len(s) - 1
    return w


def edge_subsets(e: Sequence[int]) -> List[Tuple[int, ...]]:
    """Subsets of e with at least two elements, in colex order."""
    e = tuple(e)
    out = []
    for mask in range(1, 1 << len(e)):
        if bin(mask).count("1") >= 2:
            out.append(tuple(e[k] for k in range(len(e)) if mask >> k & 1))
    return out


def _mask(s) -> int:
    m = 0
    for v in s:
        m |= 1 << v
    return m


def enumerate_relaxed_matchings(H: Hypergraph) -> Iterator[RelaxedMatching]:
    """Every relaxed matching once, the empty one first.

    Edges are decided in id order; an edge is either skipped or contributes one
    of its subsets in colex order.
    """
    subs = [[(s, _mask(s)) for s in edge_subsets(e)] for e in H.edges]

    def walk(k: int, used: int, chosen: List[Choice]):
        if k == H.m:
            yield RelaxedMatching(tuple(chosen))
            return
        yield from walk(k + 1, used, chosen)
        for s, m in subs[k]:
            if not used & m:
                chosen.append((k, s))
                yield from walk(k + 1, used | m, chosen)
                chosen.pop()

    yield from walk(0, 0, [])


def enumerate_relaxed_subgraphs(H: Hypergraph, kappa: Sequence[int]) -> Iterator[RelaxedSubgraph]:
    """Every relaxed kappa-subgraph once (same order conventions as matchings)."""
    kappa = _check_kappa(H, kappa)
    subs = [edge_subsets(e) for e in H.edges]
    deg = [0] * H.n

    def walk(k: int, chosen: List[Choice]):
        if k == H.m:
            yield RelaxedSubgraph(tuple(chosen))
            return
        yield from walk(k + 1, chosen)
        for s in subs[k]:
            if all(deg[v] < kappa[v] for v in s):
                for v in s:
                    deg[v] += 1
                chosen.append((k, s))
                yield from walk(k + 1, chosen)
                chosen.pop()
                for v in s:
                    deg[v] -= 1

    yield from walk(0, [])


def _check_kappa(H: Hypergraph, kappa: Sequence[int]) -> Tuple[int, ...]:
    kappa = tuple(int(k) for k in kappa)
    if len(kappa) != H.n:
        raise ValueError(f"kappa has {len(kappa)} entries, hypergraph has {H.n} vertices")
    if any(k < 0 for k in kappa):
        raise ValueError("kappa entries must be nonnegative")
    return kappa


def _matched_masks(H: Hypergraph) -> Dict[int, int]:
    """{covered vertex mask: sum of (-1)^|M| W(M)} over relaxed matchings."""
    subs = [[(_mask(s), len(s) - 1) for s in edge_subsets(e)] for e in H.edges]
    out: Dict[int, int] = {}

    def walk(k: int, used: int, coef: int):
        if k == H.m:
            out[used] = out.get(used, 0) + coef
            return
        walk(k + 1, used, coef)
        for m, w in subs[k]:
            if not used & m:
                walk(k + 1, used | m, -coef * w)

    walk(0, 0, 1)
    return out


def relaxed_matching_poly(H: Hypergraph) -> MultiPoly:
    """eta_H(x) = sum over M of (-1)^|M| W(M) prod_{i not in V(M)} x_i."""
    full = (1 << H.n) - 1
    out: Dict[int, int] = {}
    for m, c in _matched_masks(H).items():
        out[full ^ m] = out.get(full ^ m, 0) + c
    return MultiPoly.from_masks(H.n, out)


def relaxed_matching_poly_univariate(H: Hypergraph) -> UniPoly:
    return relaxed_matching_poly(H).diagonal()


def relaxed_kappa_subgraph_poly(H: Hypergraph, kappa: Sequence[int]) -> MultiPoly:
    """eta_H^kappa by direct summation over relaxed kappa-subgraphs.

    A subgraph K contributes (-1)^|E(K)| prod (|S_e|-1) prod_i (kappa_i)_{deg_K(i)}
    times prod_i x_i^(kappa_i - deg_K(i)), the exponent applying to every vertex.
    """
    kappa = _check_kappa(H, kappa)
    out: Dict[Tuple[int, ...], int] = {}
    for K in enumerate_relaxed_subgraphs(H, kappa):
        deg = [0] * H.n
        for _, s in K.pairs:
            for v in s:
                deg[v] += 1
        c = (-1) ** len(K) * weight(K)
        for v in range(H.n):
            c *= falling_factorial(kappa[v], deg[v])
        exp = tuple(k - g for k, g in zip(kappa, deg))
        out[exp] = out.get(exp, 0) + c
    return MultiPoly(H.n, out)


def edge_operator(e: Sequence[int], nvars: int) -> DiffOperator:
    """MAP[(1 - d_e) prod_{i in e} (1 + d_i)] with d_e = sum of d_i over i in e.

    Equals 1 - sum over S in e with |S| > 1 of (|S| - 1) d^S.
    """
    op = 1 - DiffOperator.partial_sum(e, nvars)
    for i in e:
        op = op * (1 + DiffOperator.partial(i, nvars))
    return map_operator(op)


def relaxed_poly_via_operators(H: Hypergraph, kappa: Optional[Sequence[int]] = None) -> MultiPoly:
    """Product of the edge operators applied once to x^kappa (kappa defaults to all ones)."""
    kappa = _check_kappa(H, (1,) * H.n if kappa is None else kappa)
    op = DiffOperator.identity(H.n)
    for e in H.edges:
        op = op * edge_operator(e, H.n)
    return op(MultiPoly.monomial(kappa))


def relaxed_poly_product_form(H: Hypergraph) -> MultiPoly:
    """prod_e (1 - d_e) prod_i (1 + d_i)^deg(i), applied factor by factor to x_0...x_{n-1}."""
    f = MultiPoly.monomial((1,) * H.n)
    for i in range(H.n):
        step = 1 + DiffOperator.partial(i, H.n)
        for _ in range(H.degree(i)):
            f = step(f)
    for e in H.edges:
        f = (1 - DiffOperator.partial_sum(e, H.n))(f)
    return f


def unlabeled_matching_count(H: Hypergraph) -> int:
    """Number of distinct families of chosen subsets, forgetting edge labels."""
    return len({frozenset(s for _, s in M.pairs) for M in enumerate_relaxed_matchings(H)})


# ---------------------------------------------------------------------------
# structural identities
# ---------------------------------------------------------------------------


def delete_vertices_weak(H: Hypergraph, removed) -> Tuple[Hypergraph, List[int]]:
    """Weak deletion of every vertex in ``removed``; returns (H', original labels)."""
    removed = set(removed)
    labels = [v for v in range(H.n) if v not in removed]
    pos = {v: k for k, v in enumerate(labels)}
    edges = []
    for e in H.edges:
        rest = tuple(pos[v] for v in e if v in pos)
        if rest:
            edges.append(rest)
    return Hypergraph(len(labels), tuple(edges)), labels


def _eta_after_deleting(H: Hypergraph, removed) -> MultiPoly:
    """eta of H with ``removed`` weakly deleted, written in H's variables."""
    sub, labels = delete_vertices_weak(H, removed)
    return relaxed_matching_poly(sub).embed(H.n, labels)


@dataclass
class IdentityReport:
    results: Dict[str, bool] = field(default_factory=dict)
    failures: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    def to_json(self) -> dict:
        return {"ok": self.ok, "identities": dict(self.results), "failures": list(self.failures)}


def identity_suite(H: Hypergraph) -> IdentityReport:
    """Check the edge recursion, vertex recursion, disjoint-union product and
    derivative identities for eta_H, for every applicable vertex and edge."""
    report = IdentityReport()
    eta = relaxed_matching_poly(H)
    n = H.n

    def record(name: str, ok: bool, **data):
        report.results[name] = report.results.get(name, True) and ok
        if not ok:
            report.failures.append({"identity": name, **data})

    # edge recursion
    for k, e in enumerate(H.edges):
        He = delete_edge(H, k)
        rhs = relaxed_matching_poly(He)
        for s in edge_subsets(e):
            rhs = rhs - _eta_after_deleting(He, s) * (len(s) - 1)
        record("edge_recursion", rhs == eta, edge=k)
    report.results.setdefault("edge_recursion", True)

    # vertex recursion
    for i in range(n):
        rhs = MultiPoly.variable(i, n) * _eta_after_deleting(H, [i])
        for k in H.incidence(i):
            He = delete_edge(H, k)
            for s in edge_subsets(H.edges[k]):
                if i in s:
                    rhs = rhs - _eta_after_deleting(He, s) * (len(s) - 1)
        record("vertex_recursion", rhs == eta, vertex=i)
    report.results.setdefault("vertex_recursion", True)

    # disjoint union, against a copy of H and against H's own component split
    pairs = [(H, H)]
    comps = _components(H)
    if len(comps) > 1:
        first, _ = delete_vertices_weak(H, [v for v in range(n) if v not in comps[0]])
        rest, _ = delete_vertices_weak(H, comps[0])
        pairs.append((first, rest))
    for H1, H2 in pairs:
        lhs = relaxed_matching_poly(disjoint_union(H1, H2))
        N = H1.n + H2.n
        rhs = relaxed_matching_poly(H1).embed(N, range(H1.n)) * relaxed_matching_poly(H2).embed(
            N, range(H1.n, N)
        )
        record("disjoint_union", lhs == rhs, sizes=[H1.n, H2.n])

    # derivative
    for i in range(n):
        record("derivative", eta.derivative(i) == _eta_after_deleting(H, [i]), vertex=i)
    report.results.setdefault("derivative", True)
    return report


def _components(H: Hypergraph) -> List[List[int]]:
    parent = list(range(H.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in H.edges:
        for v in e[1:]:
            parent[find(v)] = find(e[0])
    groups: Dict[int, List[int]] = {}
    for v in range(H.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())
