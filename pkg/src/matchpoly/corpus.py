"""Deterministic test corpora: small multigraphs, simple graphs, hypergraphs."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from typing import List, Tuple

from .graphs import Hypergraph, Multigraph

__all__ = [
    "small_multigraphs",
    "atlas_connected_graphs",
    "special_family_graphs",
    "random_hypergraphs",
    "random_bernoulli",
]


def _canonical(n: int, edges) -> Tuple[Tuple[int, int], ...]:
    best = None
    for p in permutations(range(n)):
        key = tuple(sorted(tuple(sorted((p[i], p[j]))) for i, j in edges))
        if best is None or key < best:
            best = key
    return best


def small_multigraphs(max_n: int = 4, max_m: int = 4, connected: bool = True) -> List[Multigraph]:
    """All multigraphs (loops and parallel edges allowed) up to isomorphism.

    Ordered by (n, m, canonical edge list).
    """
    out = []
    for n in range(1, max_n + 1):
        slots = [(i, j) for i in range(n) for j in range(i, n)]
        for m in range(max_m + 1):
            seen = set()
            for edges in combinations_with_replacement(slots, m):
                G = Multigraph(n, edges)
                if connected and not G.is_connected():
                    continue
                key = _canonical(n, edges)
                if key not in seen:
                    seen.add(key)
            out.extend(Multigraph(n, key) for key in sorted(seen))
    return out


def atlas_connected_graphs(max_n: int = 6) -> List[Multigraph]:
    """Connected simple graphs on 1..max_n vertices, one per isomorphism class, atlas order."""
    import networkx as nx

    if max_n > 7:
        raise ValueError("the graph atlas only covers graphs up to 7 vertices")
    out = []
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if 1 <= n <= max_n and nx.is_connected(g):
            out.append(Multigraph(n, tuple(sorted(tuple(sorted(e)) for e in g.edges()))))
    return out


def special_family_graphs(max_n: int = 5) -> List[Tuple[str, Multigraph]]:
    """Cycles, complete graphs and all trees on up to ``max_n`` vertices."""
    import networkx as nx

    out = []
    for n in range(3, max_n + 1):
        out.append((f"C{n}", Multigraph(n, tuple((i, (i + 1) % n) for i in range(n)))))
    for n in range(4, max_n + 1):
        out.append((f"K{n}", Multigraph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))))
    out.append(("T1", Multigraph(1, ())))
    for n in range(2, max_n + 1):
        for k, t in enumerate(nx.nonisomorphic_trees(n)):
            out.append((f"T{n}.{k}", Multigraph(n, tuple(sorted(tuple(sorted(e)) for e in t.edges())))))
    return out


def random_hypergraphs(count: int = 300, seed: int = 0, max_n: int = 8, max_m: int = 5,
                       max_edge: int = 4, max_kappa: int = 2) -> List[Tuple[Hypergraph, Tuple[int, ...]]]:
    """Seeded (hypergraph, kappa) pairs; repeated edges and singletons may occur."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_n)
        m = rng.randint(0, max_m)
        edges = []
        for _ in range(m):
            size = rng.randint(1, min(max_edge, n))
            edges.append(tuple(sorted(rng.sample(range(n), size))))
        kappa = tuple(rng.randint(0, max_kappa) for _ in range(n))
        out.append((Hypergraph(n, tuple(edges)), kappa))
    return out


def random_bernoulli(rng: random.Random, n: int, max_den: int = 10) -> List[Fraction]:
    out = []
    for _ in range(n):
        den = rng.randint(1, max_den)
        out.append(Fraction(rng.randint(0, den), den))
    return out
