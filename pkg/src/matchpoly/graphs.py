"""Finite multigraphs with loops, their oriented-edge view, and hypergraphs."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Tuple

__all__ = [
    "Multigraph",
    "OrientedEdge",
    "Hypergraph",
    "GraphFormatError",
    "adjacency_matrix",
    "delete_vertex_weak",
    "delete_edge",
    "disjoint_union",
    "load_graph",
    "parse_graph",
]


class GraphFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph on vertices 0..n-1.

    ``edges[k]`` is the k-th edge as a pair (i, j); i == j is a loop and
    repeated pairs are parallel edges. The list position is the edge identity.
    Edge k, read as (i, j), is the positive orientation: head i, tail j.
    """

    n: int
    edges: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise GraphFormatError("vertex count must be nonnegative")
        clean = []
        for e in self.edges:
            if len(e) != 2:
                raise GraphFormatError(f"edge {e!r} does not have two endpoints")
            i, j = int(e[0]), int(e[1])
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise GraphFormatError(f"edge {e!r} out of range for n={self.n}")
            clean.append((i, j))
        object.__setattr__(self, "edges", tuple(clean))

    @property
    def m(self) -> int:
        return len(self.edges)

    def is_loop(self, k: int) -> bool:
        i, j = self.edges[k]
        return i == j

    def loops(self) -> List[int]:
        """Ids of the positively oriented loops."""
        return [k for k, (i, j) in enumerate(self.edges) if i == j]

    def is_simple(self) -> bool:
        seen = set()
        for i, j in self.edges:
            if i == j:
                return False
            key = (min(i, j), max(i, j))
            if key in seen:
                return False
            seen.add(key)
        return True

    def degree(self, v: int) -> int:
        """Degree with loops counted twice."""
        return sum((i == v) + (j == v) for i, j in self.edges)

    def neighbors(self, v: int) -> List[int]:
        out = []
        for i, j in self.edges:
            if i == v:
                out.append(j)
            if j == v and i != v:
                out.append(i)
        return out

    def oriented_edges(self) -> Iterator["OrientedEdge"]:
        for k in range(self.m):
            yield OrientedEdge(k, +1)
            yield OrientedEdge(k, -1)

    def components(self) -> List[List[int]]:
        parent = list(range(self.n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i, j in self.edges:
            parent[find(i)] = find(j)
        groups: Dict[int, List[int]] = {}
        for v in range(self.n):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def spanning_forest(self) -> List[int]:
        """Edge ids of a spanning forest (first-come order, loops never chosen)."""
        parent = list(range(self.n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        out = []
        for k, (i, j) in enumerate(self.edges):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
                out.append(k)
        return out

    def induced(self, subset: Sequence[int]) -> Tuple["Multigraph", List[int]]:
        """Subgraph induced on ``subset``; returns it with the old label of each new vertex."""
        keep = sorted(set(subset))
        pos = {v: k for k, v in enumerate(keep)}
        edges = tuple((pos[i], pos[j]) for i, j in self.edges if i in pos and j in pos)
        return Multigraph(len(keep), edges), keep

    def to_json(self) -> dict:
        return {"type": "multigraph", "n": self.n, "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class OrientedEdge:
    id: int
    sign: int

    def __neg__(self) -> "OrientedEdge":
        return OrientedEdge(self.id, -self.sign)

    def head(self, G: Multigraph) -> int:
        i, j = G.edges[self.id]
        return i if self.sign > 0 else j

    def tail(self, G: Multigraph) -> int:
        i, j = G.edges[self.id]
        return j if self.sign > 0 else i


@dataclass(frozen=True)
class Hypergraph:
    """Hypergraph on vertices 0..n-1; each edge is a sorted tuple of distinct vertices."""

    n: int
    edges: Tuple[Tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise GraphFormatError("vertex count must be nonnegative")
        clean = []
        for e in self.edges:
            s = tuple(sorted(set(int(v) for v in e)))
            if not s:
                raise GraphFormatError("hyperedges must be nonempty")
            if s[0] < 0 or s[-1] >= self.n:
                raise GraphFormatError(f"hyperedge {e!r} out of range for n={self.n}")
            clean.append(s)
        object.__setattr__(self, "edges", tuple(clean))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum(v in e for e in self.edges)

    def incidence(self, v: int) -> List[int]:
        return [k for k, e in enumerate(self.edges) if v in e]

    def is_linear(self) -> bool:
        for a in range(self.m):
            for b in range(a + 1, self.m):
                if len(set(self.edges[a]) & set(self.edges[b])) > 1:
                    return False
        return True

    @classmethod
    def from_graph(cls, G: Multigraph) -> "Hypergraph":
        return cls(G.n, tuple(e for e in G.edges))

    def to_json(self) -> dict:
        return {"type": "hypergraph", "n": self.n, "edges": [list(e) for e in self.edges]}


def adjacency_matrix(G: Multigraph) -> List[List[int]]:
    """Adjacency matrix; a loop adds 2 to its diagonal entry (one per orientation)."""
    A = [[0] * G.n for _ in range(G.n)]
    for i, j in G.edges:
        A[i][j] += 1
        A[j][i] += 1
    return A


def delete_vertex_weak(H: Hypergraph, i: int) -> Tuple[Hypergraph, List[int]]:
    """Remove vertex i and intersect every edge with the remaining vertices.

    Edges that become empty are dropped. Returns the new hypergraph and, for
    each new vertex, its label in H.
    """
    if not 0 <= i < H.n:
        raise IndexError(f"vertex {i} not in hypergraph on {H.n} vertices")
    labels = [v for v in range(H.n) if v != i]
    pos = {v: k for k, v in enumerate(labels)}
    edges = []
    for e in H.edges:
        rest = tuple(pos[v] for v in e if v != i)
        if rest:
            edges.append(rest)
    return Hypergraph(H.n - 1, tuple(edges)), labels


def delete_edge(H: Hypergraph, k: int) -> Hypergraph:
    if not 0 <= k < H.m:
        raise IndexError(f"edge {k} not in hypergraph with {H.m} edges")
    return Hypergraph(H.n, H.edges[:k] + H.edges[k + 1 :])


def disjoint_union(H1: Hypergraph, H2: Hypergraph) -> Hypergraph:
    shifted = tuple(tuple(v + H1.n for v in e) for e in H2.edges)
    return Hypergraph(H1.n + H2.n, H1.edges + shifted)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


def _check_vertex_list(raw, n):
    for v in raw:
        if not isinstance(v, int) or isinstance(v, bool):
            raise GraphFormatError(f"vertex {v!r} is not an integer")
        if v < 0:
            raise GraphFormatError(f"negative vertex index {v}")
        if v >= n:
            raise GraphFormatError(f"vertex index {v} >= n={n}")


def parse_graph(obj) -> Multigraph | Hypergraph:
    """Build a Multigraph or Hypergraph from decoded JSON."""
    if not isinstance(obj, dict):
        raise GraphFormatError("graph JSON must be an object")
    kind = obj.get("type", "multigraph")
    try:
        n = obj["n"]
        raw_edges = obj.get("edges", [])
    except KeyError as exc:
        raise GraphFormatError(f"missing field {exc}") from None
    if not isinstance(n, int) or n < 0:
        raise GraphFormatError("n must be a nonnegative integer")
    for e in raw_edges:
        if not isinstance(e, list):
            raise GraphFormatError(f"edge {e!r} is not a list")
        _check_vertex_list(e, n)
    if kind == "multigraph":
        for e in raw_edges:
            if len(e) != 2:
                raise GraphFormatError(f"edge {e!r} does not have two endpoints")
        return Multigraph(n, tuple(tuple(e) for e in raw_edges))
    if kind == "hypergraph":
        for e in raw_edges:
            if not e:
                raise GraphFormatError("hyperedges must be nonempty")
        return Hypergraph(n, tuple(tuple(e) for e in raw_edges))
    raise GraphFormatError(f"unknown graph type {kind!r}")


def parse_edge_list(text: str) -> Multigraph:
    """Plain-text format: first line n, then one edge 'i j' per line."""
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphFormatError("empty edge list")
    try:
        n = int(lines[0])
        pairs = [tuple(int(t) for t in ln.split()) for ln in lines[1:]]
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None
    for p in pairs:
        if len(p) != 2:
            raise GraphFormatError(f"edge line {p!r} does not have two endpoints")
        _check_vertex_list(list(p), n)
    return Multigraph(n, tuple(pairs))


def load_graph(path: str) -> Multigraph | Hypergraph:
    with open(path) as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"malformed JSON: {exc.msg}") from None
        return parse_graph(obj)
    return parse_edge_list(text)
