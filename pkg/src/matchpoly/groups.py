"""Permutations and small finite groups given by multiplication tables."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations
from typing import List, Sequence, Tuple

__all__ = ["Permutation", "FiniteGroup", "GroupFormatError", "symmetric_group_perms"]


class GroupFormatError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Permutation:
    """Bijection of {0, ..., d-1}; ``image[i]`` is where i goes."""

    image: Tuple[int, ...]

    def __post_init__(self):
        img = tuple(int(v) for v in self.image)
        if sorted(img) != list(range(len(img))):
            raise ValueError(f"{img} is not a permutation")
        object.__setattr__(self, "image", img)

    @classmethod
    def identity(cls, d: int) -> "Permutation":
        return cls(tuple(range(d)))

    @classmethod
    def from_cycles(cls, d: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        img = list(range(d))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(tuple(img))

    @property
    def d(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (self * other)(i) = self(other(i))."""
        return Permutation(tuple(self.image[j] for j in other.image))

    def inverse(self) -> "Permutation":
        inv = [0] * self.d
        for i, j in enumerate(self.image):
            inv[j] = i
        return Permutation(tuple(inv))

    def fixed_points(self) -> List[int]:
        return [i for i, j in enumerate(self.image) if i == j]

    def matrix(self) -> List[List[int]]:
        """Row convention: entry (i, sigma(i)) is 1."""
        M = [[0] * self.d for _ in range(self.d)]
        for i, j in enumerate(self.image):
            M[i][j] = 1
        return M

    def cycles(self) -> List[Tuple[int, ...]]:
        seen, out = set(), []
        for s in range(self.d):
            if s in seen:
                continue
            cyc = [s]
            seen.add(s)
            j = self.image[s]
            while j != s:
                cyc.append(j)
                seen.add(j)
                j = self.image[j]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = [c for c in self.cycles() if len(c) > 1]
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def symmetric_group_perms(d: int) -> List[Permutation]:
    """All of S_d in lexicographic order of images."""
    return [Permutation(p) for p in permutations(range(d))]


class FiniteGroup:
    """Group on abstract elements 0..N-1 with ``table[a][b] = a*b``.

    ``perms`` optionally records a permutation realization of each element.
    """

    def __init__(self, table: Sequence[Sequence[int]], perms: Sequence[Permutation] | None = None,
                 check: bool = True, max_order: int = 120):
        self.table = [list(row) for row in table]
        self.order = len(self.table)
        self.perms = list(perms) if perms is not None else None
        if self.order > max_order:
            raise GroupFormatError(f"group order {self.order} exceeds cap {max_order}")
        if check:
            self._validate()
        self.identity = self._find_identity()
        self.inverses = [self._find_inverse(a) for a in range(self.order)]

    def _find_identity(self) -> int:
        for e in range(self.order):
            if all(self.table[e][a] == a and self.table[a][e] == a for a in range(self.order)):
                return e
        raise GroupFormatError("no identity element")

    def _find_inverse(self, a: int) -> int:
        e = self.identity
        for b in range(self.order):
            if self.table[a][b] == e and self.table[b][a] == e:
                return b
        raise GroupFormatError(f"element {a} has no inverse")

    def _validate(self) -> None:
        N = self.order
        if N == 0:
            raise GroupFormatError("empty group")
        for row in self.table:
            if len(row) != N or any(not (0 <= v < N) for v in row):
                raise GroupFormatError("multiplication table is not N x N over 0..N-1")
        self.identity = self._find_identity()
        for a in range(N):
            self._find_inverse(a)
        # associativity: exhaustive for small groups, sampled otherwise
        if N ** 3 <= 30000:
            triples = ((a, b, c) for a in range(N) for b in range(N) for c in range(N))
        else:
            rng = random.Random(0)
            triples = ((rng.randrange(N), rng.randrange(N), rng.randrange(N)) for _ in range(30000))
        t = self.table
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise GroupFormatError(f"table is not associative at ({a}, {b}, {c})")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def regular_matrix(self, g: int) -> List[List[int]]:
        """Left-translation permutation matrix, row convention: entry (h, g*h) is 1."""
        M = [[0] * self.order for _ in range(self.order)]
        for h in range(self.order):
            M[h][self.table[g][h]] = 1
        return M

    @classmethod
    def from_permutations(cls, gens: Sequence[Permutation], max_order: int = 120) -> "FiniteGroup":
        """Close ``gens`` under composition (BFS from the identity, left multiplication)."""
        if not gens:
            raise GroupFormatError("need at least one generator")
        d = gens[0].d
        if any(g.d != d for g in gens):
            raise GroupFormatError("generators act on different sets")
        ident = Permutation.identity(d)
        elems = [ident]
        index = {ident: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for h in frontier:
                for g in gens:
                    p = g * h
                    if p not in index:
                        index[p] = len(elems)
                        elems.append(p)
                        nxt.append(p)
                        if len(elems) > max_order:
                            raise GroupFormatError(f"generated group exceeds order cap {max_order}")
            frontier = nxt
        table = [[index[a * b] for b in elems] for a in elems]
        return cls(table, elems, check=False, max_order=max_order)

    @classmethod
    def symmetric(cls, d: int) -> "FiniteGroup":
        elems = symmetric_group_perms(d)
        index = {p: k for k, p in enumerate(elems)}
        table = [[index[a * b] for b in elems] for a in elems]
        return cls(table, elems, check=False)

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        return cls([[(a + b) % n for b in range(n)] for a in range(n)], check=False)

    @classmethod
    def from_json(cls, obj) -> "FiniteGroup":
        if not isinstance(obj, dict):
            raise GroupFormatError("group JSON must be an object")
        if "table" in obj:
            table = obj["table"]
            if "order" in obj and obj["order"] != len(table):
                raise GroupFormatError("order does not match table size")
            return cls(table)
        if "perm_gens" in obj:
            try:
                gens = [Permutation(tuple(g)) for g in obj["perm_gens"]]
            except (TypeError, ValueError) as exc:
                raise GroupFormatError(str(exc)) from None
            return cls.from_permutations(gens)
        raise GroupFormatError("group JSON needs 'table' or 'perm_gens'")
