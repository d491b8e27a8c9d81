"""Exact sparse multivariate and dense univariate polynomials over the rationals.

Everything here is immutable. Coefficients are ``fractions.Fraction``; no
floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

Exponent = Tuple[int, ...]

__all__ = [
    "MultiPoly",
    "UniPoly",
    "DiffOperator",
    "map_multiaffine_part",
    "map_operator",
    "apply_operator",
    "complement_transform",
    "falling_factorial",
    "multiaffine_product",
]


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(c)


def falling_factorial(n: int, k: int) -> int:
    """(n)_k = n(n-1)...(n-k+1); zero when k > n >= 0."""
    out = 1
    for j in range(k):
        out *= n - j
    return out


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# --------------------------------------------------------------------------
# univariate
# --------------------------------------------------------------------------


class UniPoly:
    """Dense univariate polynomial, coefficients stored low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __call__(self, t):
        acc = Fraction(0) if not isinstance(t, int) else 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly((other,))
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            other = UniPoly((other,))
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            other = UniPoly((other,))
        return self + (-other)

    def __rsub__(self, other) -> "UniPoly":
        return (-self) + other

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = _frac(other)
            return UniPoly(c * a for a in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return UniPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "UniPoly":
        c = _frac(c)
        return UniPoly(a / c for a in self.coeffs)

    def __pow__(self, k: int) -> "UniPoly":
        out = UniPoly((1,))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        lb = other.lc
        q = [Fraction(0)] * max(len(r) - db, 0)
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] / lb
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    r[k + j] -= c * b
        return UniPoly(q), UniPoly(r[:db])

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def derivative(self) -> "UniPoly":
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> "UniPoly":
        return self / self.lc if self.coeffs else self

    @staticmethod
    def gcd(a: "UniPoly", b: "UniPoly") -> "UniPoly":
        while b:
            a, b = b, a % b
        return a.monic()

    def compose_linear(self, a, b) -> "UniPoly":
        """p(a*t + b)."""
        lin = UniPoly((b, a))
        out = UniPoly()
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def integer_coeffs(self) -> list[int]:
        """Primitive integer coefficient list with the same roots (positive multiple)."""
        if not self.coeffs:
            return []
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for c in ints:
            g = gcd(g, c)
        return [c // g for c in ints]

    def to_json(self) -> dict:
        return {"coeffs": [{"num": str(c.numerator), "den": str(c.denominator)} for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "UniPoly":
        return cls(Fraction(int(t["num"]), int(t["den"])) for t in obj["coeffs"])

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = _fmt_coeff(a)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if a == 1 else f"{_fmt_coeff(a)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"UniPoly({self})"


# --------------------------------------------------------------------------
# multivariate
# --------------------------------------------------------------------------


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables x0..x{n-1} with rational coefficients.

    ``terms`` maps exponent tuples of length ``nvars`` to nonzero Fractions.
    """

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        clean: Dict[Exponent, Fraction] = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != nvars:
                    raise ValueError(f"exponent {exp} does not have length {nvars}")
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                c = _frac(c)
                if c:
                    clean[exp] = clean.get(exp, 0) + c
                    if not clean[exp]:
                        del clean[exp]
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exponent, Fraction]) -> "MultiPoly":
        # trusted constructor: terms already normalized
        obj = object.__new__(cls)
        object.__setattr__(obj, "nvars", nvars)
        object.__setattr__(obj, "_terms", terms)
        return obj

    @classmethod
    def constant(cls, nvars: int, c=1) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "MultiPoly":
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, {tuple(exp): 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "MultiPoly":
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def from_masks(cls, nvars: int, masks: Mapping[int, object]) -> "MultiPoly":
        """Multiaffine polynomial from {bitmask of variables: coefficient}."""
        terms = {}
        for m, c in masks.items():
            if c:
                terms[tuple((m >> i) & 1 for i in range(nvars))] = _frac(c)
        return cls._raw(nvars, terms)

    def to_masks(self) -> Dict[int, Fraction]:
        if not self.is_multiaffine():
            raise ValueError("polynomial is not multiaffine")
        return {sum(1 << i for i, e in enumerate(exp) if e): c for exp, c in self._terms.items()}

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponent, Fraction]]:
        """Terms in lexicographic exponent order."""
        for exp in sorted(self._terms):
            yield exp, self._terms[exp]

    def __len__(self) -> int:
        return len(self._terms)

    def coeff(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def is_multiaffine(self) -> bool:
        return all(max(e, default=0) <= 1 for e in self._terms)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "MultiPoly") -> None:
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.nvars, other)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        out = dict(self._terms)
        for exp, c in other._terms.items():
            v = out.get(exp, 0) + c
            if v:
                out[exp] = v
            else:
                out.pop(exp, None)
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = _frac(other)
            if not c:
                return MultiPoly._raw(self.nvars, {})
            return MultiPoly._raw(self.nvars, {e: c * a for e, a in self._terms.items()})
        self._check(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, c) -> "MultiPoly":
        c = _frac(c)
        return MultiPoly._raw(self.nvars, {e: a / c for e, a in self._terms.items()})

    def __pow__(self, k: int) -> "MultiPoly":
        out = MultiPoly.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    # -- calculus and substitution -------------------------------------------

    def derivative(self, i: int, k: int = 1) -> "MultiPoly":
        out = {}
        for exp, c in self._terms.items():
            if exp[i] >= k:
                e = list(exp)
                e[i] -= k
                out[tuple(e)] = c * falling_factorial(exp[i], k)
        return MultiPoly._raw(self.nvars, out)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        pt = [_frac(p) for p in point]
        total = Fraction(0)
        for exp, c in self._terms.items():
            v = c
            for p, e in zip(pt, exp):
                if e:
                    v *= p**e
            total += v
        return total

    def diagonal(self) -> UniPoly:
        """Specialize x_i = x for every i."""
        out: Dict[int, Fraction] = {}
        for exp, c in self._terms.items():
            d = sum(exp)
            out[d] = out.get(d, 0) + c
        if not out:
            return UniPoly()
        return UniPoly(out.get(k, 0) for k in range(max(out) + 1))

    def embed(self, nvars: int, positions: Sequence[int]) -> "MultiPoly":
        """Rename variable j to ``positions[j]`` inside a ring of ``nvars`` variables."""
        if len(positions) != self.nvars:
            raise ValueError("positions must list one target per variable")
        out = {}
        for exp, c in self._terms.items():
            e = [0] * nvars
            for j, a in enumerate(exp):
                if a:
                    e[positions[j]] += a
            e = tuple(e)
            out[e] = out.get(e, 0) + c
        return MultiPoly(nvars, out)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [
                {"exp": list(exp), "num": str(c.numerator), "den": str(c.denominator)}
                for exp, c in self.items()
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "MultiPoly":
        n = int(obj["nvars"])
        terms: Dict[Exponent, Fraction] = {}
        for t in obj["terms"]:
            exp = tuple(int(e) for e in t["exp"])
            c = Fraction(int(t["num"]), int(t["den"]))
            terms[exp] = terms.get(exp, 0) + c
        return cls(n, terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exp in sorted(self._terms, reverse=True):
            c = self._terms[exp]
            mono = "*".join(
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exp) if e
            )
            a = abs(c)
            if not mono:
                body = _fmt_coeff(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fmt_coeff(a)}*{mono}"
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {self})"


class DiffOperator:
    """Constant-coefficient differential operator sum_a c_a d^a.

    Stored through its symbol: the polynomial obtained by replacing each
    partial derivative d_i with the variable x_i. Composition of operators is
    multiplication of symbols.
    """

    __slots__ = ("symbol",)

    def __init__(self, symbol: MultiPoly):
        object.__setattr__(self, "symbol", symbol)

    def __setattr__(self, name, value):
        raise AttributeError("DiffOperator is immutable")

    @classmethod
    def identity(cls, nvars: int) -> "DiffOperator":
        return cls(MultiPoly.constant(nvars, 1))

    @classmethod
    def partial(cls, i: int, nvars: int) -> "DiffOperator":
        return cls(MultiPoly.variable(i, nvars))

    @classmethod
    def partial_sum(cls, subset: Iterable[int], nvars: int) -> "DiffOperator":
        """d_S = sum of d_i over i in S."""
        return cls(MultiPoly(nvars, {tuple(int(j == i) for j in range(nvars)): 1 for i in subset}))

    @classmethod
    def partial_product(cls, subset: Iterable[int], nvars: int) -> "DiffOperator":
        """d^S = product of d_i over i in S."""
        s = set(subset)
        return cls(MultiPoly.monomial(tuple(int(j in s) for j in range(nvars))))

    @property
    def nvars(self) -> int:
        return self.symbol.nvars

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return self.symbol.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, DiffOperator) and self.symbol == other.symbol

    def __hash__(self) -> int:
        return hash(("D", self.symbol))

    def __add__(self, other) -> "DiffOperator":
        other = other.symbol if isinstance(other, DiffOperator) else other
        return DiffOperator(self.symbol + other)

    __radd__ = __add__

    def __neg__(self) -> "DiffOperator":
        return DiffOperator(-self.symbol)

    def __sub__(self, other) -> "DiffOperator":
        other = other.symbol if isinstance(other, DiffOperator) else other
        return DiffOperator(self.symbol - other)

    def __rsub__(self, other) -> "DiffOperator":
        return DiffOperator(other - self.symbol)

    def __mul__(self, other) -> "DiffOperator":
        other = other.symbol if isinstance(other, DiffOperator) else other
        return DiffOperator(self.symbol * other)

    __rmul__ = __mul__

    def __call__(self, f: MultiPoly) -> MultiPoly:
        return apply_operator(self, f)

    def __str__(self) -> str:
        return str(self.symbol).replace("x", "d")

    def __repr__(self) -> str:
        return f"DiffOperator({self})"


def map_multiaffine_part(f: MultiPoly) -> MultiPoly:
    """Drop every term in which some variable has exponent >= 2."""
    return MultiPoly._raw(f.nvars, {e: c for e, c in f._terms.items() if max(e, default=0) <= 1})


def map_operator(op: DiffOperator) -> DiffOperator:
    return DiffOperator(map_multiaffine_part(op.symbol))


def apply_operator(op: DiffOperator, f: MultiPoly) -> MultiPoly:
    if op.nvars != f.nvars:
        raise ValueError(f"variable count mismatch: {op.nvars} vs {f.nvars}")
    out: Dict[Exponent, Fraction] = {}
    for alpha, a in op.symbol._terms.items():
        for beta, b in f._terms.items():
            w = a * b
            for ai, bi in zip(alpha, beta):
                if ai > bi:
                    w = 0
                    break
                if ai:
                    w *= falling_factorial(bi, ai)
            if w:
                e = tuple(bi - ai for ai, bi in zip(alpha, beta))
                out[e] = out.get(e, 0) + w
    return MultiPoly._raw(f.nvars, {e: c for e, c in out.items() if c})


def complement_transform(f: MultiPoly) -> MultiPoly:
    """(x_1...x_n) * f(-1/x_1, ..., -1/x_n) for multiaffine f.

    A term c*x^S becomes c*(-1)^|S| x^([n] minus S).
    """
    if not f.is_multiaffine():
        raise ValueError("complement_transform needs a multiaffine polynomial")
    out = {}
    for exp, c in f._terms.items():
        k = sum(exp)
        out[tuple(1 - e for e in exp)] = -c if k % 2 else c
    return MultiPoly._raw(f.nvars, out)


def multiaffine_product(factors: Iterable[MultiPoly], nvars: int) -> MultiPoly:
    """MAP of a product, computed without ever forming non-multiaffine terms.

    Valid because exponents only grow under multiplication, so
    MAP(f*g) = MAP(MAP(f) * MAP(g)).
    """
    acc: Dict[int, Fraction] = {0: Fraction(1)}
    for f in factors:
        if f.nvars != nvars:
            raise ValueError("variable count mismatch")
        fm = map_multiaffine_part(f).to_masks()
        nxt: Dict[int, Fraction] = {}
        for m1, c1 in acc.items():
            for m2, c2 in fm.items():
                if m1 & m2:
                    continue
                m = m1 | m2
                nxt[m] = nxt.get(m, 0) + c1 * c2
        acc = {m: c for m, c in nxt.items() if c}
    return MultiPoly.from_masks(nvars, acc)


def expand_product(factors: Iterable[MultiPoly], nvars: int) -> MultiPoly:
    out = MultiPoly.constant(nvars, 1)
    for f in factors:
        out = out * f
    return out


def elementary_symmetric(n: int, k: int) -> MultiPoly:
    """e_k(x_0, ..., x_{n-1})."""
    from itertools import combinations

    return MultiPoly(n, {tuple(int(i in s) for i in range(n)): 1 for s in combinations(range(n), k)})
