"""Real-root counting and isolation with Sturm chains in exact integer arithmetic."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

from .polys import UniPoly

Interval = Tuple[Fraction, Fraction]

__all__ = [
    "squarefree_part",
    "sturm_chain",
    "count_real_roots",
    "count_roots_in",
    "is_real_rooted",
    "isolate_real_roots",
    "check_roots_bounded",
    "largest_root_upper_bound",
]


def _primitive(c: List[int]) -> List[int]:
    while c and c[-1] == 0:
        c.pop()
    g = 0
    for a in c:
        g = gcd(g, a)
    if g > 1:
        c = [a // g for a in c]
    return c


def _prem_sign_safe(a: List[int], b: List[int]) -> List[int]:
    """A positive multiple of rem(a, b), integer-only."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    mult = abs(lb)
    sgn = 1 if lb > 0 else -1
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        top = r[-1]
        # r <- |lb| * r - sgn*top * x^k * b ; leading term cancels
        r = [mult * c for c in r]
        for j, bc in enumerate(b):
            r[k + j] -= sgn * top * bc
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return r


def _int_gcd_poly(a: List[int], b: List[int]) -> List[int]:
    a, b = _primitive(list(a)), _primitive(list(b))
    while b:
        a, b = b, _primitive(_prem_sign_safe(a, b))
    if a and a[-1] < 0:
        a = [-c for c in a]
    return a


def _int_exact_div(a: List[int], b: List[int]) -> List[int]:
    q = UniPoly(a).exact_div(UniPoly(b))
    return q.integer_coeffs()


def _as_ints(p) -> List[int]:
    if isinstance(p, UniPoly):
        return p.integer_coeffs()
    return _primitive([int(c) for c in p])


def squarefree_part(p: UniPoly) -> UniPoly:
    """p / gcd(p, p'), made primitive with positive leading coefficient."""
    c = _as_ints(p)
    if len(c) <= 2:
        return UniPoly(c)
    d = [i * a for i, a in enumerate(c) if i]
    g = _int_gcd_poly(c, d)
    if len(g) <= 1:
        return UniPoly(c)
    return UniPoly(_int_exact_div(c, g))


def sturm_chain(p: UniPoly) -> List[List[int]]:
    """Sturm sequence of p as integer coefficient lists (positive rescalings allowed)."""
    c = _as_ints(p)
    if not c:
        return []
    chain = [c]
    d = _primitive([i * a for i, a in enumerate(c) if i])
    while d:
        chain.append(d)
        r = _prem_sign_safe(chain[-2], chain[-1])
        d = _primitive([-x for x in r])
    return chain


def _sign_at(c: Sequence[int], t: Fraction) -> int:
    # sign of den^deg * p(num/den), by Horner on the homogenised polynomial
    num, den = t.numerator, t.denominator
    acc = c[-1]
    dpow = 1
    for k in range(len(c) - 2, -1, -1):
        dpow *= den
        acc = acc * num + c[k] * dpow
    return (acc > 0) - (acc < 0)


def _sign_at_inf(c: Sequence[int], positive: bool) -> int:
    lc = c[-1]
    s = (lc > 0) - (lc < 0)
    if not positive and (len(c) - 1) % 2:
        s = -s
    return s


def _variations(signs: Sequence[int]) -> int:
    v = 0
    last = 0
    for s in signs:
        if s:
            if last and s != last:
                v += 1
            last = s
    return v


def _var_at(chain, t) -> int:
    if t == "+inf":
        return _variations([_sign_at_inf(c, True) for c in chain])
    if t == "-inf":
        return _variations([_sign_at_inf(c, False) for c in chain])
    return _variations([_sign_at(c, t) for c in chain])


def count_roots_in(p: UniPoly, lo, hi) -> int:
    """Number of distinct real roots in the half-open interval (lo, hi].

    ``lo`` may be ``"-inf"`` and ``hi`` may be ``"+inf"``.
    """
    chain = sturm_chain(squarefree_part(p))
    if not chain:
        raise ValueError("zero polynomial has infinitely many roots")
    lo = lo if isinstance(lo, str) else Fraction(lo)
    hi = hi if isinstance(hi, str) else Fraction(hi)
    return _var_at(chain, lo) - _var_at(chain, hi)


def count_real_roots(p: UniPoly) -> int:
    """Number of distinct real roots."""
    return count_roots_in(p, "-inf", "+inf")


def is_real_rooted(p: UniPoly) -> bool:
    """True iff every complex root of p is real. Constants and zero count as real-rooted."""
    if p.degree <= 1:
        return True
    sqf = squarefree_part(p)
    chain = sturm_chain(sqf)
    return _var_at(chain, "-inf") - _var_at(chain, "+inf") == sqf.degree


def _cauchy_bound(c: Sequence[int]) -> Fraction:
    lc = abs(c[-1])
    m = max((abs(a) for a in c[:-1]), default=0)
    return 1 + Fraction(m, lc)


def isolate_real_roots(p: UniPoly, width) -> List[Interval]:
    """Disjoint closed rational intervals, one per distinct real root, each of width <= width."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    sqf = squarefree_part(p)
    if sqf.degree < 1:
        return []
    c = sqf.integer_coeffs()
    chain = sturm_chain(sqf)
    b = _cauchy_bound(c)
    # round the bound up to a power of two so bisection points stay dyadic
    pw = Fraction(1)
    while pw < b:
        pw *= 2

    def V(t):
        return _var_at(chain, t)

    found: List[Interval] = []
    # stack of (a, b, V(a), V(b)) with roots counted on (a, b]
    stack = [(-pw, pw, V(-pw), V(pw))]
    while stack:
        a, hb, va, vb = stack.pop()
        n = va - vb
        if n == 0:
            continue
        if n == 1 and hb - a <= width:
            found.append((a, hb))
            continue
        m = (a + hb) / 2
        vm = V(m)
        if _sign_at(c, m) == 0:
            found.append((m, m))
            # root at m is counted in (a, m]; step just past it for the left half
            stack.append((m, hb, vm, vb))
            left = n - (vm - vb) - 1
            if left:
                # shrink the right end away from m
                e = (m - a) / 2
                while True:
                    t = m - e
                    vt = V(t)
                    if vt - vm == 1 and _sign_at(c, t) != 0:
                        break
                    e /= 2
                stack.append((a, t, va, vt))
            continue
        stack.append((a, m, va, vm))
        stack.append((m, hb, vm, vb))

    found.sort()
    return _separate(found, c, chain)


def _separate(ivs: List[Interval], c, chain) -> List[Interval]:
    """Refine intervals until no two closed intervals touch."""
    out = list(ivs)
    changed = True
    while changed:
        changed = False
        for k in range(len(out) - 1):
            if out[k][1] >= out[k + 1][0]:
                for j in (k, k + 1):
                    a, b = out[j]
                    if a == b:
                        continue
                    m = (a + b) / 2
                    if _sign_at(c, m) == 0:
                        out[j] = (m, m)
                    elif _var_at(chain, a) - _var_at(chain, m) == 1:
                        out[j] = (a, m)
                    else:
                        out[j] = (m, b)
                changed = True
    return out


def check_roots_bounded(p: UniPoly, bound, two_sided: bool) -> bool:
    """No real root exceeds ``bound`` (and, if two-sided, none lies below ``-bound``)."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.degree < 1:
        return True
    bound = Fraction(bound)
    if count_roots_in(p, bound, "+inf") != 0:
        return False
    if two_sided:
        # roots in (-inf, -bound): those in (-inf, -bound] minus a possible root at -bound
        n = count_roots_in(p, "-inf", -bound)
        if p(-bound) == 0:
            n -= 1
        if n != 0:
            return False
    return True


def largest_root_upper_bound(p: UniPoly, width) -> Fraction:
    """Rational r >= the largest real root of p, within ``width`` of it."""
    ivs = isolate_real_roots(p, width)
    if not ivs:
        raise ValueError("polynomial has no real roots")
    return ivs[-1][1]
