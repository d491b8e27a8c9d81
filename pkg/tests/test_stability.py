from fractions import Fraction

import pytest

from matchpoly.distributions import bivariate_multiaffine_stable
from matchpoly.polys import MultiPoly, UniPoly, elementary_symmetric
from matchpoly.stability import NOT_REFUTED, REFUTED, refute_stability, restrict_to_line


def X(i, n):
    return MultiPoly.variable(i, n)


def test_restrict_to_line_examples():
    f = X(0, 2) * X(1, 2) - 1
    assert restrict_to_line(f, (0, 0), (1, 1)) == UniPoly([-1, 0, 1])
    assert restrict_to_line(MultiPoly.constant(2, 1), (3, -2), (1, 5)) == UniPoly([1])
    g = X(0, 2) ** 2 * X(1, 2)
    t = UniPoly.x()
    assert restrict_to_line(g, (0, 1), (1, 1)) == t**2 * (t + 1)


def test_restrict_rejects_nonpositive_direction():
    with pytest.raises(ValueError):
        restrict_to_line(X(0, 2), (0, 0), (1, 0))
    with pytest.raises(ValueError):
        restrict_to_line(X(0, 2), (0, 0), (1, -1))


def test_restriction_of_product_is_product_of_restrictions():
    f = X(0, 3) * X(1, 3) - X(2, 3) + 2
    g = X(0, 3) ** 2 - X(1, 3) * X(2, 3)
    base, direction = (Fraction(1, 2), -3, 1), (1, Fraction(2, 3), 4)
    assert restrict_to_line(f * g, base, direction) == restrict_to_line(f, base, direction) * restrict_to_line(
        g, base, direction
    )


def test_refute_examples():
    v = refute_stability(X(0, 2) * X(1, 2) + 1, trials=50, seed=1)
    assert v.status == REFUTED
    assert v.witness.verify(X(0, 2) * X(1, 2) + 1)
    assert refute_stability(X(0, 2) * X(1, 2) - 1, trials=200, seed=3).status == NOT_REFUTED
    assert refute_stability(MultiPoly(2), trials=10).status == NOT_REFUTED


def test_refuter_is_deterministic():
    f = X(0, 3) * X(1, 3) + X(2, 3) ** 2 + 1
    assert refute_stability(f, 100, 7) == refute_stability(f, 100, 7)
    assert refute_stability(f, 100, 7).to_json() == refute_stability(f, 100, 7).to_json()


def test_known_stable_families_are_not_refuted():
    n = 4
    prod = MultiPoly.constant(n, 1)
    for i, j in ((0, 1), (1, 2), (2, 3), (0, 3), (0, 2)):
        prod = prod * (1 - X(i, n) * X(j, n))
    assert not refute_stability(prod, 100, 0).refuted
    for k in range(n + 1):
        assert not refute_stability(elementary_symmetric(n, k), 100, k).refuted


def test_grid_criterion_agrees_with_refuter():
    # probability 4-tuples with denominators 20 (the simplex slice of the 21^4 grid)
    steps = 20
    for a in range(steps + 1):
        for b in range(steps + 1 - a):
            for c in range(steps + 1 - a - b):
                d = steps - a - b - c
                A, B, C, D = (Fraction(v, steps) for v in (a, b, c, d))
                f = MultiPoly(2, {(1, 1): A, (1, 0): B, (0, 1): C, (0, 0): D})
                verdict = refute_stability(f, 500, 0)
                assert verdict.refuted != bivariate_multiaffine_stable(A, B, C, D), (A, B, C, D)
