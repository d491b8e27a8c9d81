from itertools import combinations, product
from math import perm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchpoly.corpus import atlas_connected_graphs, random_hypergraphs
from matchpoly.graphs import Hypergraph
from matchpoly.hypermatchings import (
    RelaxedMatching,
    RelaxedSubgraph,
    delete_vertices_weak,
    edge_operator,
    edge_subsets,
    enumerate_relaxed_matchings,
    enumerate_relaxed_subgraphs,
    identity_suite,
    relaxed_kappa_subgraph_poly,
    relaxed_matching_poly,
    relaxed_matching_poly_univariate,
    relaxed_poly_product_form,
    relaxed_poly_via_operators,
    unlabeled_matching_count,
    weight,
)
from matchpoly.matchings import matching_poly_multivariate
from matchpoly.polys import DiffOperator, MultiPoly, UniPoly


def X(i, n):
    return MultiPoly.variable(i, n)


def brute_kappa_poly(H, kappa):
    # independent oracle: every edge is skipped or picks any subset of size >= 2
    options = [[None] + [s for r in range(2, len(e) + 1) for s in _subsets(e, r)] for e in H.edges]
    out = {}
    for choice in product(*options):
        chosen = [s for s in choice if s is not None]
        deg = [sum(v in s for s in chosen) for v in range(H.n)]
        if any(d > k for d, k in zip(deg, kappa)):
            continue
        c = (-1) ** len(chosen)
        for s in chosen:
            c *= len(s) - 1
        for k, d in zip(kappa, deg):
            c *= perm(k, d)
        exp = tuple(k - d for k, d in zip(kappa, deg))
        out[exp] = out.get(exp, 0) + c
    return MultiPoly(H.n, out)


def _subsets(e, r):
    return list(combinations(e, r))


hypergraphs = st.integers(1, 5).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(0, n - 1), min_size=1, max_size=min(n, 4), unique=True), max_size=4
    ).map(lambda es: Hypergraph(n, tuple(tuple(e) for e in es)))
)


# -- enumeration ---------------------------------------------------------------


def test_edge_subsets_colex():
    assert edge_subsets((0, 1, 2)) == [(0, 1), (0, 2), (1, 2), (0, 1, 2)]
    assert edge_subsets((3,)) == []


def test_single_triple_edge_examples():
    H = Hypergraph(3, ((0, 1, 2),))
    ms = list(enumerate_relaxed_matchings(H))
    assert [m.pairs for m in ms] == [(), ((0, (0, 1)),), ((0, (0, 2)),), ((0, (1, 2)),), ((0, (0, 1, 2)),)]
    assert [weight(m) for m in ms] == [1, 1, 1, 1, 2]
    x = [X(i, 3) for i in range(3)]
    assert relaxed_matching_poly(H) == x[0] * x[1] * x[2] - x[0] - x[1] - x[2] - 2
    assert relaxed_matching_poly_univariate(H) == UniPoly([-2, -3, 0, 1])


def test_relaxed_objects_validate():
    with pytest.raises(ValueError):
        RelaxedMatching(((0, (0, 1)), (1, (1, 2))))
    with pytest.raises(ValueError):
        RelaxedMatching(((0, (0,)),))
    with pytest.raises(ValueError):
        RelaxedSubgraph(((0, (0, 1)), (0, (1, 2))))
    K = RelaxedSubgraph(((0, (0, 1)), (1, (1, 2))))
    assert K.degree(1) == 2 and K.vertices == {0, 1, 2} and len(K) == 2


def test_enumerated_matchings_are_distinct_and_valid():
    for H, _ in random_hypergraphs(60, seed=3, max_n=6, max_m=4):
        ms = list(enumerate_relaxed_matchings(H))
        assert len(set(ms)) == len(ms) and ms[0].pairs == ()


# -- kappa polynomials -------------------------------------------------------------


def test_kappa_example():
    H = Hypergraph(2, ((0, 1),))
    assert relaxed_kappa_subgraph_poly(H, (2, 1)) == X(0, 2) ** 2 * X(1, 2) - 2 * X(0, 2)
    assert len(list(enumerate_relaxed_subgraphs(H, (2, 1)))) == 2


def test_kappa_against_brute_force_and_operators():
    for H, kappa in random_hypergraphs(150, seed=0, max_n=6, max_m=4):
        direct = relaxed_kappa_subgraph_poly(H, kappa)
        assert direct == brute_kappa_poly(H, kappa)
        assert direct == relaxed_poly_via_operators(H, kappa)


def test_kappa_special_cases():
    for H, _ in random_hypergraphs(40, seed=5, max_n=5, max_m=4):
        assert relaxed_kappa_subgraph_poly(H, (1,) * H.n) == relaxed_matching_poly(H)
        assert relaxed_kappa_subgraph_poly(H, (0,) * H.n) == MultiPoly.constant(H.n, 1)
    assert relaxed_matching_poly(Hypergraph(3, ())) == X(0, 3) * X(1, 3) * X(2, 3)
    assert relaxed_matching_poly(Hypergraph(1, ((0,),))) == X(0, 1)
    with pytest.raises(ValueError):
        relaxed_kappa_subgraph_poly(Hypergraph(2, ()), (1,))
    with pytest.raises(ValueError):
        relaxed_kappa_subgraph_poly(Hypergraph(1, ()), (-1,))


def test_graphs_give_matching_polynomials():
    for G in atlas_connected_graphs(5):
        assert relaxed_matching_poly(Hypergraph(G.n, G.edges)) == matching_poly_multivariate(G)


def test_edge_operator_expansion():
    d = [DiffOperator.partial(i, 3) for i in range(3)]
    assert edge_operator((0, 1, 2), 3) == 1 - d[0] * d[1] - d[0] * d[2] - d[1] * d[2] - 2 * d[0] * d[1] * d[2]
    assert edge_operator((0, 2), 3) == 1 - d[0] * d[2]
    assert edge_operator((1,), 3) == DiffOperator.identity(3)


@given(hypergraphs)
@settings(max_examples=80, deadline=None)
def test_operator_and_product_forms_agree(H):
    eta = relaxed_matching_poly(H)
    assert relaxed_poly_via_operators(H) == eta
    assert relaxed_poly_product_form(H) == eta


# -- labeled versus unlabeled ----------------------------------------------------


def test_linear_hypergraphs_count_the_same_either_way():
    for H, _ in random_hypergraphs(120, seed=7, max_n=7, max_m=4):
        if H.is_linear():
            assert unlabeled_matching_count(H) == sum(1 for _ in enumerate_relaxed_matchings(H))


def test_nonlinear_hypergraph_counts_differ():
    H = Hypergraph(3, ((0, 1, 2), (0, 1)))
    assert not H.is_linear()
    assert sum(1 for _ in enumerate_relaxed_matchings(H)) == 6
    assert unlabeled_matching_count(H) == 5


# -- identities ------------------------------------------------------------------


def test_weak_deletion():
    H = Hypergraph(4, ((0, 1, 2), (2, 3), (1,)))
    sub, labels = delete_vertices_weak(H, [1, 2])
    assert labels == [0, 3] and sub.edges == ((0,), (1,))


def test_identity_suite_examples():
    for H in (Hypergraph(3, ((0, 1, 2),)), Hypergraph(4, ((0, 1), (2, 3))), Hypergraph(2, ((0, 1), (0, 1)))):
        report = identity_suite(H)
        assert report.ok and report.failures == []
        assert set(report.results) == {"edge_recursion", "vertex_recursion", "disjoint_union", "derivative"}


@given(hypergraphs)
@settings(max_examples=60, deadline=None)
def test_identity_suite_holds(H):
    report = identity_suite(H)
    assert report.ok, report.to_json()
