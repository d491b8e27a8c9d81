from collections import Counter
from itertools import product

import numpy as np
import pytest

from matchpoly.acceptance import (
    FIXTURE_BASE,
    FIXTURE_LABELS,
    S3_GENS,
    S3_ORDER,
    S3_TRANSLATION_MATRIX,
    fixture_cover_edges,
)
from matchpoly.corpus import small_multigraphs
from matchpoly.coverings import (
    CoveringLabeling,
    GroupLabeling,
    average_matched_over_covers,
    cayley_from_bouquet,
    count_coverings,
    covering_graph,
    d_matching_poly,
    d_matching_poly_multivariate,
    edge_factor,
    enumerate_coverings,
    expected_cover_charpoly,
    expected_cover_gen_poly,
    expected_cover_gen_poly_map,
    godsil_gutman_expected_charpoly,
    hps_identity_check,
    hps_identity_report,
    regular_cover_matrix,
    std_cover_charpoly,
)
from matchpoly.errors import BudgetExceeded
from matchpoly.graphs import Multigraph, adjacency_matrix
from matchpoly.groups import FiniteGroup, Permutation, symmetric_group_perms
from matchpoly.matchings import matching_poly_univariate
from matchpoly.polys import MultiPoly, UniPoly, map_multiaffine_part

EDGE = Multigraph(2, ((0, 1),))
B1 = Multigraph(1, ((0, 0),))
K3 = Multigraph(3, ((0, 1), (0, 2), (1, 2)))
P3 = Multigraph(3, ((0, 1), (1, 2)))
x = UniPoly.x()


def X(i, n):
    return MultiPoly.variable(i, n)


def numeric_charpoly(A):
    # independent oracle: coefficients from numpy eigenvalues, rounded
    return UniPoly([int(round(c)) for c in np.poly(np.array(A, dtype=float))[::-1]])


# -- enumeration -------------------------------------------------------------


def test_enumeration_counts():
    assert len(list(enumerate_coverings(EDGE, 2))) == 2
    assert count_coverings(FIXTURE_BASE, 4) == 24**5
    for G in (EDGE, B1, K3, FIXTURE_BASE):
        assert len(list(enumerate_coverings(G, 1))) == 1


def test_enumeration_is_mixed_radix_lexicographic():
    labels = [tuple(p.image for p in s.perms) for s in enumerate_coverings(P3, 3)]
    assert len(labels) == 36 == len(set(labels))
    assert labels == sorted(labels)


def test_enumeration_count_on_corpus():
    for G in small_multigraphs(3, 3):
        for d in (1, 2, 3):
            assert sum(1 for _ in enumerate_coverings(G, d)) == count_coverings(G, d)


def test_enumeration_ranges_partition_the_stream():
    full = list(enumerate_coverings(K3, 2))
    parts = list(enumerate_coverings(K3, 2, 0, 3)) + list(enumerate_coverings(K3, 2, 3, 8))
    assert full == parts


# -- covering graphs ---------------------------------------------------------


def test_covering_graph_of_bouquet():
    ident = CoveringLabeling(2, (Permutation.identity(2),))
    H = covering_graph(B1, ident)
    assert H.n == 2 and sorted(H.edges) == [(0, 0), (1, 1)]
    swap = CoveringLabeling(2, (Permutation((1, 0)),))
    H = covering_graph(B1, swap)
    assert sorted(tuple(sorted(e)) for e in H.edges) == [(0, 1), (0, 1)]


def test_covering_graph_reproduces_fixture():
    H = covering_graph(FIXTURE_BASE, CoveringLabeling(4, FIXTURE_LABELS))
    assert Counter(tuple(sorted(e)) for e in H.edges) == fixture_cover_edges()


def test_coverings_are_fiberwise_homomorphisms():
    for G in small_multigraphs(3, 3):
        for sigma in enumerate_coverings(G, 3):
            H = covering_graph(G, sigma)
            assert H.n == G.n * 3
            proj = Counter(tuple(sorted((u // 3, w // 3))) for u, w in H.edges)
            base = Counter(tuple(sorted(e)) for e in G.edges)
            assert proj == Counter({e: 3 * c for e, c in base.items()})
            assert all(sum(row) == G.degree(v // 3) for v, row in enumerate(adjacency_matrix(H)))


# -- d-matching polynomial ---------------------------------------------------


def test_d_matching_examples():
    for G in (EDGE, K3, P3, B1):
        assert d_matching_poly(G, 1) == matching_poly_univariate(G)
    assert d_matching_poly(B1, 2) == x**2 - 1
    # both 2-covers of an edge are two disjoint edges
    assert d_matching_poly(EDGE, 2) == (x**2 - 1) ** 2


def test_d_matching_brute_force_oracle():
    for G in small_multigraphs(3, 3):
        for d in (2, 3):
            acc = UniPoly()
            for sigma in enumerate_coverings(G, d):
                acc = acc + matching_poly_univariate(covering_graph(G, sigma))
            assert d_matching_poly(G, d) == acc / count_coverings(G, d)


def test_gauge_fixing_and_parallelism_do_not_change_results():
    G = Multigraph(3, ((0, 1), (1, 2), (2, 0), (1, 1)))
    full = d_matching_poly(G, 3, gauge=False)
    assert d_matching_poly(G, 3, gauge=True) == full
    assert d_matching_poly(G, 3, gauge=False, workers=3) == full
    assert d_matching_poly(G, 3, gauge=True, workers=2) == full
    serial = average_matched_over_covers(G, 2)
    parallel = average_matched_over_covers(G, 2, workers=3)
    assert serial.to_json() == parallel.to_json()
    assert expected_cover_charpoly(G, 3, gauge=False) == expected_cover_charpoly(G, 3, gauge=True)


def test_budget_refusal_reports_count():
    with pytest.raises(BudgetExceeded) as info:
        d_matching_poly(K3, 3, budget=5)
    assert info.value.count == 6 and info.value.cap == 5
    with pytest.raises(BudgetExceeded):
        average_matched_over_covers(K3, 3, budget=100)


def test_budget_environment_variable(monkeypatch):
    monkeypatch.setenv("MATCHPOLY_BUDGET", "5")
    with pytest.raises(BudgetExceeded):
        d_matching_poly(K3, 3)
    monkeypatch.setenv("MATCHPOLY_BUDGET", "6")
    assert d_matching_poly(K3, 3).degree == 9


def test_multivariate_d_matching_diagonal():
    G = Multigraph(2, ((0, 1), (1, 1)))
    assert d_matching_poly_multivariate(G, 2).diagonal() == d_matching_poly(G, 2)
    assert d_matching_poly_multivariate(B1, 2) == X(0, 2) * X(1, 2) - 1


# -- expected subgraph generating polynomial ---------------------------------


def test_expected_gen_poly_examples():
    f = 1 - X(0, 2) * X(1, 2)
    assert expected_cover_gen_poly(B1, 2) == (1 + f**2) / 2
    assert expected_cover_gen_poly(EDGE, 1) == 1 - X(0, 2) * X(1, 2)
    # the edge factor for d = 2, with all sheets over one endpoint identified
    fe = edge_factor(EDGE, 2, 0).embed(2, [0, 0, 1, 1])
    assert fe == 2 * (1 - X(0, 2) * X(1, 2)) ** 2


def test_map_identity_on_small_corpus():
    for G in small_multigraphs(3, 3):
        for d in (1, 2):
            full = expected_cover_gen_poly(G, d)
            assert map_multiaffine_part(full) == expected_cover_gen_poly_map(G, d)
            assert expected_cover_gen_poly_map(G, d) == average_matched_over_covers(G, d)


# -- characteristic polynomials ----------------------------------------------


def test_godsil_gutman_examples():
    assert godsil_gutman_expected_charpoly(EDGE) == x**2 - 1
    assert godsil_gutman_expected_charpoly(K3) == x**3 - 3 * x
    assert godsil_gutman_expected_charpoly(P3) == x**3 - 2 * x
    with pytest.raises(ValueError):
        godsil_gutman_expected_charpoly(B1)


def test_godsil_gutman_against_numeric_oracle():
    G = Multigraph(4, ((0, 1), (1, 2), (2, 3), (3, 0), (0, 2)))
    acc = UniPoly()
    for signs in product((1, -1), repeat=G.m):
        A = [[0] * 4 for _ in range(4)]
        for s, (i, j) in zip(signs, G.edges):
            A[i][j] = A[j][i] = s
        acc = acc + numeric_charpoly(A)
    assert godsil_gutman_expected_charpoly(G) == acc / 2**G.m


def test_std_cover_examples():
    for G in (EDGE, K3, B1):
        assert std_cover_charpoly(G, CoveringLabeling(1, (Permutation.identity(1),) * G.m)) == UniPoly([1])
    assert std_cover_charpoly(B1, CoveringLabeling(2, (Permutation((1, 0)),))) == x + 2
    assert std_cover_charpoly(EDGE, CoveringLabeling(2, (Permutation.identity(2),))) == x**2 - 1


def test_two_sheet_std_average_is_plain_matching_poly():
    # E over S_2 of the std charpoly of B1: ((x - 2) + (x + 2)) / 2 = x = mu_{B1}
    polys = [std_cover_charpoly(B1, s) for s in enumerate_coverings(B1, 2)]
    assert sorted(str(p) for p in polys) == ["x + 2", "x - 2"]
    assert (polys[0] + polys[1]) / 2 == d_matching_poly(B1, 1) == x


def test_expected_cover_charpoly_against_numeric_oracle():
    for G in (B1, EDGE, Multigraph(2, ((0, 1), (0, 0)))):
        acc = UniPoly()
        for sigma in enumerate_coverings(G, 3):
            acc = acc + numeric_charpoly(adjacency_matrix(covering_graph(G, sigma)))
        assert expected_cover_charpoly(G, 3, gauge=False) == acc / count_coverings(G, 3)


def test_hps_identity_examples():
    for G in (EDGE, K3, B1, P3):
        assert hps_identity_check(G, 1)
    rep = hps_identity_report(B1, 2)
    assert rep.sheets == 3 and rep.d_matching == x**2 - 1
    assert rep.expected_cover_charpoly == (x**2 - 1) * (x - 2)
    assert hps_identity_check(EDGE, 2)


def test_hps_identity_on_loopy_multigraphs():
    for G in small_multigraphs(3, 3):
        for d in (1, 2):
            assert hps_identity_check(G, d)


# -- Cayley graphs -----------------------------------------------------------


def test_cayley_s3_fixture():
    group = FiniteGroup.from_permutations([Permutation(g) for g in S3_GENS])
    index = {p.image: k for k, p in enumerate(group.perms)}
    G, labels = cayley_from_bouquet([index[g] for g in S3_GENS], group)
    A = adjacency_matrix(G)
    order = [labels.index(index[p]) for p in S3_ORDER]
    T = S3_TRANSLATION_MATRIX
    assert [[A[order[r]][order[c]] for c in range(6)] for r in range(6)] == [
        [T[r][c] + T[c][r] for c in range(6)] for r in range(6)
    ]


def test_cayley_cyclic_examples():
    G, _ = cayley_from_bouquet([1], FiniteGroup.cyclic(4))
    assert sorted(tuple(sorted(e)) for e in G.edges) == [(0, 1), (0, 3), (1, 2), (2, 3)]
    # an involution is translated both ways: the Z/2 graph is one edge of multiplicity 2
    G, _ = cayley_from_bouquet([1], FiniteGroup.cyclic(2))
    assert adjacency_matrix(G) == [[0, 2], [2, 0]]
    with pytest.raises(ValueError):
        cayley_from_bouquet([5], FiniteGroup.cyclic(2))


def test_regular_cover_of_bouquet_is_cayley_graph():
    group = FiniteGroup.symmetric(3)
    bouquet = Multigraph(1, ((0, 0), (0, 0)))
    gens = (4, 1)
    A = regular_cover_matrix(bouquet, GroupLabeling(group, gens))
    G, _ = cayley_from_bouquet(gens, group)
    assert A == adjacency_matrix(G)


def test_symmetric_regular_cover_is_a_covering_graph():
    # the S_d permutation representation realises every d-covering
    group = FiniteGroup.symmetric(3)
    perms = symmetric_group_perms(3)
    for labels in product(range(6), repeat=2):
        G = Multigraph(2, ((0, 1), (1, 1)))
        sigma = CoveringLabeling(3, tuple(perms[k] for k in labels))
        A = [[0] * 6 for _ in range(6)]
        for k, (u, w) in enumerate(G.edges):
            M = perms[labels[k]].matrix()
            for a in range(3):
                for b in range(3):
                    A[u * 3 + a][w * 3 + b] += M[a][b]
                    A[w * 3 + b][u * 3 + a] += M[a][b]
        assert A == adjacency_matrix(covering_graph(G, sigma))
        assert group.order == 6
