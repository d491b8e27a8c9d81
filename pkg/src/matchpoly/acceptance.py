"""The acceptance suite: eleven exact checks, each returning a structured result."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

from .corpus import (
    atlas_connected_graphs,
    random_bernoulli,
    random_hypergraphs,
    small_multigraphs,
    special_family_graphs,
)
from .coverings import (
    CoveringLabeling,
    average_matched_over_covers,
    cayley_from_bouquet,
    count_coverings,
    covering_graph,
    d_matching_poly,
    expected_cover_gen_poly_map,
    godsil_gutman_expected_charpoly,
    hps_identity_report,
)
from .distributions import (
    bernoulli_dist,
    exp_stable,
    bivariate_multiaffine_stable,
    example_distribution,
    expected_induced_matching_poly,
    partition_function,
    uniform_k_dist,
)
from .errors import BudgetExceeded, default_budget
from .graphs import Multigraph, adjacency_matrix
from .groups import FiniteGroup, Permutation
from .hypermatchings import (
    identity_suite,
    relaxed_kappa_subgraph_poly,
    relaxed_matching_poly,
    relaxed_poly_via_operators,
)
from .matchings import matching_poly_univariate
from .roots import check_roots_bounded, is_real_rooted
from .spectral import closed_form_rho, rho_estimate
from .stability import refute_stability

__all__ = ["CriterionResult", "CRITERIA", "SUITES", "run_acceptance"]

MAX_EXAMPLES = 5


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    checked: int = 0
    detail: Dict[str, object] = field(default_factory=dict)
    counterexamples: List[object] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} ({self.checked} checks)"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "checked": self.checked,
            "detail": self.detail,
            "counterexamples": self.counterexamples[:MAX_EXAMPLES],
        }


def _graph_json(G) -> dict:
    return G.to_json()


# ---------------------------------------------------------------------------
# 1. signed adjacency average
# ---------------------------------------------------------------------------


def criterion_1(seed: int = 0) -> CriterionResult:
    res = CriterionResult(1, "average charpoly over signings equals the matching polynomial", True)
    graphs = atlas_connected_graphs(6)
    sizes = Counter(G.n for G in graphs)
    res.detail = {"graphs": len(graphs), "graphs_on_6_vertices": sizes[6]}
    if sizes[6] != 112:
        res.passed = False
        res.counterexamples.append({"reason": f"expected 112 connected graphs on 6 vertices, got {sizes[6]}"})
    for G in graphs:
        res.checked += 1
        lhs = godsil_gutman_expected_charpoly(G)
        rhs = matching_poly_univariate(G)
        if lhs != rhs:
            res.passed = False
            res.counterexamples.append({"graph": _graph_json(G), "average": str(lhs), "matching": str(rhs)})
    return res


# ---------------------------------------------------------------------------
# 2-4. coverings of small multigraphs
# ---------------------------------------------------------------------------


def _within_budget(G: Multigraph, d: int) -> bool:
    return count_coverings(G, d) <= default_budget()


def criterion_2(seed: int = 0) -> CriterionResult:
    res = CriterionResult(2, "d-matching polynomials are real-rooted (loops and multi-edges)", True)
    skipped = 0
    for G in small_multigraphs(4, 4):
        for d in (1, 2, 3):
            try:
                p = d_matching_poly(G, d)
            except BudgetExceeded:
                skipped += 1
                continue
            res.checked += 1
            if not is_real_rooted(p):
                res.passed = False
                res.counterexamples.append({"graph": _graph_json(G), "d": d, "poly": str(p)})
    res.detail = {"skipped_over_budget": skipped}
    return res


def criterion_3(seed: int = 0) -> CriterionResult:
    res = CriterionResult(3, "expected (d+1)-cover charpoly equals d-matching poly times charpoly(G)", True)
    skipped = 0
    for G in small_multigraphs(4, 4):
        for d in (1, 2, 3):
            try:
                rep = hps_identity_report(G, d)
            except BudgetExceeded:
                skipped += 1
                continue
            res.checked += 1
            if not rep.passed:
                res.passed = False
                res.counterexamples.append({
                    "graph": _graph_json(G), "d": d,
                    "expected_cover": str(rep.expected_cover_charpoly), "d_matching": str(rep.d_matching),
                })
    res.detail = {"skipped_over_budget": skipped}
    return res


def criterion_4(seed: int = 0) -> CriterionResult:
    res = CriterionResult(4, "MAP of the expected cover product equals the averaged cover matching polynomial", True)
    skipped = 0
    for G in small_multigraphs(4, 4):
        for d in (1, 2, 3):
            if not _within_budget(G, d):
                skipped += 1
                continue
            res.checked += 1
            lhs = expected_cover_gen_poly_map(G, d)
            rhs = average_matched_over_covers(G, d)
            if lhs != rhs:
                res.passed = False
                res.counterexamples.append({"graph": _graph_json(G), "d": d, "map": str(lhs), "average": str(rhs)})
    res.detail = {"skipped_over_budget": skipped}
    return res


# ---------------------------------------------------------------------------
# 5. fixtures
# ---------------------------------------------------------------------------

# base graph on a, b, c, d = 0..3 with a loop at d, and its 4-sheeted labeling
FIXTURE_BASE = Multigraph(4, ((0, 1), (0, 2), (1, 2), (2, 3), (3, 3)))
FIXTURE_LABELS = (
    Permutation.from_cycles(4, [(0, 1)]),
    Permutation.from_cycles(4, [(0, 1), (2, 3)]),
    Permutation.from_cycles(4, [(0, 2, 1)]),
    Permutation.from_cycles(4, [(0, 1, 2, 3)]),
    Permutation.from_cycles(4, [(0, 1, 2)]),
)
# the covering as drawn, vertex letter plus 1-based sheet
FIXTURE_COVER_EDGES = (
    "a1b2 a2b1 a3b3 a4b4 a1c2 a2c1 a3c4 a4c3 b1c3 b2c1 b3c2 b4c4 "
    "c1d2 c2d3 c3d4 c4d1 d4d4 d3d1 d3d2 d2d1"
).split()

# S_3 in the order identity, (12), (13), (23), (123), (132), as 0-based images
S3_ORDER = ((0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1))
S3_GENS = ((1, 2, 0), (1, 0, 2))
# rows h, ones at columns g*h for both generators
S3_TRANSLATION_MATRIX = (
    (0, 1, 0, 0, 1, 0),
    (1, 0, 1, 0, 0, 0),
    (0, 0, 0, 1, 0, 1),
    (0, 1, 0, 0, 1, 0),
    (0, 0, 0, 1, 0, 1),
    (1, 0, 1, 0, 0, 0),
)


def _fixture_vertex(token: str) -> int:
    return "abcd".index(token[0]) * 4 + int(token[1]) - 1


def fixture_cover_edges() -> Counter:
    return Counter(
        tuple(sorted((_fixture_vertex(t[:2]), _fixture_vertex(t[2:])))) for t in FIXTURE_COVER_EDGES
    )


def criterion_5(seed: int = 0) -> CriterionResult:
    res = CriterionResult(5, "covering fixtures: labeled 4-cover and S_3 Cayley graph", True)
    H = covering_graph(FIXTURE_BASE, CoveringLabeling(4, FIXTURE_LABELS))
    got = Counter(tuple(sorted(e)) for e in H.edges)
    res.checked += 1
    if got != fixture_cover_edges():
        res.passed = False
        res.counterexamples.append({"fixture": "cover", "got": sorted(got.elements())})

    group = FiniteGroup.from_permutations([Permutation(g) for g in S3_GENS])
    index = {p.image: k for k, p in enumerate(group.perms)}
    gens = [index[g] for g in S3_GENS]
    G, labels = cayley_from_bouquet(gens, group)
    A = adjacency_matrix(G)
    order = [labels.index(index[p]) for p in S3_ORDER]
    reordered = [[A[order[r]][order[c]] for c in range(6)] for r in range(6)]
    T = S3_TRANSLATION_MATRIX
    expected = [[T[r][c] + T[c][r] for c in range(6)] for r in range(6)]
    res.checked += 1
    if reordered != expected:
        res.passed = False
        res.counterexamples.append({"fixture": "cayley", "got": reordered, "expected": expected})
    return res


# ---------------------------------------------------------------------------
# 6-7. distributions
# ---------------------------------------------------------------------------


def criterion_6(seed: int = 0, pairs: int = 200) -> CriterionResult:
    res = CriterionResult(6, "expected induced matching polynomials are real-rooted and bounded by rho", True)
    rng = random.Random(seed)
    families = special_family_graphs(5)
    bounds = {name: closed_form_rho(G) for name, G in families}
    for name, G in families:
        # Heilmann-Lieb: the matching polynomial itself sits in [-rho, rho]
        res.checked += 1
        mu = matching_poly_univariate(G)
        if not (is_real_rooted(mu) and check_roots_bounded(mu, bounds[name].upper, True)):
            res.passed = False
            res.counterexamples.append({"graph": name, "kind": "matching", "poly": str(mu)})
    for _ in range(pairs):
        name, G = families[rng.randrange(len(families))]
        bound = bounds[name].upper
        p = random_bernoulli(rng, G.n)
        poly = expected_induced_matching_poly(G, bernoulli_dist(p)).diagonal()
        res.checked += 1
        if not (is_real_rooted(poly) and check_roots_bounded(poly, bound, False)):
            res.passed = False
            res.counterexamples.append({"graph": name, "kind": "bernoulli", "p": [str(v) for v in p],
                                        "poly": str(poly), "bound": str(bound)})
        k = rng.randint(0, G.n)
        poly = expected_induced_matching_poly(G, uniform_k_dist(G.n, k)).diagonal()
        res.checked += 1
        if not (is_real_rooted(poly) and check_roots_bounded(poly, bound, True)):
            res.passed = False
            res.counterexamples.append({"graph": name, "kind": "uniform", "k": k,
                                        "poly": str(poly), "bound": str(bound)})
    res.detail = {"pairs": pairs, "bounds": {n: str(b.upper) for n, b in bounds.items()}}
    return res


SEPARATION_EXAMPLE = (Fraction(2, 5), Fraction(1, 10), Fraction(1, 10), Fraction(2, 5))


def criterion_7(seed: int = 0, trials: int = 500) -> CriterionResult:
    res = CriterionResult(7, "stable expectation from a non-Rayleigh distribution", True)
    a, b, c, d = SEPARATION_EXAMPLE
    P = example_distribution(a, b, c, d)
    edge = Multigraph(2, ((0, 1),))
    Z = partition_function(P)
    E = expected_induced_matching_poly(edge, P)
    z_verdict = refute_stability(Z, trials=trials, seed=seed)
    e_verdict = refute_stability(E, trials=trials, seed=seed)
    checks = {
        "bc - ad < 0": not bivariate_multiaffine_stable(a, b, c, d),
        "bc - a(d - a) >= 0": exp_stable(a, b, c, d),
        "partition function refuted": z_verdict.refuted and z_verdict.witness.verify(Z),
        "expectation not refuted": not e_verdict.refuted,
    }
    res.checked = len(checks)
    res.passed = all(checks.values())
    res.detail = {
        "abcd": [str(v) for v in SEPARATION_EXAMPLE],
        "checks": checks,
        "partition_function": str(Z),
        "expectation": str(E),
        "witness": z_verdict.witness.to_json() if z_verdict.witness else None,
    }
    if not res.passed:
        res.counterexamples.append({k: v for k, v in checks.items() if not v})
    return res


# ---------------------------------------------------------------------------
# 8-10. hypergraphs
# ---------------------------------------------------------------------------


def _hyper_corpus(seed: int):
    return random_hypergraphs(300, seed)


def criterion_8(seed: int = 0) -> CriterionResult:
    res = CriterionResult(8, "operator formula equals relaxed kappa-subgraph enumeration", True)
    for H, kappa in _hyper_corpus(seed):
        res.checked += 1
        lhs = relaxed_poly_via_operators(H, kappa)
        rhs = relaxed_kappa_subgraph_poly(H, kappa)
        if lhs != rhs:
            res.passed = False
            res.counterexamples.append({"hypergraph": H.to_json(), "kappa": list(kappa),
                                        "operator": str(lhs), "enumeration": str(rhs)})
    return res


def criterion_9(seed: int = 0) -> CriterionResult:
    res = CriterionResult(9, "relaxed matching polynomial identities (edge, vertex, union, derivative)", True)
    for H, _ in _hyper_corpus(seed):
        res.checked += 1
        rep = identity_suite(H)
        if not rep.ok:
            res.passed = False
            res.counterexamples.append({"hypergraph": H.to_json(), "failures": rep.failures})
    return res


def criterion_10(seed: int = 0, trials: int = 100) -> CriterionResult:
    res = CriterionResult(10, "relaxed matching polynomials are real-rooted and not refuted as stable", True)
    for H, _ in _hyper_corpus(seed):
        res.checked += 1
        eta = relaxed_matching_poly(H)
        rooted = is_real_rooted(eta.diagonal())
        verdict = refute_stability(eta, trials=trials, seed=seed)
        if not rooted or verdict.refuted:
            res.passed = False
            res.counterexamples.append({
                "hypergraph": H.to_json(), "real_rooted": rooted,
                "witness": verdict.witness.to_json() if verdict.witness else None,
            })
    return res


# ---------------------------------------------------------------------------
# 11. truncation convergence
# ---------------------------------------------------------------------------


def criterion_11(seed: int = 0, max_depth: int = 18) -> CriterionResult:
    res = CriterionResult(11, "rho estimates for C6 increase with depth and exceed 1.99 by depth 18", True)
    C6 = Multigraph(6, tuple((i, (i + 1) % 6) for i in range(6)))
    values = [rho_estimate(C6, D).value for D in range(max_depth + 1)]
    monotone = all(a <= b for a, b in zip(values, values[1:]))
    res.checked = len(values)
    res.passed = monotone and values[-1] > Fraction(199, 100)
    res.detail = {"values": [str(v) for v in values], "final_float": float(values[-1]), "monotone": monotone}
    if not res.passed:
        res.counterexamples.append(res.detail)
    return res


CRITERIA: Dict[int, Callable[..., CriterionResult]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
    11: criterion_11,
}

SUITES: Dict[str, Tuple[int, ...]] = {
    "all": tuple(range(1, 12)),
    "gg": (1,),
    "dmatch": (2,),
    "hps": (3,),
    "map": (4,),
    "fixtures": (5,),
    "roots": (6,),
    "rayleigh": (7,),
    "operators": (8,),
    "identities": (9,),
    "hyper-roots": (10,),
    "rho": (11,),
    "coverings": (1, 2, 3, 4, 5),
    "distributions": (6, 7),
    "hypergraphs": (8, 9, 10),
}


def run_acceptance(selection: Sequence[int] | str = "all", seed: int = 0) -> List[CriterionResult]:
    numbers = SUITES[selection] if isinstance(selection, str) else tuple(selection)
    return [CRITERIA[k](seed=seed) for k in numbers]
