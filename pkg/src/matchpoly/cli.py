"""Command-line front end.

Exit codes: 0 success, 1 a verification suite failed, 2 invalid input,
3 an enumeration would exceed the labeling budget. Errors go to stderr as a
single line ``error: <kind>: <reason>``.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from .errors import BudgetExceeded, default_budget
from .graphs import GraphFormatError, Hypergraph, Multigraph, adjacency_matrix, load_graph

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # single-line reason instead of usage dump
        raise UsageError(message)


def _int_list(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc.msg} at line {exc.lineno}") from None


def _load_multigraph(path: str) -> Multigraph:
    try:
        G = load_graph(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    if not isinstance(G, Multigraph):
        raise UsageError(f"{path} holds a hypergraph, a multigraph is required")
    return G


def _load_hypergraph(path: str) -> Hypergraph:
    try:
        H = load_graph(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return Hypergraph.from_graph(H) if isinstance(H, Multigraph) else H


def _budget(args) -> int:
    return args.budget if args.budget is not None else default_budget()


# ---------------------------------------------------------------------------
# subcommands; each returns (payload, text, exit code)
# ---------------------------------------------------------------------------


def cmd_matching(args):
    from .matchings import matching_poly_matched, matching_poly_multivariate, matching_poly_univariate

    G = _load_multigraph(args.graph)
    if args.univariate:
        p = matching_poly_univariate(G)
        return {"poly": str(p)}, str(p), EXIT_OK
    p = matching_poly_matched(G) if args.matched else matching_poly_multivariate(G)
    return {"poly": p.to_json(), "text": str(p)}, str(p), EXIT_OK


def cmd_dmatch(args):
    from .coverings import d_matching_poly, d_matching_poly_multivariate

    G = _load_multigraph(args.graph)
    if args.multivariate:
        q = d_matching_poly_multivariate(G, args.d, budget=_budget(args))
        return {"d": args.d, "poly": q.to_json(), "text": str(q)}, str(q), EXIT_OK
    p = d_matching_poly(G, args.d, budget=_budget(args), workers=args.workers)
    return {"d": args.d, "poly": str(p), "coeffs": p.to_json()["coeffs"]}, str(p), EXIT_OK


def cmd_gg(args):
    from .coverings import godsil_gutman_expected_charpoly
    from .matchings import matching_poly_univariate

    G = _load_multigraph(args.graph)
    if not G.is_simple():
        raise UsageError("signing average needs a simple graph")
    avg = godsil_gutman_expected_charpoly(G, budget=_budget(args))
    mu = matching_poly_univariate(G)
    payload = {"expected_charpoly": str(avg), "matching_poly": str(mu), "equal": avg == mu}
    return payload, f"{avg}\n{'equal' if avg == mu else 'DIFFERENT'}", EXIT_OK


def cmd_hps(args):
    from .coverings import hps_identity_report

    G = _load_multigraph(args.graph)
    rep = hps_identity_report(G, args.d, budget=_budget(args))
    payload = {
        "d": rep.d,
        "sheets": rep.sheets,
        "expected_cover_charpoly": str(rep.expected_cover_charpoly),
        "quotient": str(rep.expected_std_charpoly),
        "d_matching": str(rep.d_matching),
        "passed": rep.passed,
    }
    text = f"{'PASS' if rep.passed else 'FAIL'}: {rep.expected_std_charpoly} vs {rep.d_matching}"
    return payload, text, EXIT_OK if rep.passed else EXIT_FAILED


def cmd_cayley(args):
    from .coverings import cayley_from_bouquet
    from .groups import FiniteGroup, GroupFormatError

    obj = _read_json(args.group)
    try:
        group = FiniteGroup.from_json(obj)
    except GroupFormatError as exc:
        raise UsageError(str(exc)) from None
    gens = args.gens
    if gens is None:
        if "perm_gens" not in obj:
            raise UsageError("--gens is required for groups given by a table")
        index = {p.image: k for k, p in enumerate(group.perms)}
        gens = [index[tuple(g)] for g in obj["perm_gens"]]
    G, labels = cayley_from_bouquet(gens, group)
    A = adjacency_matrix(G)
    payload = {"graph": G.to_json(), "elements": labels, "adjacency": A}
    return payload, "\n".join(" ".join(map(str, row)) for row in A), EXIT_OK


def cmd_induced(args):
    from .distributions import SubsetDistribution, expected_induced_matching_poly

    G = _load_multigraph(args.graph)
    P = SubsetDistribution.from_json(_read_json(args.dist))
    p = expected_induced_matching_poly(G, P)
    if args.univariate:
        u = p.diagonal()
        return {"poly": str(u)}, str(u), EXIT_OK
    return {"poly": p.to_json(), "text": str(p)}, str(p), EXIT_OK


def cmd_rayleigh(args):
    from .distributions import SubsetDistribution, rayleigh_refute

    P = SubsetDistribution.from_json(_read_json(args.dist))
    v = rayleigh_refute(P, trials=args.trials, seed=args.seed)
    return v.to_json(), v.status, EXIT_OK


def cmd_rho(args):
    from .spectral import rho_estimate

    G = _load_multigraph(args.graph)
    est = rho_estimate(G, args.depth)
    return {"depth": est.depth, "lower_bound": str(est.value)}, str(est.value), EXIT_OK


def cmd_relaxed(args):
    from .hypermatchings import relaxed_kappa_subgraph_poly, relaxed_poly_via_operators

    H = _load_hypergraph(args.hypergraph)
    kappa = args.kappa if args.kappa is not None else [1] * H.n
    if args.via == "operator":
        p = relaxed_poly_via_operators(H, kappa)
    else:
        p = relaxed_kappa_subgraph_poly(H, kappa)
    if args.univariate:
        u = p.diagonal()
        return {"poly": str(u)}, str(u), EXIT_OK
    return {"poly": p.to_json(), "text": str(p)}, str(p), EXIT_OK


def cmd_identities(args):
    from .hypermatchings import identity_suite

    rep = identity_suite(_load_hypergraph(args.hypergraph))
    text = "\n".join(f"{name}: {'pass' if ok else 'FAIL'}" for name, ok in rep.results.items())
    return rep.to_json(), text, EXIT_OK if rep.ok else EXIT_FAILED


def cmd_verify(args):
    from .acceptance import SUITES, run_acceptance

    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    results = run_acceptance(args.suite, seed=args.seed)
    ok = all(r.passed for r in results)
    payload = {"suite": args.suite, "seed": args.seed, "passed": ok, "criteria": [r.to_json() for r in results]}
    return payload, "\n".join(r.line() for r in results), EXIT_OK if ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json", help="output format")
    common.add_argument("--budget", type=_positive, default=None,
                        help="cap on enumerated labelings (default: MATCHPOLY_BUDGET or 10^7)")

    parser = _Parser(prog="matchpoly", description="Exact matching polynomials, coverings and relaxed matchings.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("matching", parents=[common], help="matching polynomial of a multigraph")
    p.add_argument("--graph", required=True)
    form = p.add_mutually_exclusive_group()
    form.add_argument("--multivariate", action="store_true",
                      help="monomials on unmatched vertices (default)")
    form.add_argument("--matched", action="store_true", help="monomials on matched vertices")
    form.add_argument("--univariate", action="store_true")
    p.set_defaults(func=cmd_matching)

    p = sub.add_parser("dmatch", parents=[common], help="average matching polynomial over d-coverings")
    p.add_argument("--graph", required=True)
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--multivariate", action="store_true", help="average in n*d variables")
    p.set_defaults(func=cmd_dmatch)

    p = sub.add_parser("gg", parents=[common], help="average characteristic polynomial over signings")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_gg)

    p = sub.add_parser("hps-check", parents=[common],
                       help="expected (d+1)-cover charpoly against d-matching poly times charpoly")
    p.add_argument("--graph", required=True)
    p.add_argument("--d", type=_positive, required=True)
    p.set_defaults(func=cmd_hps)

    p = sub.add_parser("cayley", parents=[common], help="Cayley graph as a covering of a bouquet")
    p.add_argument("--group", required=True, help='JSON with "table" or "perm_gens"')
    p.add_argument("--gens", type=_int_list, default=None,
                   help="generator element indices, e.g. 1,2 (default: the perm_gens of the group file)")
    p.set_defaults(func=cmd_cayley)

    p = sub.add_parser("induced", parents=[common], help="expected induced matching polynomial")
    p.add_argument("--graph", required=True)
    p.add_argument("--dist", required=True)
    p.add_argument("--univariate", action="store_true")
    p.set_defaults(func=cmd_induced)

    p = sub.add_parser("rayleigh", parents=[common], help="search for a Rayleigh inequality violation")
    p.add_argument("--dist", required=True)
    p.add_argument("--trials", type=_positive, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_rayleigh)

    p = sub.add_parser("rho", parents=[common], help="lower bound on the universal cover spectral radius")
    p.add_argument("--graph", required=True)
    p.add_argument("--depth", type=_nonneg, required=True)
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("relaxed", parents=[common], help="relaxed kappa-subgraph polynomial of a hypergraph")
    p.add_argument("--hypergraph", required=True)
    p.add_argument("--kappa", type=_int_list, default=None)
    p.add_argument("--via", choices=("enum", "operator"), default="enum")
    p.add_argument("--univariate", action="store_true")
    p.set_defaults(func=cmd_relaxed)

    p = sub.add_parser("identities", parents=[common], help="check the relaxed matching identities")
    p.add_argument("--hypergraph", required=True)
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("verify", parents=[common], help="run acceptance suites")
    p.add_argument("--suite", default="all")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def _fail(kind: str, message: str, code: int) -> int:
    print(f"error: {kind}: {' '.join(str(message).split())}", file=sys.stderr)
    return code


def run(argv: Optional[Sequence[str]] = None) -> int:
    from .distributions import DistributionError
    from .spectral import TruncationTooLarge

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        payload, text, code = args.func(args)
    except (BudgetExceeded, TruncationTooLarge) as exc:
        return _fail("budget", exc, EXIT_BUDGET)
    except (UsageError, GraphFormatError, DistributionError, ValueError, IndexError) as exc:
        return _fail("invalid", exc, EXIT_INVALID)
    if args.format == "json":
        print(json.dumps(payload, separators=(",", ":")))
    else:
        print(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
