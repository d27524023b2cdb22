"""Command-line entry point: ``hikes psi|phi|mell|walks|sah|eval|verify``.

Exit codes: 0 success (all identities hold), 1 identity failure,
2 bad input (parse error, not a hike, wrong hike class), 3 guard violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import charpoly as cp
from .errors import GraphFormatError, GuardViolation, HikeError, HikeLiteralError, NotAHikeError, NotClosedError
from .graph import Digraph, enumerate_self_avoiding_hikes, load_digraph
from .multiset import parse_hike
from .poly import PolyMatrix, canonical_text, mat_power
from .poset import (
    beta_closed_form,
    classify,
    closed_divisors,
    count_representations,
    mu,
    mu_ij,
    self_avoiding_decomposition_sum,
    stats,
)
from .verify import CORRUPTIONS, MAX_EDGES, MAX_LEN, MAX_N, SUITES, random_digraph, verify

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load(path: str, unsafe_large: bool = False) -> Digraph:
    try:
        g = load_digraph(path)
    except GraphFormatError as exc:
        raise CliError(f"{path}: {exc}", EXIT_INPUT) from exc
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror}", EXIT_INPUT) from exc
    if not unsafe_large and (g.n_vertices > MAX_N or len(g.edges) > MAX_EDGES):
        raise CliError(
            f"graph exceeds desk-scale limits (N <= {MAX_N}, |E| <= {MAX_EDGES}); "
            "pass --unsafe-large to override",
            EXIT_GUARD,
        )
    return g


def _emit(args, text: str, payload) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _k_range(args, g: Digraph) -> range:
    if args.k is not None:
        return range(args.k, args.k + 1)
    top = g.n_vertices if args.max_k is None else args.max_k
    return range(0, top + 1)


def cmd_psi(args) -> int:
    g = _load(args.graph, args.unsafe_large)
    ks = _k_range(args, g)
    polys = [cp.psi_by_cycles(g, k) for k in ks]
    _emit(
        args,
        "\n".join(canonical_text(p) for p in polys),
        {"psi": {str(k): p.to_json() for k, p in zip(ks, polys)}},
    )
    return EXIT_OK


def cmd_phi(args) -> int:
    g = _load(args.graph, args.unsafe_large)
    ks = _k_range(args, g)
    if args.method == "beta":
        polys = [cp.phi_by_beta(g, k) for k in ks]
    else:
        psi = cp.psi_sequence_by_cycles(g)
        literal = args.method == "compositions"
        polys = [cp.phi_by_compositions(psi, k, literal=literal) for k in ks]
    _emit(
        args,
        "\n".join(canonical_text(p) for p in polys),
        {"phi": {str(k): p.to_json() for k, p in zip(ks, polys)}},
    )
    return EXIT_OK


def _emit_matrix(args, M: PolyMatrix) -> None:
    _emit(args, M.text(), M.to_json())


def cmd_mell(args) -> int:
    g = _load(args.graph, args.unsafe_large)
    if args.tilde:
        if args.ell < 1:
            raise CliError("--tilde needs --ell >= 1", EXIT_INPUT)
        M = cp.m_tilde_ell(g, args.ell)
    else:
        M = cp.m_ell(g, args.ell)
    _emit_matrix(args, M)
    return EXIT_OK


def cmd_walks(args) -> int:
    g = _load(args.graph, args.unsafe_large)
    _emit_matrix(args, mat_power(PolyMatrix.adjacency(g), args.ell))
    return EXIT_OK


def cmd_sah(args) -> int:
    g = _load(args.graph, args.unsafe_large)
    hs = enumerate_self_avoiding_hikes(g, args.ell, args.i, args.j)
    signed = [(h, (-1) ** stats(h).components) for h in hs]
    _emit(
        args,
        "\n".join(f"{'+' if s > 0 else '-'}1*{h.text()}" for h, s in signed),
        {"hikes": [{"monomial": h.text(), "sign": s, "components": stats(h).components} for h, s in signed]},
    )
    return EXIT_OK


def _need_endpoints(args) -> tuple[int, int]:
    if args.i is None or args.j is None:
        raise CliError(f"eval {args.fn} needs --from and --to", EXIT_INPUT)
    return args.i, args.j


def cmd_eval(args) -> int:
    try:
        h = parse_hike(args.hike)
    except HikeLiteralError as exc:
        raise CliError(str(exc), EXIT_INPUT) from exc
    cls = classify(h)
    if not cls.is_hike:
        raise CliError(f"{h.text()} is not a hike", EXIT_INPUT)
    fn = args.fn
    try:
        if fn == "beta":
            value = beta_closed_form(h)
        elif fn == "mu":
            value = mu(h)
        elif fn == "f":
            value = count_representations(h, *_need_endpoints(args))
        elif fn == "muij":
            value = mu_ij(h, *_need_endpoints(args))
        elif fn == "decomp":
            value = self_avoiding_decomposition_sum(h, *_need_endpoints(args))
        else:
            divs = closed_divisors(h)
            _emit(args, "\n".join(d.text() for d in divs),
                  {"fn": fn, "hike": h.text(), "class": str(cls), "divisors": [d.text() for d in divs]})
            return EXIT_OK
    except (NotAHikeError, NotClosedError, HikeError) as exc:
        raise CliError(str(exc), EXIT_INPUT) from exc
    _emit(args, str(value), {"fn": fn, "hike": h.text(), "class": str(cls), "value": value})
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.random is not None:
        if len(args.random) not in (2, 3):
            raise CliError("--random takes N P [SEED]", EXIT_INPUT)
        try:
            n, p = int(args.random[0]), float(args.random[1])
            seed = int(args.random[2]) if len(args.random) == 3 else args.seed
        except ValueError as exc:
            raise CliError(f"bad --random arguments: {exc}", EXIT_INPUT) from exc
        if n < 1 or not 0.0 <= p <= 1.0:
            raise CliError("--random needs N >= 1 and 0 <= P <= 1", EXIT_INPUT)
        g = random_digraph(n, p, seed)
    elif args.graph is not None:
        g = _load(args.graph, unsafe_large=True)
    else:
        raise CliError("verify needs a graph file or --random N P [SEED]", EXIT_INPUT)
    try:
        report = verify(g, args.max_len, args.identities, corrupt=args.corrupt, unsafe_large=args.unsafe_large)
    except GuardViolation as exc:
        raise CliError(f"{exc}; pass --unsafe-large to override", EXIT_GUARD) from exc
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INPUT) from exc
    if args.json:
        print(report.dumps())
    else:
        print(report.text())
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hikes", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--unsafe-large", action="store_true",
                        help=f"lift the N <= {MAX_N}, L <= {MAX_LEN}, |E| <= {MAX_EDGES} guards")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (("psi", "characteristic-polynomial coefficients psi_k"),
                           ("phi", "series-inverse coefficients phi_k")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("graph")
        group = sp.add_mutually_exclusive_group()
        group.add_argument("--k", type=int, help="print only this coefficient")
        group.add_argument("--max-k", type=int, help="print coefficients 0..K (default N)")
        if name == "phi":
            sp.add_argument("--method", choices=("recursion", "compositions", "beta"), default="recursion")
        sp.set_defaults(func=cmd_psi if name == "psi" else cmd_phi)

    sp = sub.add_parser("mell", parents=[common], help="M^(l) (or M~^(l) with --tilde)")
    sp.add_argument("graph")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--tilde", action="store_true")
    sp.set_defaults(func=cmd_mell)

    sp = sub.add_parser("walks", parents=[common], help="W^l")
    sp.add_argument("graph")
    sp.add_argument("--ell", type=int, required=True)
    sp.set_defaults(func=cmd_walks)

    sp = sub.add_parser("sah", parents=[common], help="self-avoiding hikes of length l from i to j")
    sp.add_argument("graph")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--from", dest="i", type=int, required=True)
    sp.add_argument("--to", dest="j", type=int, required=True)
    sp.set_defaults(func=cmd_sah)

    sp = sub.add_parser("eval", parents=[common], help="evaluate a poset function on a hike literal")
    sp.add_argument("fn", choices=("beta", "mu", "f", "muij", "divisors", "decomp"))
    sp.add_argument("hike", help='e.g. "1>2,2>3,3>1" (use ^m for multiplicity)')
    sp.add_argument("--from", dest="i", type=int)
    sp.add_argument("--to", dest="j", type=int)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("verify", parents=[common], help="run the identity suites")
    sp.add_argument("graph", nargs="?")
    sp.add_argument("--max-len", type=int, default=6)
    sp.add_argument("--identities", default="all",
                    help="comma-separated subset of: " + ", ".join(SUITES) + ", all")
    sp.add_argument("--random", nargs="+", metavar="N P [SEED]",
                    help="verify on a random digraph from the documented LCG")
    sp.add_argument("--seed", type=int, default=0, help="seed for --random when SEED is omitted")
    sp.add_argument("--corrupt", choices=CORRUPTIONS, help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"hikes: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
