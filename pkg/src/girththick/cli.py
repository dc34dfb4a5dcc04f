"""Command-line front end: construct, verify, search, bound, export, regen-certs."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .bounds import theta4_value, theta6_value, theta_lower_bound
from .certificate import (
    EXPORTERS,
    Certificate,
    Provenance,
    ProvenanceKind,
    export,
    load_certificate,
    regenerate_certificates,
    small_g4_decomposition,
)
from .construction import ConstructionTrace, decompose
from .decomposition import verify_decomposition
from .errors import CertificateFormatError, ConstructionFailedError, InvalidParameterError
from .graph import INFINITE, Girth
from .search import SearchProblem, SearchStatus, search_decomposition

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_CONSTRUCTION = 3
EXIT_BUDGET = 4
EXIT_EXHAUSTED = 5


def _girth(text: str) -> Girth:
    if text in ("inf", "INFINITE"):
        return INFINITE
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"girth must be an integer or 'inf', got {text!r}")


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _note(msg: str, to_stdout: bool) -> None:
    # summaries go to stderr when stdout carries the certificate
    print(msg, file=sys.stdout if to_stdout else sys.stderr)


def cmd_construct(args) -> int:
    rules: tuple[str, ...] = ()
    if args.g == 6:
        trace = ConstructionTrace()
        d, theta, prov = decompose(args.n, trace=trace)
        if len(trace.rules) == len(d) and prov.startswith("CONSTRUCTED"):
            rules = tuple(trace.rules)
    elif args.g == 4:
        d, theta, prov = small_g4_decomposition(args.n)
    else:
        print(f"error: construction covers g=4 and g=6 only; use `search` for g={args.g}", file=sys.stderr)
        return EXIT_USAGE
    cert = Certificate.from_decomposition(d, args.g, Provenance.parse(prov), theta, rules)
    _emit(cert.render(), args.out)
    _note(f"parts: {len(d)}", bool(args.out))
    _note(f"status: {theta.render()}", bool(args.out))
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        cert = load_certificate(args.path)
    except CertificateFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    g = cert.g if args.g is None else args.g
    report = verify_decomposition(cert.decomposition(), g)
    print(report.render(g))
    return EXIT_OK if report.overall else EXIT_VERIFY_FAILED


def cmd_search(args) -> int:
    problem = SearchProblem(
        args.n, args.g, args.parts,
        budget_nodes=args.budget_nodes, budget_secs=args.budget_secs, seed=args.seed,
        edge_order=args.edge_order, restart_nodes=args.restart_nodes or None,
    )
    result = search_decomposition(problem)
    s = result.stats
    _note(
        f"status: {result.status.value} nodes={s.nodes_expanded} restarts={s.restarts} "
        f"elapsed={s.elapsed:.2f}s",
        bool(args.out),
    )
    if result.status is SearchStatus.BUDGET:
        return EXIT_BUDGET
    if result.status is SearchStatus.EXHAUSTED:
        return EXIT_EXHAUSTED
    prov = Provenance(ProvenanceKind.SEARCH, args.seed, s.digest())
    _emit(Certificate.from_decomposition(result.decomposition, args.g, prov).render(), args.out)
    return EXIT_OK


def cmd_bound(args) -> int:
    lower = theta_lower_bound(args.n, args.g)
    print(f"lower bound: {lower}")
    theorem = {6: theta6_value, 4: theta4_value}.get(args.g)
    if theorem is None:
        print("theorem value: none for this girth")
        return EXIT_OK
    theta = theorem(args.n)
    print(f"theorem value: {theta.value}")
    if theta.is_exact:
        print(f"status: EXACT {theta.value}")
    else:
        print(f"status: open, bounds {theta.lower}..{theta.upper}")
    return EXIT_OK


def cmd_export(args) -> int:
    try:
        cert = load_certificate(args.path, strict=args.strict)
        text = export(cert, args.format)
    except CertificateFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(text, args.out)
    return EXIT_OK


def cmd_regen(args) -> int:
    outcomes = regenerate_certificates(
        args.out, seed=args.seed, budget_nodes=args.budget_nodes,
        budget_secs=args.budget_secs, force=args.force,
    )
    for o in outcomes:
        print(f"n={o.n} g={o.g} parts={o.parts}: {o.status} {o.path}")
    return EXIT_OK if all(o.status in ("kept", "FOUND") for o in outcomes) else EXIT_BUDGET


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="girththick",
        description="Planar decompositions of K_n with girth constraints.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a decomposition and print its certificate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=_girth, default=6)
    p.add_argument("--out", help="write the certificate here instead of stdout")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="re-check a certificate file")
    p.add_argument("path")
    p.add_argument("--g", type=_girth, default=None, help="girth to check (default: the certificate's)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="budgeted search for a decomposition")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=_girth, required=True)
    p.add_argument("--parts", type=int, required=True)
    p.add_argument("--budget-nodes", type=int, default=None)
    p.add_argument("--budget-secs", type=float, default=None)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--restart-nodes", type=int, default=500, help="Luby restart slice; 0 disables restarts")
    p.add_argument("--edge-order", choices=("lex", "fail-first"), default="lex")
    p.add_argument("--out")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bound", help="print the counting bound and the known value")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=_girth, default=6)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("export", help="convert a certificate to another format")
    p.add_argument("path")
    p.add_argument("--format", required=True, help=f"one of {', '.join(EXPORTERS)}")
    p.add_argument("--strict", action="store_true", help="refuse certificates that fail verification")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("regen-certs", help="regenerate the committed search certificates")
    p.add_argument("--out", default=None, help="certificate directory (default: package data)")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--budget-nodes", type=int, default=None)
    p.add_argument("--budget-secs", type=float, default=None)
    p.add_argument("--force", action="store_true", help="search again even if certificates are valid")
    p.set_defaults(func=cmd_regen)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except ConstructionFailedError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    except InvalidParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
