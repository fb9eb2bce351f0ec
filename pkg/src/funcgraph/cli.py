"""Command-line interface: ``funcgraph <command> [options]``.

Polynomials are given as comma-separated coefficients in ascending order,
``--poly "a0,a1,...,ad"``; map tables are read from files whose first line
is n and second line lists out[0..n-1].

Exit codes: 0 success (or isomorphic), 1 non-isomorphic, 2 usage error,
3 precondition or budget error, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from .canon import GENERAL, QUADRATIC, is_isomorphic, label_graph
from .census import (bounds_report, enumerate_bruteforce, enumerate_normalized,
                     label_mode_for, write_census)
from .errors import (BudgetExceeded, FuncGraphError, NotPrime, OutOfRange,
                     PreconditionViolated, UnknownFormat)
from .field import field
from .graph import graph_from_poly, read_map_file
from .polyring import Poly
from .stats import TABLES, emit_table, emit_tables, family_stats
from .theory import SUITES, run_suite

EXIT_OK, EXIT_NONISO, EXIT_USAGE, EXIT_PRECONDITION, EXIT_VERIFY = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _int_list(text: str) -> List[int]:
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok != ""]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def parse_poly(text: str, p: int) -> Poly:
    coeffs = _int_list(text)
    if not coeffs:
        raise UsageError("empty polynomial")
    return Poly(field(p), coeffs)


def _graph(prime: Optional[int], poly: Optional[str], map_file: Optional[str],
           what: str = "input"):
    """(graph, degree or None, p or None) from exactly one input source."""
    if (poly is None) == (map_file is None):
        raise UsageError(f"{what}: give exactly one of a polynomial or a map file")
    if map_file is not None:
        return read_map_file(map_file), None, None
    if prime is None:
        raise UsageError("--prime is required with a polynomial")
    F = field(prime)
    f = parse_poly(poly, prime)
    return graph_from_poly(F, f), f.degree, prime


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# commands


def cmd_label(args) -> int:
    G, degree, p = _graph(args.prime, args.poly, args.map_file)
    mode = args.mode
    if mode == "auto":
        mode = label_mode_for(degree, p) if degree is not None else GENERAL
    lab = label_graph(G, mode)
    if args.format == "json":
        _emit(_json(dict(n=G.n, mode=lab.mode, requested_mode=mode, fallback=lab.fallback,
                         components=lab.ascii_components(), hex=lab.hex())), args.out)
    else:
        lines = [f"mode: {lab.mode}" + (" (fallback)" if lab.fallback else ""),
                 f"components: {len(lab.components)}"]
        lines += [f"  {c}" for c in lab.ascii_components()]
        lines.append(f"hex: {lab.hex()}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_iso(args) -> int:
    G, dg, pg = _graph(args.prime, args.poly_a, args.map_a, "first graph")
    H, dh, ph = _graph(args.prime, args.poly_b, args.map_b, "second graph")
    mode = args.mode
    if mode == "auto":
        mode = QUADRATIC if dg == dh == 2 and pg and pg % 2 else GENERAL
    iso = is_isomorphic(G, H, mode)
    print("isomorphic" if iso else "not isomorphic")
    return EXIT_OK if iso else EXIT_NONISO


def cmd_enumerate(args) -> int:
    F = field(args.prime)
    keep = args.emit_labels is not None
    if args.brute_force:
        res = enumerate_bruteforce(F, args.degree, args.jobs, keep)
    else:
        res = enumerate_normalized(F, args.degree, args.jobs, keep)
    if keep:
        write_census(res, labels_path=args.emit_labels)
    _emit(_json(res.summary(args.timing)), args.out)
    return EXIT_OK


def cmd_bounds(args) -> int:
    rep = bounds_report(field(args.prime), args.degree, args.eta_depth)
    _emit(_json(rep.to_dict()), args.out)
    return EXIT_OK


def cmd_stats(args) -> int:
    if args.degree != 2:
        raise PreconditionViolated("statistics are defined for the quadratic family only (--degree 2)")
    primes = _int_list(args.prime_list)
    fmt = args.format
    if fmt not in ("text", "csv", "json"):
        raise UnknownFormat(f"unknown format {fmt!r}; choose from text, csv, json")
    stats = [family_stats(p, args.exclude_special) for p in primes]
    if args.table == "all":
        text = emit_tables(stats, tuple(TABLES), fmt)
    else:
        text = emit_table(stats, args.table, fmt)
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    grid = {}
    if args.degrees:
        grid["d"] = _int_list(args.degrees)
    if args.primes:
        grid["q"] = _int_list(args.primes)
    for key in ("K", "H", "M", "J", "samples", "seed"):
        val = getattr(args, key)
        if val is not None:
            grid[key] = val
    rep = run_suite(args.suite, grid, jobs=args.jobs)
    _emit(rep.to_json(args.timing), args.out)
    if not rep.passed:
        print(f"{args.suite}: {len(rep.failures)} failure(s)", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="funcgraph",
        description="Functional graphs of polynomials over prime fields.",
        epilog="Polynomial coefficients are listed in ascending order: "
               "--poly \"a0,a1,...,ad\" means a0 + a1 X + ... + ad X^d.")
    sub = ap.add_subparsers(dest="command", required=True)
    modes = ("auto", QUADRATIC, GENERAL)

    def out_flag(p):
        p.add_argument("--out", help="write output to this file instead of stdout")

    p = sub.add_parser("label", help="canonical label of one graph")
    p.add_argument("--prime", type=int)
    p.add_argument("--poly", help='coefficients "a0,a1,...,ad" (ascending)')
    p.add_argument("--map-file", help="map-table file")
    p.add_argument("--mode", choices=modes, default="auto")
    p.add_argument("--format", default="text", choices=("text", "json"))
    out_flag(p)
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("iso", help="isomorphism test of two graphs")
    p.add_argument("--prime", type=int)
    p.add_argument("--poly-a")
    p.add_argument("--poly-b")
    p.add_argument("--map-a", help="map-table file of the first graph")
    p.add_argument("--map-b", help="map-table file of the second graph")
    p.add_argument("--mode", choices=modes, default="auto")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("enumerate", help="count N_d(p) by canonical labelling")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--brute-force", action="store_true",
                   help="scan all (p-1) p^d polynomials instead of the normalized family")
    p.add_argument("--emit-labels", metavar="PATH",
                   help="write one hex label per distinct graph, sorted")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include wall time in the summary")
    out_flag(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("bounds", help="upper bound, rho and eta lower bound")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--eta-depth", type=int, metavar="J")
    out_flag(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("stats", help="statistics over X^2 + a")
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--prime-list", required=True, help="comma-separated odd primes")
    p.add_argument("--exclude-special", action="store_true", help="leave out a = 0 and a = -2")
    p.add_argument("--table", choices=("all",) + tuple(TABLES), default="all")
    p.add_argument("--format", default="text", help="text, csv or json")
    out_flag(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--degrees", help="comma-separated d values")
    p.add_argument("--primes", help="comma-separated q values")
    p.add_argument("-K", type=int)
    p.add_argument("-H", type=int)
    p.add_argument("-M", type=int)
    p.add_argument("-J", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true")
    out_flag(p)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, UnknownFormat, OutOfRange) as exc:
        print(f"funcgraph: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotPrime, PreconditionViolated, BudgetExceeded) as exc:
        print(f"funcgraph: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except FuncGraphError as exc:
        print(f"funcgraph: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (OSError, ValueError) as exc:
        print(f"funcgraph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
