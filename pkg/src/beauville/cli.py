"""Command-line front end.

Exit codes: 0 success, 1 a published fact did not reproduce, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import ExitStack

from . import faults
from .charpoly import Character
from .curves import ACTIONS, cohomology_poly, get_action, k_cohomology_poly
from .exceptional import (
    NumericalType,
    RangeTooSmallError,
    acyclic_set,
    acyclic_support,
    anticanonical_height,
    certificate,
    collection_ext_table,
    Collection,
    enumerate_acyclic_bundles,
    ext_matrix,
    quasi_phantom_report,
    search_collections,
    type_bidegrees,
)
from .paperfacts import run_paper_check
from .reports import FORMATS, _grid, dumps, named_helices, published_order, render_bundles, render_collections, render_matrix, render_table
from .surface import BundleParseError, DEFAULT_RANGE, cohomology_S, cohomology_table, euler_char, hochschild_cohomology, kunneth_poly, parse_bundle


def parse_range(text: str) -> tuple[tuple[int, int], tuple[int, int]]:
    """``imin:imax,jmin:jmax`` (inclusive)."""
    try:
        parts = [tuple(int(x) for x in p.split(":")) for p in text.split(",")]
        if len(parts) != 2 or any(len(p) != 2 for p in parts):
            raise ValueError
    except ValueError:
        raise argparse.ArgumentTypeError(f"range must look like imin:imax,jmin:jmax, got {text!r}") from None
    return parts[0], parts[1]


def parse_character(text: str) -> Character:
    try:
        i, j = (int(x) for x in text.strip("[]").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"character must look like i,j, got {text!r}") from None
    return Character(i, j)


def _common_flags(defaults: bool) -> argparse.ArgumentParser:
    # Shared by the top-level parser and every subcommand; subcommands only override when given.
    p = argparse.ArgumentParser(add_help=False)
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--format", choices=FORMATS, default=d("text"))
    p.add_argument("--range", type=parse_range, default=d(DEFAULT_RANGE), metavar="IMIN:IMAX,JMIN:JMAX")
    p.add_argument("--verbose", "-v", action="store_true", default=d(False))
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="beauville",
        description="Equivariant line bundle cohomology and exceptional collections on the Beauville surface.",
        parents=[_common_flags(True)],
    )
    common = _common_flags(False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cohomology", parents=[common], help="cohomology ranks of one line bundle")
    p.add_argument("bundle", help="O(a,b)[i,j] or K(a,b)[i,j]; the character is optional")

    p = sub.add_parser("curve", parents=[common], help="graded character of H^*(C, O(n)) or H^*(C, K(n))")
    p.add_argument("action", choices=sorted(ACTIONS))
    p.add_argument("n", type=int)
    p.add_argument("--basis", choices=("O", "K"), default="O")
    p.add_argument("--twist", type=parse_character, default=Character(0, 0), metavar="I,J")

    p = sub.add_parser("table", parents=[common], help="grid of cohomology ranks")
    p.add_argument("--basis", choices=("O", "K"), default="K")
    p.add_argument("--twist", type=parse_character, default=Character(0, 0), metavar="I,J")

    sub.add_parser("acyclic", parents=[common], help="nonempty acyclic sets and acyclic line bundles")

    p = sub.add_parser("search", parents=[common], help="all exceptional collections of 4 line bundles")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--certificates", action="store_true", help="include per-collection verification data")

    sub.add_parser("helices", parents=[common], help="group the collections into helices")

    for name, helptext in (
        ("ext-matrix", "Ext matrices of the helices"),
        ("height", "anticanonical heights"),
        ("phantom", "invariants of the orthogonal quasi-phantom categories"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--helix", default="all", help="H1, H2 or all")
        if name == "ext-matrix":
            p.add_argument("--collection", metavar="TYPE", help="Ext table of a single collection, e.g. I_-1")

    sub.add_parser("hochschild", parents=[common], help="Hochschild cohomology of S")

    p = sub.add_parser("paper-check", parents=[common], help="recompute every embedded published value")
    p.add_argument("--json", action="store_true", help="same as --format json")
    p.add_argument("--inject-fault", action="append", choices=sorted(faults.FAULTS), default=[])
    return parser


def _helices(args) -> dict:
    named = named_helices()
    if args.helix == "all":
        return named
    if args.helix not in named:
        raise KeyError(f"unknown helix {args.helix!r}; choose from {sorted(named)}")
    return {args.helix: named[args.helix]}


def cmd_cohomology(args) -> int:
    L = parse_bundle(args.bundle)
    ranks = cohomology_S(L)
    if args.format == "json":
        out = {"bundle": args.bundle.strip(), **ranks.to_json(), "euler": euler_char(L)}
        if args.verbose:
            out["kunneth"] = kunneth_poly(L).to_json()
        print(dumps(out))
        return 0
    print(f"h = {ranks}")
    if args.verbose:
        print(f"h0={ranks.h0} h1={ranks.h1} h2={ranks.h2} chi={euler_char(L)}")
        print(f"[H*(T,L)] = {kunneth_poly(L)}")
    return 0


def cmd_curve(args) -> int:
    action = get_action(args.action)
    if args.basis == "K":
        p = k_cohomology_poly(action, args.n).twist(args.twist)
    else:
        p = cohomology_poly(action, args.n, args.twist)
    if args.format == "json":
        print(dumps({"action": action.name, "exponents": action.to_json(), "poly": p.to_json()}))
    else:
        print(p)
    return 0


def cmd_table(args) -> int:
    i_range, j_range = args.range
    table = cohomology_table(i_range, j_range, args.basis, args.twist)
    out = render_table(table, args.format, args.basis)
    if out:
        print(out)
    return 0


def cmd_acyclic(args) -> int:
    i_range, j_range = args.range
    bundles = enumerate_acyclic_bundles(i_range, j_range)
    support = acyclic_support(i_range, j_range)
    if args.format == "json":
        sets = {f"K({i},{j})": [str(c) for c in acyclic_set(i, j)] for i, j in support}
        print(dumps({"acyclic_sets": sets, "acyclic_bundles": [str(L.to_K_basis()) for L in bundles], "count": len(bundles)}))
        return 0
    rows = [[f"A(K({i},{j}))", str(acyclic_set(i, j))] for i, j in support]
    print(_grid(rows, ["bundle", "acyclic set"], args.format))
    print()
    print(render_bundles(bundles, args.format) if args.verbose else f"{len(bundles)} acyclic line bundles")
    return 0


def cmd_search(args) -> int:
    cs = published_order(search_collections(n_jobs=args.jobs))
    if args.certificates:
        certs = [certificate(c) for c in cs]
        if args.format == "json":
            print(dumps(certs))
            return 0
        print(render_collections(cs, args.format))
        for cert in certs:
            ok = cert["exceptional_by_acyclic_sets"] and cert["exceptional_by_cohomology"]
            print(f"{cert['numerical_type']}: acyclic-set test and cohomology test {'agree: exceptional' if ok else 'FAIL'}")
        return 0
    print(render_collections(cs, args.format))
    return 0


def cmd_helices(args) -> int:
    named = named_helices()
    if args.format == "json":
        print(dumps({name: [str(c.numerical_type()) for c in h.cycle()] for name, h in named.items()}))
        return 0
    for name, h in named.items():
        print(f"{name}: {h}")
        if args.verbose:
            for s in h.cycle()[:-1]:
                print(f"    {s.numerical_type()}: {s}")
    return 0


def cmd_ext_matrix(args) -> int:
    if args.collection:
        c = Collection.from_bidegrees(type_bidegrees(NumericalType.parse(args.collection)))
        print(render_matrix(collection_ext_table(c), args.format, args.collection))
        return 0
    helices = _helices(args)
    if args.format == "json":
        print(dumps({name: [[str(x) for x in row] for row in ext_matrix(h)] for name, h in helices.items()}))
        return 0
    print("\n\n".join(f"M({name}), base spire {h.base.numerical_type()}:\n" + render_matrix(ext_matrix(h), args.format)
                      for name, h in helices.items()))
    return 0


def cmd_height(args) -> int:
    heights = {name: anticanonical_height(h) for name, h in _helices(args).items()}
    if args.format == "json":
        print(dumps(heights))
    elif len(heights) == 1:
        print(next(iter(heights.values())))
    else:
        for name, value in heights.items():
            print(f"h({name}) = {value}")
    return 0


def cmd_hochschild(args) -> int:
    hh = hochschild_cohomology()
    if args.format == "json":
        print(dumps({"HH": hh}))
    else:
        print(",".join(map(str, hh)))
    return 0


def cmd_phantom(args) -> int:
    reports = {name: quasi_phantom_report(h) for name, h in _helices(args).items()}
    if args.format == "json":
        print(dumps({name: [line.to_json() for line in lines] for name, lines in reports.items()}))
        return 0
    for name, lines in reports.items():
        print(f"A{name[1:]} (orthogonal to {name}):")
        rows = [[line.quantity, line.value, line.status, line.reason] for line in lines]
        print(_grid(rows, ["quantity", "value", "status", "reason"], args.format))
    return 0


def cmd_paper_check(args) -> int:
    with ExitStack() as stack:
        if args.inject_fault:
            stack.enter_context(faults.inject(*args.inject_fault))
        results = run_paper_check()
    failed = [r for r in results if not r.passed]
    if args.json or args.format == "json":
        print(dumps({"results": [r.to_json() for r in results], "passed": len(results) - len(failed), "failed": len(failed)}))
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            line = f"{status}  {r.fact.id:<28} {r.fact.citation}"
            if not r.passed:
                line += f"\n      expected: {r.fact.expected}\n      computed: {r.computed if r.error is None else r.error}"
            print(line)
        print(f"{len(results) - len(failed)}/{len(results)} facts pass" + ("; all facts pass" if not failed else ""))
    return 1 if failed else 0


COMMANDS = {
    "cohomology": cmd_cohomology,
    "curve": cmd_curve,
    "table": cmd_table,
    "acyclic": cmd_acyclic,
    "search": cmd_search,
    "helices": cmd_helices,
    "ext-matrix": cmd_ext_matrix,
    "height": cmd_height,
    "hochschild": cmd_hochschild,
    "phantom": cmd_phantom,
    "paper-check": cmd_paper_check,
}


def _attach_range_values(argv: list[str]) -> list[str]:
    # "--range -1:4,..." would otherwise be read as an unknown option
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--range":
            value = next(it, None)
            out.append(tok if value is None else f"--range={value}")
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_attach_range_values(sys.argv[1:] if argv is None else argv))
    try:
        return COMMANDS[args.command](args)
    except (BundleParseError, RangeTooSmallError, KeyError, ValueError) as exc:
        print(f"beauville {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
