"""Command-line front end.

Exit status: 0 on success, 1 when a check finds a counterexample, 2 on a
usage or input error.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from importlib import resources
from typing import IO, Iterator

from ..formulas import (
    average_period_cyclic,
    n_cyclic,
    n_dihedral,
    n_from_spectrum,
    n_sl2,
    n_symmetric,
)
from ..graph import average_period, build, decompose, export_dot
from ..groups import GroupSpec, parse_descriptor, realize
from ..spectrum import (
    spectrum_bruteforce,
    spectrum_cyclic,
    spectrum_dihedral,
    spectrum_sl2,
    spectrum_symmetric,
)
from .scan import scan_cyclic_average
from .verify import SUITES, render, verify_conjecture, verify_suite

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2


def bundled_catalog() -> str:
    """Path of the shipped catalog of all groups of order <= 64."""
    return str(resources.files("powermap") / "data" / "smallgroups_le64.txt")


@contextlib.contextmanager
def _open_out(path: str) -> Iterator[IO[str]]:
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            yield fh


def _group(args) -> tuple[str, GroupSpec]:
    if not args.group:
        raise ValueError("--group is required")
    return parse_descriptor(args.group)


def _closed_form_count(spec: GroupSpec, a: int):
    if spec.kind == "cyclic":
        return n_cyclic(spec.param, a)
    if spec.kind == "dihedral" and spec.param >= 3:
        return n_dihedral(spec.param, a)
    if spec.kind == "sl2":
        return n_sl2(spec.param, a)
    if spec.kind == "symmetric":
        return n_symmetric(spec.param, a)
    return None


def cmd_count(args) -> int:
    name, spec = _group(args)
    method = args.method
    result = None
    if method in ("auto", "formula"):
        result = _closed_form_count(spec, args.a)
        if result is None and method == "formula":
            raise ValueError(f"no closed form for {name}")
    if result is not None:
        value = result.value
    elif method == "graph":
        value = decompose(build(realize(spec, name), args.a)).count
    else:
        value = n_from_spectrum(spectrum_bruteforce(realize(spec, name)), args.a).value
    print(f"N = {value}")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    name, spec = _group(args)
    closed = {
        "cyclic": spectrum_cyclic,
        "sl2": spectrum_sl2,
        "symmetric": spectrum_symmetric,
    }
    if spec.kind in closed and not args.brute:
        s = closed[spec.kind](spec.param)
    elif spec.kind == "dihedral" and spec.param >= 3 and not args.brute:
        s = spectrum_dihedral(spec.param)
    else:
        s = spectrum_bruteforce(realize(spec, name))
    print("order count")
    for d, w in s.items():
        print(f"{d} {w}")
    print(f"total = {s.order}")
    return EXIT_OK


def cmd_graph(args) -> int:
    name, spec = _group(args)
    pg = build(realize(spec, name), args.a)
    d = decompose(pg)
    if args.dot:
        with _open_out(args.dot) as out:
            export_dot(pg, d, out, undirected=args.undirected)
        if args.dot == "-":
            return EXIT_OK
    lengths = sorted(d.cycle_lengths.tolist())
    sizes = sorted(d.component_sizes.tolist())
    print(f"group = {pg.group.name}")
    print(f"a = {pg.a}")
    print(f"components = {d.count}")
    print(f"cycle_lengths = {' '.join(map(str, lengths))}")
    print(f"component_sizes = {' '.join(map(str, sizes))}")
    return EXIT_OK


def cmd_period(args) -> int:
    name, spec = _group(args)
    if spec.kind == "cyclic" and not args.brute:
        value = average_period_cyclic(spec.param, args.a)
    else:
        value = average_period(decompose(build(realize(spec, name), args.a)))
    print(value)
    return EXIT_OK


def cmd_scan(args) -> int:
    if args.max is None:
        raise ValueError("--max is required")
    if args.csv:
        with _open_out(args.csv) as out:
            avg = scan_cyclic_average(args.max, args.a, csv=out, jobs=args.jobs)
    else:
        avg = scan_cyclic_average(args.max, args.a, jobs=args.jobs)
    print(f"average = {avg}", file=sys.stderr if args.csv == "-" else sys.stdout)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = SUITES if args.suite == "all" else [args.suite]
    ranges = {}
    if args.max is not None:
        ranges["n_max"] = args.max
    if args.a_max is not None:
        ranges["a_max"] = args.a_max
    reports = [verify_suite(n, ranges, jobs=args.jobs) for n in names]
    sys.stdout.write(render(reports, timing=args.timing))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_COUNTEREXAMPLE


def cmd_conjecture(args) -> int:
    path = args.catalog or bundled_catalog()
    with open(path, "rb") as fh:
        report = verify_conjecture(fh, a_max=args.a_max or 20, jobs=args.jobs)
    sys.stdout.write(render([report], timing=args.timing))
    return EXIT_OK if report.ok else EXIT_COUNTEREXAMPLE


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="powermap", description="Cycle structure of x -> x^a on finite groups."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", help="cyclic:N, dihedral:N, symmetric:N, sl2:Q, "
                        "heisenberg:P, product:SPEC+SPEC, catalog:FILE#NAME")
    common.add_argument("--a", type=_positive, default=2, help="exponent (default 2)")
    common.add_argument("--jobs", type=_positive, default=1)

    p = sub.add_parser("count", parents=[common], help="number of cycles N(a, G)")
    p.add_argument("--method", choices=["auto", "formula", "spectrum", "graph"], default="auto")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("spectrum", parents=[common], help="element counts by order")
    p.add_argument("--brute", action="store_true", help="enumerate instead of closed form")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("graph", parents=[common], help="decompose G(a, H); optional DOT")
    p.add_argument("--dot", metavar="PATH|-")
    p.add_argument("--undirected", action="store_true", help="multigraph form in DOT")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("period", parents=[common], help="average eventual period")
    p.add_argument("--brute", action="store_true")
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("scan", parents=[common], help="mean of N(a, C_n) over n <= max")
    p.add_argument("--max", type=_positive)
    p.add_argument("--csv", metavar="PATH|-")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    p.add_argument("--max", type=_positive, help="override the suite's n range")
    p.add_argument("--a-max", type=_positive)
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjecture", parents=[common], help="check N(a,G) >= N(a,C_n) on a catalog")
    p.add_argument("--catalog", help="catalog file (default: bundled groups of order <= 64)")
    p.add_argument("--a-max", type=_positive, default=20)
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, ArithmeticError) as exc:
        print(f"powermap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
