"""Command-line front end.

Exit codes: 0 when every verdict passes, 2 when a verdict fails, 1 for usage
errors (bad flags or inputs outside a supported range).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__, certificate, graph6, identify, reference, search, turan

EXIT_OK, EXIT_USAGE, EXIT_VERDICT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit 2, which is our verdict code
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text)


def _json(obj: object) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _parts(text: str) -> turan.PartVector:
    try:
        return turan.PartVector.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad part vector {text!r}: {exc}") from None


def _default_workers() -> int:
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# subcommands


def cmd_certify(args: argparse.Namespace) -> int:
    if args.rmin < certificate.MIN_R:
        raise UsageError(f"--rmin must be >= {certificate.MIN_R}; smaller r is covered only by search evidence")
    if args.rmax < args.rmin:
        raise UsageError("--rmax must be >= --rmin")
    rep = certificate.certify(args.rmin, args.rmax, args.workers)
    _emit(rep.to_json(timing=not args.no_timing), args.output)
    ok = rep.math_ok and (rep.fixtures_ok or not args.strict_fixtures)
    if not rep.fixtures_ok:
        for entry, got, want in rep.diffs:
            print(f"reference mismatch {entry}: computed {got}, reference {want}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_VERDICT


def cmd_expand(args: argparse.Namespace) -> int:
    squares = certificate.build_squares()
    out = {}
    mismatched = False
    for j, vec in squares.items():
        target = reference.expansion(j)
        bad = identify.mismatches(vec, target)
        mismatched |= bool(bad)
        out[f"P{j}"] = {
            "coefficients": {f"F{i}": c.render() for i, c in enumerate(vec) if not c.is_zero()},
            "reference_mismatch": [f"F{i}" for i in bad],
        }
    if args.format == "json":
        _emit(_json(out), args.output)
    else:
        lines = []
        for name, body in out.items():
            terms = " + ".join(f"({c})*{f}" for f, c in body["coefficients"].items())
            lines.append(f"{name} = {terms}")
            for f in body["reference_mismatch"]:
                lines.append(f"  differs from reference at {f}")
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_VERDICT if mismatched and args.strict_fixtures else EXIT_OK


def cmd_count_turan(args: argparse.Namespace) -> int:
    if args.r < 1 or args.n < 0:
        raise UsageError("need --r >= 1 and --n >= 0")
    spec = turan.TuranSpec(args.r, args.n)
    body = {
        "r": args.r,
        "n": args.n,
        "parts": list(spec.parts().sizes),
        "nu_p3": turan.multipartite_p3(spec.parts()),
        "k4": turan.zykov_k4(spec),
    }
    if args.n <= 32:
        g = turan.turan_graph(spec)
        body["graph6"] = graph6.encode(g)
        if turan.count_p3_fast(g) != body["nu_p3"]:
            _emit(_json(body), args.output)
            return EXIT_VERDICT
    _emit(_json(body) if args.format == "json" else f"{body['nu_p3']}\n", args.output)
    return EXIT_OK


def cmd_multipartite(args: argparse.Namespace) -> int:
    value = turan.multipartite_p3(args.parts)
    if args.format == "json":
        _emit(_json({"parts": list(args.parts.sizes), "nu_p3": value}), args.output)
    else:
        _emit(f"{value}\n", args.output)
    return EXIT_OK


def cmd_delta(args: argparse.Namespace) -> int:
    parts: turan.PartVector = args.parts
    src, dst = args.src - 1, args.dst - 1
    if not (0 <= src < parts.r and 0 <= dst < parts.r) or src == dst:
        raise UsageError(f"--from and --to must be distinct part numbers in 1..{parts.r}")
    if parts.sizes[src] < 1:
        raise UsageError(f"part {args.src} is empty")
    recount = turan.multipartite_p3(parts.moved(src, dst)) - turan.multipartite_p3(parts)
    closed = turan.delta_closed_form(parts, src, dst)
    body = {
        "parts": list(parts.sizes),
        "from": args.src,
        "to": args.dst,
        "delta": recount,
        "closed_form": closed,
        "other_parts_weighted_form": turan.delta_other_parts_weighted(parts, src, dst),
    }
    _emit(_json(body) if args.format == "json" else f"{recount}\n", args.output)
    return EXIT_OK if recount == closed else EXIT_VERDICT


def cmd_search(args: argparse.Namespace) -> int:
    try:
        p = search.SearchProblem(
            args.n, search.named_graph(args.target), search.named_graph(args.forbid), args.mode
        )
    except search.SearchError as exc:
        raise UsageError(str(exc)) from None
    res = search.solve(p, workers=args.workers, checkpoint=args.checkpoint)
    body = res.as_dict(timing=not args.no_timing)
    code = EXIT_OK
    f = p.forbidden
    if f.num_edges() == f.n * (f.n - 1) // 2:
        t = turan.turan_graph(turan.TuranSpec(f.n - 1, p.n))
        unique = res.num_classes == 1 and graph6.encode(res.witnesses[0]) == graph6.encode(
            search.canonical_form(t).graph
        )
        body["turan_value"] = p.count(t)
        body["turan_unique_witness"] = unique
        body["evidence_only"] = True
        if args.expect_turan and not unique:
            code = EXIT_VERDICT
    elif args.expect_turan:
        raise UsageError("--expect-turan needs a complete forbidden graph")
    if args.witnesses is not None:
        search.write_witnesses(res, args.witnesses)
    _emit(_json(body), args.output)
    return code


def cmd_zykov(args: argparse.Namespace) -> int:
    try:
        z = search.solve_zykov(args.n, args.t, args.q, args.mode, args.workers)
    except search.SearchError as exc:
        raise UsageError(str(exc)) from None
    body = z.result.as_dict(timing=not args.no_timing)
    body["turan_unique_witness"] = z.unique
    _emit(_json(body), args.output)
    return EXIT_OK if z.unique else EXIT_VERDICT


def cmd_convergence(args: argparse.Namespace) -> int:
    if args.nmin < 4 or args.nmax < args.nmin:
        raise UsageError("need 4 <= --nmin <= --nmax")
    rows = turan.convergence_table(args.r, range(args.nmin, args.nmax + 1, args.step))
    ok = all(abs(row.gap) * row.n <= args.tolerance for row in rows)
    if args.format == "csv":
        text = turan.CSV_HEADER + "\n" + "".join(row.csv() + "\n" for row in rows)
    else:
        text = _json(
            {
                "r": args.r,
                "tolerance_times_n": str(args.tolerance),
                "within_tolerance": ok,
                "rows": [
                    {"n": row.n, "nu_p3": row.nu_p3, "density_times_24": str(row.density), "gap": str(row.gap)}
                    for row in rows
                ],
            }
        )
    _emit(text, args.output)
    return EXIT_OK if ok else EXIT_VERDICT


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="turangood", description="Exact checks for the P3 Turán density certificate.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser, fmt: tuple[str, ...] = ("json", "text")) -> None:
        p.add_argument("--output", type=Path, help="write the report here instead of stdout")
        p.add_argument("--format", choices=fmt, default=fmt[0])
        p.add_argument("--no-timing", action="store_true", help="omit timing fields for byte-stable output")

    p = sub.add_parser("certify", help="assemble the certificate and check it")
    p.add_argument("--rmin", type=int, default=4)
    p.add_argument("--rmax", type=int, default=1000)
    p.add_argument("--workers", type=int, default=_default_workers())
    p.add_argument("--strict-fixtures", action="store_true", help="treat reference mismatches as failures")
    common(p, ("json",))
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("expand", help="print the three square expansions")
    p.add_argument("--strict-fixtures", action="store_true")
    common(p)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("count-turan", help="P3 and K4 counts of T_r(n)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_count_turan)

    p = sub.add_parser("multipartite", help="P3 count of a complete multipartite graph")
    p.add_argument("--parts", type=_parts, required=True, help="comma-separated part sizes")
    common(p, ("text", "json"))
    p.set_defaults(func=cmd_multipartite)

    p = sub.add_parser("delta", help="P3 change when one vertex moves between parts")
    p.add_argument("--parts", type=_parts, required=True)
    p.add_argument("--from", dest="src", type=int, required=True, help="1-based source part")
    p.add_argument("--to", dest="dst", type=int, required=True, help="1-based destination part")
    common(p, ("text", "json"))
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("search", help="exhaustive ex(n, target, forbidden)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--target", required=True, help="P3, K3, C4, ... or graph6")
    p.add_argument("--forbid", required=True, help="K5, ... or graph6")
    p.add_argument("--mode", choices=("augmentation", "exhaustive"), default="augmentation")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--checkpoint", type=Path)
    p.add_argument("--witnesses", type=Path, help="write extremal graphs as graph6 lines")
    p.add_argument("--expect-turan", action="store_true", help="fail unless T_{q-1}(n) is the unique witness")
    common(p, ("json",))
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("zykov", help="ex(n, K_t, K_q) and uniqueness of the Turán graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--mode", choices=("augmentation", "exhaustive"), default="augmentation")
    p.add_argument("--workers", type=int, default=1)
    common(p, ("json",))
    p.set_defaults(func=cmd_zykov)

    p = sub.add_parser("convergence", help="Turán P3 density against the limit")
    p.add_argument("--r", type=int, default=4)
    p.add_argument("--nmin", type=int, default=40)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--step", type=int, default=1)
    p.add_argument("--tolerance", type=Fraction, default=Fraction(12), help="require |gap| <= tolerance / n")
    common(p, ("csv", "json"))
    p.set_defaults(func=cmd_convergence)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"turangood {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, graph6.Graph6Error) as exc:
        print(f"turangood {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
