"""Command-line front end.

Subcommands: orbits, count, pair, rep, verify.  Exit codes: 0 success,
1 verification mismatch, 2 usage error, 3 resource guard.  Identical
invocations produce byte-identical output; timings are printed only
with --timings.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import counting, oracle, rational
from . import symbols as sy
from .errors import ResourceGuardError
from .gf2 import field_of_order
from .quadform import WittType, standard_space

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_GUARD = 3

TYPE_BY_FLAG = {"odd": WittType.ODD_DEFECTIVE, "+": WittType.PLUS, "-": WittType.MINUS}
SERIES_BY_FLAG = {"B": "B", "D+": "Dplus", "D-": "Dminus", "SOD+": "SOplus"}

CROSSCHECK_MAX_RANK = 8


class UsageError(Exception):
    pass


def _emit_json(data) -> None:
    print(json.dumps(data, indent=2))


def _check_parity(dim: int, wt: WittType) -> None:
    if (dim % 2 == 1) != (wt is WittType.ODD_DEFECTIVE):
        raise UsageError(f"--dim {dim} does not match --type {wt.value}")


def _label_rows(labels):
    rows = [("symbol", "bits", "type", "tag", "pair", "rank", "splits")]
    for lab in labels:
        d = lab.to_json_dict()
        pair = rational.label_to_pair(lab)
        rows.append(
            (
                d["symbol"],
                d["bits"],
                d["type"],
                d.get("tag", "-"),
                f"{list(pair.alpha)}|{list(pair.beta)}",
                str(d["component_group_rank"]),
                str(2 ** d["component_group_rank"]),
            )
        )
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows)


def cmd_orbits(args) -> int:
    wt = TYPE_BY_FLAG[args.type]
    _check_parity(args.dim, wt)
    if args.so and wt is WittType.ODD_DEFECTIVE:
        raise UsageError("--so does not apply to odd type (SO = O there)")
    if args.dim > 200:
        raise UsageError("--dim is capped at 200 for the combinatorial commands")
    labels = rational.enumerate_rational_orbits(args.dim, wt, "SO" if args.so else "O")
    if args.format == "json":
        _emit_json(
            {
                "schema_version": "1",
                "dim": args.dim,
                "type": wt.value,
                "group": "SO" if args.so else "O",
                "labels": [lab.to_json_dict() for lab in labels],
            }
        )
    else:
        print(_label_rows(labels))
        print(f"total: {len(labels)}")
    return EXIT_OK


def cmd_count(args) -> int:
    series = SERIES_BY_FLAG[args.series]
    if args.max_rank > 60:
        raise UsageError("--max-rank is capped at 60")
    if args.max_rank < 1:
        raise UsageError("--max-rank must be >= 1")
    rows = []
    for n in range(1, args.max_rank + 1):
        value = counting.orbit_count(series, n)
        cross = ""
        if n <= CROSSCHECK_MAX_RANK:
            cross = str(_enumeration_crosscheck(series, n))
        rows.append((n, value, cross))
    if args.format == "json":
        _emit_json(
            {
                "schema_version": "1",
                "series": args.series,
                "counts": [
                    {"rank": n, "value": v, "enumeration": int(c) if c else None}
                    for n, v, c in rows
                ],
            }
        )
    elif args.format == "csv":
        print("rank,value,enumeration")
        for n, v, c in rows:
            print(f"{n},{v},{c}")
    else:
        header = ("rank", "value", "enumeration")
        table = [header] + [(str(n), str(v), c or "-") for n, v, c in rows]
        widths = [max(len(r[c]) for r in table) for c in range(3)]
        for r in table:
            print("  ".join(c.rjust(w) for c, w in zip(r, widths)))
    return EXIT_OK


def _enumeration_crosscheck(series: str, n: int) -> int:
    if series == "B":
        return len(rational.enumerate_rational_orbits(2 * n + 1, WittType.ODD_DEFECTIVE, "O"))
    if series == "Dplus":
        return len(rational.enumerate_rational_orbits(2 * n, WittType.PLUS, "O"))
    if series == "Dminus":
        return len(rational.enumerate_rational_orbits(2 * n, WittType.MINUS, "O"))
    return len(rational.enumerate_rational_orbits(2 * n, WittType.PLUS, "SO"))


def _parse_bits(raw: str | None, sym) -> tuple[int, ...]:
    breaks = sy.break_positions(sym)
    if raw is None or raw in ("", "-"):
        bits = (0,) * len(breaks)
    else:
        if any(c not in "01" for c in raw):
            raise UsageError(f"--bits must be a 0/1 string, got {raw!r}")
        bits = tuple(int(c) for c in raw)
    if len(bits) != len(breaks):
        raise UsageError(
            f"symbol has {len(breaks)} break position(s), --bits supplies {len(bits)}"
        )
    return bits


def _label_from_args(args) -> rational.RationalOrbitLabel:
    try:
        sym = sy.parse_symbol(args.symbol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    bits = _parse_bits(args.bits, sym)
    if sym.defective:
        form = WittType.ODD_DEFECTIVE
    else:
        form = WittType.PLUS if sum(bits) % 2 == 0 else WittType.MINUS
    return rational.RationalOrbitLabel(sym, bits, form)


def cmd_pair(args) -> int:
    lab = _label_from_args(args)
    pair = rational.label_to_pair(lab)
    if args.format == "json":
        _emit_json({"schema_version": "1", "label": lab.to_json_dict()})
    else:
        print(f"alpha={list(pair.alpha)} beta={list(pair.beta)}")
    return EXIT_OK


def cmd_rep(args) -> int:
    q = args.q
    lab = _label_from_args(args)
    space, t = rational.representative(lab, field_of_order(q))
    if args.format == "json":
        _emit_json(
            {
                "schema_version": "1",
                "label": lab.to_json_dict(),
                "space": {
                    "dim": space.dim,
                    "q": q,
                    "q_diag": list(space.q_diag),
                    "gram": [list(r) for r in space.gram],
                },
                "matrix": [list(r) for r in t],
            }
        )
    else:
        print(f"label: {lab.text()}")
        print(f"space: dim={space.dim} q={q}")
        print(f"q_diag: {list(space.q_diag)}")
        print("gram:")
        for row in space.gram:
            print("  " + " ".join(str(x) for x in row))
        print("T:")
        for row in t:
            print("  " + " ".join(str(x) for x in row))
    return EXIT_OK


def cmd_verify(args) -> int:
    wt = TYPE_BY_FLAG[args.type]
    _check_parity(args.dim, wt)
    if args.so and wt is WittType.ODD_DEFECTIVE:
        raise UsageError("--so does not apply to odd type (SO = O there)")
    if args.q not in (2, 4):
        raise UsageError("--q must be 2 or 4 for verification runs")
    space = standard_space(field_of_order(args.q), args.dim, wt)
    result = oracle.reconcile(space, "SO" if args.so else "O", large=args.large)
    report = result.report
    if args.format == "json":
        data = report.to_json_dict(include_timing=args.timings)
        data["verified"] = result.ok
        if not result.ok:
            data["diff"] = result.diff
        _emit_json(data)
    else:
        print(report.to_table())
        if args.timings:
            for key, value in report.timings.items():
                print(f"time[{key}]: {value:.3f}s")
        if result.ok:
            print("verified: orbit structure matches the classification")
        else:
            print("MISMATCH:")
            print(json.dumps(result.diff, indent=2))
    return EXIT_OK if result.ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitforge",
        description="Nilpotent orbits of orthogonal Lie algebras over F_{2^k}",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_orbits = sub.add_parser("orbits", help="list rational orbit labels")
    p_orbits.add_argument("--dim", type=int, required=True)
    p_orbits.add_argument("--type", choices=("odd", "+", "-"), required=True)
    p_orbits.add_argument("--so", action="store_true")
    p_orbits.add_argument("--q", type=int, default=2, help="accepted for symmetry; labels are q-independent")
    p_orbits.add_argument("--format", choices=("table", "json"), default="table")
    p_orbits.set_defaults(func=cmd_orbits)

    p_count = sub.add_parser("count", help="orbit-count tables by series")
    p_count.add_argument("--series", choices=tuple(SERIES_BY_FLAG), required=True)
    p_count.add_argument("--max-rank", type=int, required=True)
    p_count.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p_count.set_defaults(func=cmd_count)

    p_pair = sub.add_parser("pair", help="bipartition coordinates of a label")
    p_pair.add_argument("--symbol", required=True)
    p_pair.add_argument("--bits")
    p_pair.add_argument("--format", choices=("table", "json"), default="table")
    p_pair.set_defaults(func=cmd_pair)

    p_rep = sub.add_parser("rep", help="explicit matrix representative of a label")
    p_rep.add_argument("--symbol", required=True)
    p_rep.add_argument("--bits")
    p_rep.add_argument("--q", type=int, default=2)
    p_rep.add_argument("--format", choices=("table", "json"), default="table")
    p_rep.set_defaults(func=cmd_rep)

    p_verify = sub.add_parser("verify", help="brute-force verification of a space")
    p_verify.add_argument("--dim", type=int, required=True)
    p_verify.add_argument("--type", choices=("odd", "+", "-"), required=True)
    p_verify.add_argument("--so", action="store_true")
    p_verify.add_argument("--q", type=int, default=2)
    p_verify.add_argument("--large", action="store_true")
    p_verify.add_argument("--timings", action="store_true")
    p_verify.add_argument("--format", choices=("table", "json"), default="table")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceGuardError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
