"""Command-line front end.

Subcommands:
    verify  run named checks and write a report (exit 0 only if all pass)
    series  print the terms of one filtration series
    hdim    print the density profile of a named subgroup along a series
    dial    construct a central normal subgroup with a target density

Exit codes: 0 all pass, 1 verification failure, 2 configuration error,
3 budget exceeded.  Reports are deterministic: identical configuration
(including the seed) gives byte-identical JSON.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .checks import CHECKS, RunConfig, check_budget, run
from .errors import (
    BudgetError,
    ClosureConsistencyError,
    ContainmentError,
    DimensionMismatchError,
    OracleError,
    ParameterError,
    UnknownCheckError,
)
from .group import GroupParams
from .hausdorff import dial_density, profile
from .series import SeriesKind, series
from .subgroups import base_subgroup, center_subgroup, full_group, trivial_subgroup

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_BUDGET = 3

_CONFIG_ERRORS = (
    ParameterError,
    UnknownCheckError,
    DimensionMismatchError,
    ContainmentError,
    ValueError,
)


def _dump_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _report_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["check", "p", "k", "index", "expected", "computed", "pass"])
    for r in report["results"]:
        writer.writerow(
            [
                r["check"],
                r["params"]["p"],
                r["params"]["k"],
                r["index"],
                json.dumps(r["expected"], sort_keys=True),
                json.dumps(r["computed"], sort_keys=True),
                r["pass"],
            ]
        )
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _named_subgroup(name: str, params: GroupParams):
    table = {
        "Z": center_subgroup,
        "H": base_subgroup,
        "G": full_group,
        "trivial": trivial_subgroup,
    }
    if name not in table:
        raise ParameterError(f"unknown subgroup {name!r}; expected one of {sorted(table)}")
    return table[name](params)


def _cmd_verify(args) -> int:
    checks = tuple(s.strip() for s in args.checks.split(",") if s.strip()) or ("none",)
    cfg = RunConfig(
        p=args.p,
        k=args.k,
        checks=checks,
        seed=args.seed,
        fmt=args.format,
        out=args.out,
        force=args.force,
    )
    report = run(cfg)
    text = _dump_json(report) if args.format == "json" else _report_csv(report)
    _emit(text, args.out)
    if not args.out:
        pass
    else:
        status = "pass" if report["pass"] else "FAIL"
        sys.stdout.write(f"{len(report['results'])} rows -> {args.out} [{status}]\n")
    return EXIT_PASS if report["pass"] else EXIT_FAIL


def _cmd_series(args) -> int:
    params = GroupParams(args.p, args.k)
    check_budget(args.p, args.k, args.force)
    kind = SeriesKind.parse(args.kind)
    ser = series(kind, params, seed=args.seed)
    rows = []
    for i, term in ser.levels():
        d = term.describe()
        rows.append(
            {
                "kind": kind.value,
                "p": args.p,
                "k": args.k,
                "index": i,
                "top_exponent": d["top"],
                "dim_base_image": d["dim_base_image"],
                "dim_central": d["dim_central"],
                "log_order": d["log_order"],
                "log_index": d["log_index"],
            }
        )
    if args.format == "json":
        _emit(_dump_json({"schema": "pgroupdim-series/1", "rows": rows}), args.out)
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
        _emit(buf.getvalue(), args.out)
    return EXIT_PASS


def _cmd_hdim(args) -> int:
    params = GroupParams(args.p, args.k)
    check_budget(args.p, args.k, args.force)
    kind = SeriesKind.parse(args.kind)
    H = _named_subgroup(args.subgroup, params)
    prof = profile(H, series(kind, params, seed=args.seed))
    payload = {
        "schema": "pgroupdim-profile/1",
        "note": "finite per-level quotients; no limits are taken at finite level",
        "subgroup": args.subgroup,
        "rows": prof.rows(),
    }
    if args.format == "json":
        _emit(_dump_json(payload), args.out)
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(prof.rows()[0].keys()))
        writer.writeheader()
        writer.writerows(prof.rows())
        _emit(buf.getvalue(), args.out)
    return EXIT_PASS


def _cmd_dial(args) -> int:
    params = GroupParams(args.p, args.k)
    check_budget(args.p, args.k, args.force)
    kind = SeriesKind.parse(args.kind)
    eta = Fraction(args.eta)
    plan = dial_density(eta, series(kind, params, seed=args.seed), depth=args.depth)
    _emit(_dump_json({"schema": "pgroupdim-dial/1", **plan.to_dict()}), args.out)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pgroupdim",
        description="Exact filtration series and density profiles for the "
        "p-group tower; verification checks against the closed forms.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--p", type=int, default=3, help="odd prime (default 3)")
        sp.add_argument("--k", type=int, default=1, help="tower level (default 1)")
        sp.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
        sp.add_argument("--force", action="store_true", help="override the budget table")
        sp.add_argument("--out", default=None, help="write output to this path")
        sp.add_argument("--format", choices=("json", "csv"), default="json")

    sp = sub.add_parser("verify", help="run verification checks")
    common(sp)
    sp.add_argument(
        "--checks",
        default="all",
        help="comma-separated check names, 'all', or 'none' "
        f"(known: {', '.join(sorted(CHECKS))})",
    )
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("series", help="print one filtration series")
    common(sp)
    sp.add_argument("--kind", default="L", help="gamma|L|D|P|Pstar|F")
    sp.set_defaults(func=_cmd_series)

    sp = sub.add_parser("hdim", help="density profile of a subgroup")
    common(sp)
    sp.add_argument("--subgroup", default="Z", help="Z|H|G|trivial")
    sp.add_argument("--kind", default="L", help="gamma|L|D|P|Pstar|F")
    sp.set_defaults(func=_cmd_hdim)

    sp = sub.add_parser("dial", help="dial a central subgroup to a target density")
    common(sp)
    sp.add_argument("--eta", required=True, help="target density, e.g. 1/2")
    sp.add_argument("--kind", default="L", help="gamma|L|D|P|Pstar|F")
    sp.add_argument("--depth", type=int, default=None, help="series depth to process")
    sp.set_defaults(func=_cmd_dial)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except _CONFIG_ERRORS as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ClosureConsistencyError, OracleError) as exc:
        print(f"verification error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
