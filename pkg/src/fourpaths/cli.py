"""Command-line entry point wiring all modules.

Subcommands: construct, count, bounds, optimize, search, verify-ak,
p4-table, verify-all. Exit codes: 0 success, 1 validation or usage
error, 2 property/assertion failure. All numeric output uses 12
significant digits and CSV bytes are identical across runs with the
same flags.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .bounds import bound_report, crossing_point, sweep
from .construct import near_regular, quasi_clique, quasi_star
from .counting import count_report
from .graphs import load_graph_text, to_edge_list_text
from .optimize import OptimizerConfig, maximize_s_restarts
from .search import extremal_search, p4_extremal_table, verify_ahlswede_katona
from .stepfun import format_step_function
from .verify import VerifyConfig, config_from_mapping, load_config_file, verify_all


def _fmt(x: float) -> str:
    return format(x, ".12g")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        raise SystemExit(f"error: {message}")


def _build_parser() -> _Parser:
    p = _Parser(prog="fourpaths", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("construct", help="emit a reference graph as edge-list text")
    sp.add_argument("--kind", required=True,
                    choices=["quasi-clique", "quasi-star", "near-regular"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--e", type=int, required=True)
    sp.add_argument("--out", help="write to a file instead of stdout")

    sp = sub.add_parser("count", help="exact path/star/walk counts for one graph")
    sp.add_argument("--input", required=True,
                    help="edge-list or graph6 file; '-' reads stdin")
    sp.add_argument("--k", type=int, action="append", default=[],
                    help="star size to count (repeatable)")
    sp.add_argument("--csv", nargs="?", const="-", default=None,
                    help="emit CSV (optionally to a file)")

    sp = sub.add_parser("bounds", help="closed-form bound report or curve sweep")
    sp.add_argument("--n", type=int)
    sp.add_argument("--e", type=int)
    sp.add_argument("--sweep", action="store_true")
    sp.add_argument("--points", type=int, default=101)
    sp.add_argument("--csv", help="CSV output file for --sweep")

    sp = sub.add_parser("optimize", help="hill-climb the step functional at fixed mass")
    sp.add_argument("--c", type=float, required=True)
    sp.add_argument("--blocks", type=int, default=6)
    sp.add_argument("--restarts", type=int, default=8)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--trace", help="CSV trace of the best run")
    sp.add_argument("--out", help="write the best step function to a file")

    sp = sub.add_parser("search", help="exhaustive extremal search at one (n, e)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--e", type=int, required=True)
    sp.add_argument("--stat", default="p2",
                    help="p2 | p4 | walks4 | kstar:K")

    sp = sub.add_parser("verify-ak", help="exact 2-edge-path extremality check")
    sp.add_argument("--n", type=int, required=True)

    sp = sub.add_parser("p4-table", help="exhaustive 4-edge-path extrema table")
    sp.add_argument("--n-max", type=int, default=6)
    sp.add_argument("--csv", help="CSV output file")

    sp = sub.add_parser("verify-all", help="run every module property suite")
    sp.add_argument("--config", help="key=value config file")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--n-max", type=int)
    sp.add_argument("--ak-n", type=int)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--restarts", type=int)
    sp.add_argument("--tol", type=float)
    return p


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_construct(args) -> int:
    builders = {
        "quasi-clique": quasi_clique,
        "quasi-star": quasi_star,
        "near-regular": near_regular,
    }
    g = builders[args.kind](args.n, args.e)
    _write(to_edge_list_text(g), args.out)
    return 0


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _cmd_count(args) -> int:
    g = load_graph_text(_read_input(args.input))
    ks = tuple(sorted(set(args.k)))
    rep = count_report(g, ks)
    if args.csv is not None:
        header = ["n", "e", "c", "p2", "p4", "walks4", "hom_density_p4"]
        row = [str(rep.n), str(rep.e), _fmt(rep.density), str(rep.p2), str(rep.p4),
               str(rep.walks4), _fmt(rep.hom_density_p4)]
        for k in ks:
            header.append(f"kstar_{k}")
            row.append(str(rep.kstars[k]))
        _write(",".join(header) + "\n" + ",".join(row) + "\n", args.csv)
        return 0
    lines = [
        f"n               {rep.n}",
        f"e               {rep.e}",
        f"c               {_fmt(rep.density)}",
        f"p2              {rep.p2}",
        f"p4              {rep.p4}",
        f"walks4          {rep.walks4}",
        f"hom_density_p4  {_fmt(rep.hom_density_p4)}",
    ]
    for k in ks:
        lines.append(f"kstar_{k:<9} {rep.kstars[k]}")
    print("\n".join(lines))
    return 0


def _cmd_bounds(args) -> int:
    if args.sweep:
        if args.points < 0:
            raise ValueError("--points must be nonnegative")
        grid = list(np.linspace(0.0, 1.0, args.points)) if args.points else []
        rows = sweep([float(c) for c in grid])
        lines = ["c,lower,upper_star,upper_clique,dominant"]
        for r in rows:
            lines.append(
                f"{_fmt(r.c)},{_fmt(r.lower)},{_fmt(r.upper_star)},"
                f"{_fmt(r.upper_clique)},{r.dominant}"
            )
        _write("\n".join(lines) + "\n", args.csv)
        return 0
    if args.n is None or args.e is None:
        raise ValueError("bounds needs --n and --e (or --sweep)")
    rep = bound_report(args.n, args.e)
    print(f"n             {rep.n}")
    print(f"e             {rep.e}")
    print(f"c             {_fmt(rep.c)}")
    print(f"lower         {_fmt(rep.lower)}")
    print(f"upper_star    {_fmt(rep.upper_star)}")
    print(f"upper_clique  {_fmt(rep.upper_clique)}")
    print(f"upper         {_fmt(rep.upper)}")
    print(f"dominant      {rep.dominant}")
    print(f"crossing_c0   {_fmt(crossing_point())}")
    return 0


def _cmd_optimize(args) -> int:
    best = maximize_s_restarts(
        args.c, args.blocks, args.restarts, args.seed,
        config=OptimizerConfig(), threads=args.threads,
    )
    rep = bound_report_density_line(args.c)
    print(f"c           {_fmt(args.c)}")
    print(f"blocks      {args.blocks}")
    print(f"restarts    {args.restarts}")
    print(f"best_seed   {best.seed}")
    print(f"s_value     {_fmt(best.s_value)}")
    print(rep)
    if args.trace:
        lines = ["iter,move_kind,s_value,t_value,mass"]
        for row in best.trace:
            lines.append(
                f"{row.iteration},{row.move},{_fmt(row.s_value)},"
                f"{_fmt(row.t_value)},{_fmt(row.mass)}"
            )
        _write("\n".join(lines) + "\n", args.trace)
    if args.out:
        _write(format_step_function(best.function), args.out)
    return 0


def bound_report_density_line(c: float) -> str:
    from .bounds import upper_clique_density, upper_star_density

    star, clique = upper_star_density(c), upper_clique_density(c)
    branch = "star" if star >= clique else "clique"
    return (
        f"bound       {_fmt(max(star, clique))} ({branch} branch; "
        f"star {_fmt(star)}, clique {_fmt(clique)})"
    )


def _cmd_search(args) -> int:
    res = extremal_search(args.n, args.e, args.stat)
    print(f"n                {res.n}")
    print(f"e                {res.e}")
    print(f"statistic        {res.statistic}")
    print(f"graphs           {res.num_graphs}")
    print(f"max              {res.max_value}")
    print(f"min              {res.min_value}")
    print(f"quasi_star       {res.quasi_star_value}")
    print(f"quasi_clique     {res.quasi_clique_value}")
    print(f"verdict          {res.verdict}")
    print(f"num_max_classes  {res.num_max_classes}")
    for key in res.max_witnesses:
        print(f"witness          {key.hex()}")
    return 0


def _cmd_verify_ak(args) -> int:
    try:
        rep = verify_ahlswede_katona(args.n)
    except AssertionError as exc:
        print(f"FAIL: {exc}")
        return 2
    print(f"PASS {rep.num_cells}/{rep.num_cells} edge counts (n={args.n})")
    return 0


def _cmd_p4_table(args) -> int:
    rows = p4_extremal_table(args.n_max)
    lines = ["n,e,max,min,quasi_star,quasi_clique,near_regular,verdict,num_max_classes"]
    for r in rows:
        lines.append(
            f"{r.n},{r.e},{r.max_value},{r.min_value},{r.quasi_star},"
            f"{r.quasi_clique},{r.near_regular},{r.verdict},{r.num_max_classes}"
        )
    _write("\n".join(lines) + "\n", args.csv)
    return 0


def _cmd_verify_all(args) -> int:
    overrides = {}
    if args.config:
        overrides.update(load_config_file(args.config))
    for key in ("seed", "n_max", "ak_n", "samples", "restarts", "tol"):
        value = getattr(args, key)
        if value is not None:
            overrides[key] = value
    cfg = config_from_mapping(overrides)
    report = verify_all(cfg)
    width = max(len(f"{r.suite}: {r.name}") for r in report.results)
    for r in report.results:
        label = f"{r.suite}: {r.name}"
        detail = f"  ({r.detail})" if r.detail else ""
        print(f"{'PASS' if r.passed else 'FAIL'}  {label:<{width}}{detail}")
    passed = sum(r.passed for r in report.results)
    print(f"{passed}/{len(report.results)} checks passed")
    return 0 if report.ok else 2


_COMMANDS = {
    "construct": _cmd_construct,
    "count": _cmd_count,
    "bounds": _cmd_bounds,
    "optimize": _cmd_optimize,
    "search": _cmd_search,
    "verify-ak": _cmd_verify_ak,
    "p4-table": _cmd_p4_table,
    "verify-all": _cmd_verify_all,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return 1
        return 0 if exc.code in (0, None) else 1
    except AssertionError as exc:
        print(f"assertion failure: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
