"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from . import reduction
from .bounds import delta_gap, f_mon, f_spc
from .data import DataError, contingency, load_csv
from .experiments import (METHODS, ManifestError, bench, doubling_domains, figure1,
                          load_manifest, write_bench_csv, write_figure1_csv)
from .measures import score_bundle
from .search import SearchConfig, greedy, opus

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(record: dict, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(record, sort_keys=False) + "\n")
        return
    width = max(len(k) for k in record)
    for k, v in record.items():
        if isinstance(v, float):
            v = f"{v:.6f}"
        elif isinstance(v, (list, tuple)):
            v = "{" + ", ".join(map(str, v)) + "}"
        out.write(f"{k:<{width}}  {v}\n")


def cmd_discover(args) -> int:
    data = load_csv(args.path, args.target, args.bins)
    if args.method == "opus":
        cfg = SearchConfig(alpha=args.alpha, bound_kind=args.bound,
                           node_budget=args.node_budget, time_budget=args.time_budget)
        res = opus(data, cfg)
    else:
        cfg = SearchConfig(node_budget=args.node_budget, time_budget=args.time_budget)
        res = greedy(data, use_bound=not args.no_early_stop, bound_kind=args.bound, cfg=cfg)
    record = {
        "best_set": list(res.best_set),
        "f0": res.f0,
        "nodes_explored": res.nodes_explored,
        "wall_time": res.wall_time,
        "terminated_early": res.terminated_early,
        "method": res.method,
        "alpha": args.alpha if args.method == "opus" else 1.0,
        "bound": args.bound,
        "bins": args.bins,
        "seed": args.seed,
    }
    _emit(record, args.json)
    return EXIT_OK


def cmd_score(args) -> int:
    data = load_csv(args.path, args.target, args.bins)
    names = [c.strip() for c in args.columns.split(",") if c.strip()] if args.columns else []
    unknown = [c for c in names if c not in data.columns]
    if unknown:
        raise DataError(f"unknown columns: {', '.join(unknown)}")
    t = contingency(data.joint(names), data.target)
    record = {"columns": names}
    record.update(score_bundle(t).as_dict())
    record.update(f_mon=f_mon(t), f_spc=f_spc(t), delta=delta_gap(t))
    _emit(record, args.json)
    return EXIT_OK


def cmd_bench(args) -> int:
    for m in (args.method_a, args.method_b):
        if m not in METHODS:
            raise UsageError(f"unknown method {m!r}; choose from {', '.join(METHODS)}")
    if args.repetitions < 1:
        raise UsageError("--repetitions must be >= 1")
    datasets = load_manifest(args.manifest)
    if args.alpha is not None:
        datasets = {k: (d, args.alpha) for k, (d, _) in datasets.items()}
    records, report = bench(datasets, args.method_a, args.method_b, args.repetitions)
    if args.csv:
        write_bench_csv(records, args.csv)
    if args.json:
        print(json.dumps({"method_a": report.method_a, "method_b": report.method_b,
                          "rrd": report.rrd, "rnd": report.rnd}))
    else:
        print(report.table())
    return EXIT_OK


def cmd_figure1(args) -> int:
    if args.n < 2 or args.y_domain < 1 or args.trials < 1 or args.min_domain < 1:
        raise UsageError("all sizes must be positive (n >= 2)")
    domains = doubling_domains(args.min_domain, args.max_domain)
    rows = figure1(args.n, args.y_domain, domains, args.trials, args.seed)
    write_figure1_csv(rows, args.out or sys.stdout)
    return EXIT_OK


def _instance_from_args(args) -> reduction.SetCoverInstance:
    if args.example:
        return reduction.example_cover_instance()
    if args.universe_size is None:
        raise UsageError("--universe-size is required unless --example is given")
    if args.subsets:
        try:
            subs = reduction.parse_subsets(args.subsets)
        except ValueError as exc:
            raise UsageError(f"bad --subsets: {exc}") from None
        try:
            return reduction.SetCoverInstance(args.universe_size, subs)
        except ValueError as exc:
            raise DataError(str(exc)) from None
    if args.num_subsets is None:
        raise UsageError("give --subsets, or --num-subsets with --seed")
    rng = np.random.default_rng(args.seed)
    return reduction.random_instance(rng, args.universe_size, args.num_subsets)


def cmd_gen_reduction(args) -> int:
    inst = _instance_from_args(args)
    if args.variant == "tau1":
        data = reduction.tau1(inst)
        l = reduction.base_size(inst)
        meta = reduction.ReductionMeta(inst.universe_size, inst.m, l, 1, l)
    else:
        data, meta = reduction.tau_k(inst, args.k)
    try:
        cover = reduction.min_set_cover_bruteforce(inst) if inst.m <= 20 else None
    except reduction.NoCoverError:
        cover = None
    data.to_csv(args.out)
    sidecar = args.out + ".meta"
    reduction.write_sidecar(sidecar, meta, cover, args.variant)
    print(f"wrote {args.out} ({meta.rows} rows) and {sidecar}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="reliable-fd", description="Reliable functional dependency discovery.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("discover", help="search for the best dependency X -> target")
    d.add_argument("path")
    d.add_argument("--target", required=True)
    d.add_argument("--method", choices=["opus", "greedy"], default="opus")
    d.add_argument("--alpha", type=float, default=1.0)
    d.add_argument("--bound", choices=["mon", "spc", "staged"], default="staged")
    d.add_argument("--bins", type=int, default=5)
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--node-budget", type=int)
    d.add_argument("--time-budget", type=float)
    d.add_argument("--no-early-stop", action="store_true", help="greedy: run to full depth")
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_discover)

    s = sub.add_parser("score", help="score one attribute set")
    s.add_argument("path")
    s.add_argument("--target", required=True)
    s.add_argument("--columns", default="", help="comma-separated; empty for the empty set")
    s.add_argument("--bins", type=int, default=5)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_score)

    b = sub.add_parser("bench", help="compare two methods with rrd/rnd")
    b.add_argument("manifest", help="JSON list of {id, path, target, alpha, bins}")
    b.add_argument("--method-a", default="opus_spc")
    b.add_argument("--method-b", default="opus_mon")
    b.add_argument("--alpha", type=float, help="override every manifest alpha")
    b.add_argument("--repetitions", type=int, default=3)
    b.add_argument("--csv", help="write per-run records here")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bench)

    f = sub.add_parser("figure1", help="dependency-by-chance simulation")
    f.add_argument("--n", type=int, default=1000)
    f.add_argument("--y-domain", type=int, default=4)
    f.add_argument("--min-domain", type=int, default=4)
    f.add_argument("--max-domain", type=int, default=2048)
    f.add_argument("--trials", type=int, default=20)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--out")
    f.set_defaults(func=cmd_figure1)

    g = sub.add_parser("gen-reduction", help="write a set-cover reduction dataset")
    g.add_argument("--example", action="store_true", help="use the five-element example instance")
    g.add_argument("--universe-size", type=int)
    g.add_argument("--subsets", help='e.g. "1,3,4;2,5;1,2,4;1,5"')
    g.add_argument("--num-subsets", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--variant", choices=["tau1", "tauk"], default="tauk")
    g.add_argument("--k", type=int, help="override the copy count")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen_reduction)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"reliable-fd: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, ManifestError, reduction.NoCoverError, OSError) as exc:
        print(f"reliable-fd: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"reliable-fd: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
