"""Command-line front end.

Subcommands: ``gen`` (write a synthetic distance matrix), ``validate``
(check a timetable), ``lb`` (lower bounds), ``solve`` (heuristics and the
exact oracle), ``export`` (LP model files), ``bench`` (bound/heuristic table
over instance files). Machine-readable output is JSON lines on stdout;
tables are printed for humans. Exit codes: 0 success/feasible, 1
infeasible/violations, 2 usage errors, 3 internal limits (time or size cap).

Seeds map to runs through Python's ``random.Random(seed)`` (Mersenne
Twister), so identical invocations are reproducible across platforms.
``ITTP_THREADS`` caps the worker count used to fan out seeds.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from multiprocessing import Pool
from pathlib import Path

from . import bounds as bounds_mod
from . import instance as instance_mod
from . import modelgen
from .construct import zero_break_haps
from .errors import CapExceededError, InstanceLoadError
from .exact import solve_exact
from .heuristic import gm_constructive, gm_iterative, initial_assignment
from .schedule import Timetable, extract_haps, travel, validate
from .trips import enumerate_trips, prune_dominated

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3


def _emit(obj: dict) -> None:
    print(json.dumps(obj, sort_keys=True))


def _load_instance(args) -> instance_mod.Instance:
    return instance_mod.load(args.instance, r=args.r, lam=args.lam)


def _threads() -> int:
    raw = os.environ.get("ITTP_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def cmd_gen(args) -> int:
    inst = instance_mod.generate(args.family, args.n, 2, 1)
    inst = dataclasses.replace(inst, name=f"{args.family.upper()}{args.n}")
    out = Path(args.out) if args.out else Path(f"{inst.name}.ittp")
    instance_mod.write(inst, out)
    _emit({"written": str(out), "n": inst.n, "family": args.family.upper()})
    return EXIT_OK


def cmd_validate(args) -> int:
    inst = _load_instance(args)
    timetable = Timetable.read(args.timetable)
    violations = validate(inst, timetable)
    for v in violations:
        _emit({
            "constraint": v.constraint, "teams": list(v.teams),
            "rounds": list(v.rounds), "message": v.message,
        })
    if violations:
        print(f"{len(violations)} violations", file=sys.stderr)
        return EXIT_INFEASIBLE
    report = travel(inst, timetable)
    _emit({
        "feasible": True, "total_distance": report.total_distance,
        "total_legs": report.total_legs, "trips": report.trip_count,
    })
    return EXIT_OK


def cmd_lb(args) -> int:
    inst = _load_instance(args)
    method = args.method
    if method == "minlegs":
        report = bounds_mod.min_legs_formula(inst.n, inst.r, inst.lam)
    else:
        catalog = prune_dominated(enumerate_trips(inst))
        if method == "ilb":
            report = bounds_mod.ilb(inst, catalog)
        else:
            report = bounds_mod.dlb(
                inst, catalog,
                one_factor=(method == "dlb-1f"),
                min_legs=(method == "dlb-minleg"),
                time_limit=args.time_limit,
            )
    _emit({"instance": inst.name, **report.to_dict()})
    return EXIT_LIMIT if report.status == "best-found" else EXIT_OK


def _solve_one_seed(payload) -> dict:
    inst, algo, seed, streak, time_limit = payload
    if algo == "gm-c":
        report = gm_constructive(inst, initial_assignment(inst, seed))
        report = dataclasses.replace(report, seed=seed)
    else:
        report = gm_iterative(inst, seed, streak_limit=streak, time_limit=time_limit)
    return {
        "report": report.to_dict(),
        "timetable": report.best_timetable.to_text() if report.best_timetable else None,
    }


def cmd_solve(args) -> int:
    inst = _load_instance(args)
    out = Path(args.out) if args.out else Path(f"{inst.name}_{args.algo}.tt")
    if args.algo == "exact":
        report = solve_exact(inst, time_limit=args.time_limit, force=args.force)
        _emit({"instance": inst.name, "algo": "exact", **report.to_dict()})
        if report.best_timetable is not None:
            report.best_timetable.write(out)
            _emit({"timetable_written": str(out)})
        return EXIT_LIMIT if report.status == "best-found" else EXIT_OK

    seeds = list(range(1, args.seeds + 1))
    payloads = [(inst, args.algo, seed, args.streak, args.time_limit) for seed in seeds]
    workers = min(_threads(), len(payloads))
    if workers > 1:
        with Pool(workers) as pool:
            results = pool.map(_solve_one_seed, payloads)
    else:
        results = [_solve_one_seed(p) for p in payloads]

    best_value, best_text = None, None
    values = []
    for seed, result in zip(seeds, results):
        _emit({"instance": inst.name, "algo": args.algo, **result["report"]})
        value = result["report"]["best_value"]
        if value is not None:
            values.append(value)
            if best_value is None or value < best_value:
                best_value, best_text = value, result["timetable"]
    if best_text is None:
        print("no feasible timetable found", file=sys.stderr)
        return EXIT_INFEASIBLE
    out.write_text(best_text)
    _emit({
        "instance": inst.name, "algo": args.algo, "aggregate": True,
        "seeds": len(seeds), "best": best_value,
        "mean": sum(values) / len(values),
        "timetable_written": str(out),
    })
    return EXIT_OK


def cmd_export(args) -> int:
    inst = _load_instance(args)
    model = args.model
    try:
        if model == "f1":
            mf = modelgen.export_f1(
                inst, include_minlegs_cut=args.minlegs_cut, out_dir=args.out_dir
            )
        else:
            catalog = enumerate_trips(inst)
            if model == "f2":
                mf = modelgen.export_f2(inst, catalog, out_dir=args.out_dir)
            elif model == "f2-hap":
                if args.timetable:
                    m = extract_haps(Timetable.read(args.timetable))
                else:
                    m = zero_break_haps(inst.n, inst.r)
                mf = modelgen.export_f2_hap(inst, catalog, m, out_dir=args.out_dir)
            else:
                variant = model.replace("-", "_").upper()
                mf = modelgen.export_dlb(
                    inst, prune_dominated(catalog), variant=variant, out_dir=args.out_dir
                )
    except CapExceededError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    _emit({
        "instance": inst.name, "formulation": mf.formulation, "path": str(mf.path),
        "variables": mf.num_variables, "constraints": mf.num_constraints,
    })
    return EXIT_OK


def cmd_bench(args) -> int:
    rows = []
    for path in args.instances:
        inst = instance_mod.load(path, r=args.r, lam=args.lam)
        if args.lb_method == "minlegs":
            lb = bounds_mod.min_legs_formula(inst.n, inst.r, inst.lam).value
        else:
            catalog = prune_dominated(enumerate_trips(inst))
            if args.lb_method == "ilb":
                lb = bounds_mod.ilb(inst, catalog).value
            else:
                lb = bounds_mod.dlb(inst, catalog, time_limit=args.time_limit).value
        payloads = [
            (inst, "gm-it", seed, args.streak, args.time_limit)
            for seed in range(1, args.seeds + 1)
        ]
        workers = min(_threads(), len(payloads))
        if workers > 1:
            with Pool(workers) as pool:
                results = pool.map(_solve_one_seed, payloads)
        else:
            results = [_solve_one_seed(p) for p in payloads]
        values = [r["report"]["best_value"] for r in results if r["report"]["best_value"] is not None]
        ub = min(values) if values else None
        gap = (ub - lb) / ub * 100 if ub else None
        rows.append((inst.name, lb, ub, gap))
        _emit({"instance": inst.name, "lb": lb, "ub": ub, "gap_percent": gap})
    print(f"{'Instance':<16}{'LB':>10}{'UB':>10}{'gap%':>8}")
    for name, lb, ub, gap in rows:
        gap_s = f"{gap:.2f}" if gap is not None else "-"
        print(f"{name:<16}{lb:>10}{ub if ub is not None else '-':>10}{gap_s:>8}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ittp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a synthetic distance matrix")
    p.add_argument("--family", required=True, choices=["CIRC", "LINE", "CON", "circ", "line", "con"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    def add_instance_args(p):
        p.add_argument("instance", help="path to a distance matrix file")
        p.add_argument("--r", type=int, required=True, help="round count")
        p.add_argument("--lambda", dest="lam", type=int, default=3,
                       help="max consecutive home/away games (default 3)")

    p = sub.add_parser("validate", help="check a timetable against an instance")
    add_instance_args(p)
    p.add_argument("timetable", help="timetable text file (h@a tokens)")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("lb", help="compute a lower bound")
    add_instance_args(p)
    p.add_argument("--method", default="ilb",
                   choices=["ilb", "dlb", "dlb-1f", "dlb-minleg", "minlegs"])
    p.add_argument("--time-limit", type=float, default=None)
    p.set_defaults(func=cmd_lb)

    p = sub.add_parser("solve", help="run a heuristic or the exact oracle")
    add_instance_args(p)
    p.add_argument("--algo", default="gm-it", choices=["gm-c", "gm-it", "exact"])
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--streak", type=int, default=10_000)
    p.add_argument("--time-limit", type=float, default=None)
    p.add_argument("--force", action="store_true", help="let the exact solver run beyond oracle scale")
    p.add_argument("--out", help="path for the best timetable")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("export", help="write an LP model file")
    add_instance_args(p)
    p.add_argument("--model", required=True,
                   choices=["f1", "f2", "f2-hap", "dlb", "dlb-1f", "dlb-minleg"])
    p.add_argument("--out-dir", default=".")
    p.add_argument("--minlegs-cut", action="store_true")
    p.add_argument("--timetable", help="timetable whose assignment fixes f2-hap")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("bench", help="bound + heuristic table over instances")
    p.add_argument("instances", nargs="+")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, default=3)
    p.add_argument("--lb-method", default="ilb", choices=["ilb", "dlb", "minlegs"])
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--streak", type=int, default=10_000)
    p.add_argument("--time-limit", type=float, default=None)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InstanceLoadError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceededError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
