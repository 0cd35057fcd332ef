"""Command-line front end: machine-readable JSON on stdout, human log on stderr.

Exit codes: 0 success, 1 domain error (disconnected pair, iteration limit,
strict-mode invariant violation, enumeration limits), 2 usage or parse error.
Identical argv + files + seed produce byte-identical stdout; timings therefore
go to stderr (and to the CSV file for ``bench``), never into stdout JSON.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import _kernel, exact, gen
from .config import Config
from .decomp import build_color_graph, decompose
from .errors import MinPathError, ParseError
from .instance import Instance, load, normalize_terminals, serialize, to_document, validate
from .lp import lp_lower_bound, solve_hitting_lp
from .planar import build_dual, faces, reference_path
from .rounding import Solution, solve, solve_prize, solve_steiner
from .separator import min_color_separator

SCHEMA = 1


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps({"schema": SCHEMA, **doc}, indent=2, sort_keys=True))
    sys.stdout.write("\n")


def _log(msg: str) -> None:
    sys.stderr.write(msg + "\n")


def _load_weights(path: str | None, instance: Instance) -> list[float]:
    if path is None:
        return list(instance.graph.color_weights)
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list) or len(data) != instance.num_colors:
        raise ParseError(f"weights file must list {instance.num_colors} numbers")
    return [float(x) for x in data]


def _solution_doc(sol: Solution) -> dict:
    return {
        "colors": sorted(sol.colors),
        "paths": [list(p) if p is not None else None for p in sol.paths],
        "objective": sol.objective,
        "lower_bound": sol.lower_bound,
        "ratio": sol.ratio,
        "forfeited": list(sol.forfeited),
        "repaired": sol.repaired,
        "mode": sol.mode,
    }


def _config_from_args(args: argparse.Namespace) -> Config:
    kwargs = {}
    if getattr(args, "epsilon", None) is not None:
        kwargs["epsilon"] = args.epsilon
    if getattr(args, "tol", None) is not None:
        kwargs["tolerance"] = args.tol
    if getattr(args, "strategy", None) is not None:
        kwargs["strategy"] = args.strategy
    if getattr(args, "repair", False):
        kwargs["mode"] = "repair"
    if getattr(args, "max_cuts", None) is not None:
        kwargs["max_cuts"] = args.max_cuts
    if getattr(args, "seed", None) is not None:
        kwargs["seed"] = args.seed
    return Config(**kwargs)


def _cmd_validate(args) -> None:
    instance = load(args.instance)
    report = validate(instance)
    _emit(
        {
            "command": "validate",
            "valid": report.ok,
            "violations": [{"code": v.code, "detail": v.detail} for v in report.violations],
        }
    )


def _cmd_solve(args, mode: str) -> None:
    instance = load(args.instance)
    config = _config_from_args(args)
    t0 = time.perf_counter()
    if mode == "path":
        sol = solve(instance, config)
    elif mode == "steiner":
        sol = solve_steiner(instance, config)
    else:
        sol = solve_prize(instance, config)
    elapsed_ms = 1000.0 * (time.perf_counter() - t0)
    _log(f"solved in {elapsed_ms:.1f} ms (kernel: {_kernel.backend_name()})")
    doc = _solution_doc(sol)
    _emit({"command": f"solve-{mode}" if mode != "path" else "solve", **doc})
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump({"schema": SCHEMA, **doc, "ms": elapsed_ms}, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _cmd_separator(args) -> None:
    instance = load(args.instance)
    weights = _load_weights(args.weights, instance)
    pair = instance.terminals[args.pair]
    if args.dump_dual:
        ninst, _ = normalize_terminals(instance)
        ref = reference_path(ninst.graph, pair.s, pair.t)
        dual = build_dual(ninst.graph, faces(ninst.graph), ref)
        doc = {
            "dual_vertices": [{"id": i, "colors": sorted(c)} for i, c in enumerate(dual.vertex_colors)],
            "dual_edges": [
                {"u": e.u, "v": e.v, "colors": sorted(e.colors), "primal": e.primal_edge, "crossing": e.crossing}
                for e in dual.edges
            ],
        }
        with open(args.dump_dual, "w", encoding="utf-8") as fh:
            json.dump({"schema": SCHEMA, **doc}, fh, indent=2, sort_keys=True)
            fh.write("\n")
    res = min_color_separator(instance, weights, pair.s, pair.t)
    if res is None:
        _emit({"command": "separator", "separator": None})
    else:
        _emit(
            {
                "command": "separator",
                "separator": {
                    "colors": sorted(res.colors),
                    "weight": res.weight,
                    "witness_cycle": list(res.witness_cycle),
                },
            }
        )


def _cmd_lp(args) -> None:
    instance = load(args.instance)
    state = solve_hitting_lp(
        instance,
        tolerance=args.tol if args.tol is not None else 1e-7,
        max_cuts=args.max_cuts,
        with_prizes=any(not p.must_connect for p in instance.terminals),
    )
    if args.dump_cuts:
        cuts = [
            {"pair": k, "colors": sorted(colors), "weight_at_cut": w}
            for (k, colors), w in zip(state.constraints, state.cut_weights)
        ]
        with open(args.dump_cuts, "w", encoding="utf-8") as fh:
            json.dump({"schema": SCHEMA, "cuts": cuts}, fh, indent=2, sort_keys=True)
            fh.write("\n")
    _emit(
        {
            "command": "lp",
            "value": lp_lower_bound(state),
            "x": list(state.x),
            "y": list(state.y),
            "num_constraints": state.num_constraints,
            "cuts_added": state.cuts_added,
            "lp_solves": state.lp_solves,
        }
    )


def _cmd_exact(args) -> None:
    instance = load(args.instance)
    if args.kind == "path":
        res = exact.exact_min_color_path(instance, args.limit)
        _emit(
            {
                "command": "exact",
                "kind": "path",
                "value": res.value,
                "colors": sorted(res.colors),
                "path": list(res.paths[0]),
            }
        )
    elif args.kind == "separator":
        weights = _load_weights(args.weights, instance)
        res = exact.exact_min_separator(instance, weights, args.limit)
        if res is None:
            _emit({"command": "exact", "kind": "separator", "separator": None})
        else:
            _emit(
                {
                    "command": "exact",
                    "kind": "separator",
                    "separator": {"colors": sorted(res.colors), "weight": res.value},
                }
            )
    else:
        # --limit bounds colors-plus-pairs: the scan budget is 2^limit states
        res = exact.exact_prize(instance, 1 << min(args.limit, 40))
        _emit(
            {
                "command": "exact",
                "kind": "prize",
                "value": res.value,
                "colors": sorted(res.colors),
                "forfeited": list(res.forfeited),
            }
        )


def _cmd_decompose(args) -> None:
    instance = load(args.instance)
    with open(args.weights, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list) or len(data) != instance.num_colors:
        raise ParseError(f"weights file must list {instance.num_colors} numbers")
    d = [float(x) for x in data]
    ninst, _ = normalize_terminals(instance)
    dual = build_dual(ninst.graph, faces(ninst.graph))
    g = build_color_graph(dual, range(instance.num_colors), d)
    dec = decompose(g, args.delta, args.strategy)
    _emit(
        {
            "command": "decompose",
            "delta": dec.delta,
            "cut": sorted(dec.cut),
            "components": [sorted(c) for c in dec.components],
            "cut_weight": float(sum(d[c] for c in dec.cut)),
        }
    )


def _cmd_gen(args) -> None:
    if args.kind == "grid":
        instance = gen.gen_grid(args.width, args.height, args.obstacles, args.size, args.seed)
    else:
        params = gen.HardnessParams(n=args.n, r=args.r, alpha=args.alpha, beta=args.beta, k=args.k)
        hg = gen.gen_random_hypergraph(args.n, params.edge_probability if args.p is None else args.p, args.r, args.seed)
        instance = gen.gen_diamond_hardness(hg, params, args.seed + 1)
        if args.color_connect:
            instance = gen.add_color_connector(instance)
    text = serialize(instance)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
            fh.write("\n")
    report = validate(instance)
    _emit(
        {
            "command": "gen",
            "kind": args.kind,
            "out": args.out,
            "num_vertices": instance.graph.num_vertices,
            "num_edges": instance.graph.num_edges,
            "num_colors": instance.num_colors,
            "planar": instance.graph.has_embedding,
            "valid": report.ok,
            "instance": None if args.out else to_document(instance),
        }
    )


def _bench_instances(seed: int) -> list[tuple[str, Instance]]:
    menu = [
        ("grid-5x5-o3", dict(width=5, height=5, num_obstacles=3, obstacle_size=4)),
        ("grid-6x6-o4", dict(width=6, height=6, num_obstacles=4, obstacle_size=5)),
        ("grid-7x7-o5", dict(width=7, height=7, num_obstacles=5, obstacle_size=6)),
        ("grid-8x8-o6", dict(width=8, height=8, num_obstacles=6, obstacle_size=5)),
        ("grid-8x8-o8", dict(width=8, height=8, num_obstacles=8, obstacle_size=4)),
        ("grid-6x6-white", dict(width=6, height=6, num_obstacles=0, obstacle_size=1)),
    ]
    return [(f"{name}-s{seed + i}", gen.gen_grid(seed=seed + i, **kw)) for i, (name, kw) in enumerate(menu)]


def _cmd_bench(args) -> None:
    if args.suite != "small":
        raise ValueError(f"unknown suite {args.suite!r}")
    rows = []
    csv_rows = ["instance,opt,lp,alg,ratio,ms"]
    for name, instance in _bench_instances(args.seed):
        t0 = time.perf_counter()
        sol = solve(instance, Config())
        ms = 1000.0 * (time.perf_counter() - t0)
        opt = exact.exact_min_color_path(instance).value if instance.num_colors <= 15 else None
        row = {
            "instance": name,
            "opt": opt,
            "lp": sol.lower_bound,
            "alg": sol.objective,
            "ratio": sol.ratio,
        }
        rows.append(row)
        csv_rows.append(f"{name},{opt},{sol.lower_bound},{sol.objective},{sol.ratio},{ms:.2f}")
        _log(f"{name}: OPT={opt} LP={sol.lower_bound:.4f} ALG={sol.objective} ratio={sol.ratio:.3f} ({ms:.1f} ms)")
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write("\n".join(csv_rows) + "\n")
    _emit({"command": "bench", "suite": args.suite, "seed": args.seed, "rows": rows})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minpath", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="report instance invariant violations")
    p.add_argument("--instance", required=True)

    for mode, name in (("path", "solve"), ("steiner", "solve-steiner"), ("prize", "solve-prize")):
        p = sub.add_parser(name, help=f"approximate the {mode} objective")
        p.add_argument("--instance", required=True)
        p.add_argument("--epsilon", type=float, default=None)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--strategy", choices=("ball_carving", "kpr_chop"), default=None)
        p.add_argument("--max-cuts", type=int, default=None)
        group = p.add_mutually_exclusive_group()
        group.add_argument("--strict", action="store_true", default=True)
        group.add_argument("--repair", action="store_true", default=False)
        p.add_argument("--report", default=None, help="write solution + timings to this file")
        p.set_defaults(mode=mode)

    p = sub.add_parser("separator", help="minimum-weight color separator for one pair")
    p.add_argument("--instance", required=True)
    p.add_argument("--weights", default=None, help="JSON list of per-color weights")
    p.add_argument("--pair", type=int, default=0)
    p.add_argument("--dump-dual", default=None, help="write the colored dual graph to this file")

    p = sub.add_parser("lp", help="solve the hitting LP by cutting planes")
    p.add_argument("--instance", required=True)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--max-cuts", type=int, default=None)
    p.add_argument("--dump-cuts", default=None)

    p = sub.add_parser("exact", help="brute-force baselines for small instances")
    p.add_argument("kind", choices=("path", "separator", "prize"))
    p.add_argument("--instance", required=True)
    p.add_argument("--limit", type=int, default=15)
    p.add_argument("--weights", default=None)

    p = sub.add_parser("decompose", help="small-diameter decomposition of the color graph")
    p.add_argument("--instance", required=True)
    p.add_argument("--weights", required=True, help="JSON list of per-color distance values")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--strategy", choices=("ball_carving", "kpr_chop"), default="ball_carving")

    p = sub.add_parser("gen", help="generate instances")
    gsub = p.add_subparsers(dest="kind", required=True)
    pg = gsub.add_parser("grid")
    pg.add_argument("--width", type=int, required=True)
    pg.add_argument("--height", type=int, required=True)
    pg.add_argument("--obstacles", type=int, required=True)
    pg.add_argument("--size", type=int, required=True)
    pg.add_argument("--seed", type=int, required=True)
    pg.add_argument("--out", default=None)
    ph = gsub.add_parser("hardness")
    ph.add_argument("--n", type=int, required=True)
    ph.add_argument("--r", type=int, required=True)
    ph.add_argument("--alpha", type=float, required=True)
    ph.add_argument("--beta", type=float, required=True)
    ph.add_argument("--k", type=float, required=True)
    ph.add_argument("--p", type=float, default=None, help="override the derived edge probability")
    ph.add_argument("--seed", type=int, required=True)
    ph.add_argument("--color-connect", action="store_true")
    ph.add_argument("--out", default=None)

    p = sub.add_parser("bench", help="run a deterministic benchmark suite")
    p.add_argument("--suite", default="small")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--csv", default=None, help="write rows with timings to this CSV file")

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "validate":
            _cmd_validate(args)
        elif args.command in ("solve", "solve-steiner", "solve-prize"):
            _cmd_solve(args, args.mode)
        elif args.command == "separator":
            _cmd_separator(args)
        elif args.command == "lp":
            _cmd_lp(args)
        elif args.command == "exact":
            _cmd_exact(args)
        elif args.command == "decompose":
            _cmd_decompose(args)
        elif args.command == "gen":
            _cmd_gen(args)
        elif args.command == "bench":
            _cmd_bench(args)
        else:  # pragma: no cover
            raise ValueError(f"unknown command {args.command!r}")
    except (ParseError, ValueError, OSError) as exc:
        _emit({"error": {"code": getattr(exc, "code", "USAGE"), "message": str(exc)}})
        return 2
    except MinPathError as exc:
        _emit({"error": {"code": exc.code, "message": exc.message}})
        return 1
    return 0


def main() -> None:  # pragma: no cover
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":  # pragma: no cover
    main()
