"""Command line entry point: ``girth <command> ...``.

Exit codes: 0 success, 1 usage/parse/I-O error, 2 no cycle, 3 negative cycle,
4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import minplus
from .coloring import colorings_for
from .cycle_search import find_threshold
from .directed import NoCycle, build_tripartite, detect_negative_cycle, reduce_weights, run_directed, \
    sampled_estimates, search_threshold, threshold_and_reduce
from .graph import GraphError, Kind, apply_random_potentials, plant_negative_cycle, random_graph, read_graph, \
    serialize_graph, symmetrize
from .instance import TriangleInstance, lightest_triangle_per_class, load_instance
from .kcycle import MAX_K, best_certified, instance_gadgets, load_gadget
from .mixed import build_mixed_instance, run_mixed, simple_paths
from .oracles import NegativeCycle, OracleTooLarge, oracle_girth
from .undirected import build_instance, run_undirected
from .verify import SUITES, run_suite

EXIT_OK, EXIT_ERROR, EXIT_NO_CYCLE, EXIT_NEGATIVE, EXIT_VERIFY = 0, 1, 2, 3, 4
MANIFEST = "manifest.json"

log = logging.getLogger("girth")


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which would read as "no cycle"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


class UsageError(Exception):
    pass


def _mode_for(g, requested: str) -> str:
    if requested == "auto":
        return g.kind.value
    if requested == "mixed":
        if any(e.w < 1 for e in g.edges):
            raise UsageError("mixed mode needs weights >= 1")
        return requested
    if requested != g.kind.value:
        raise UsageError(f"--mode {requested} does not match the input kind ({g.kind.value})")
    return requested


def _emit(args, weight, nodes, mode, t, seed, started) -> int:
    shown = None if nodes is None else [v + 1 for v in nodes]
    if args.json:
        report = {"weight": weight, "nodes": shown, "mode": mode, "t": t, "seed": seed,
                  "elapsed_ms": round((time.perf_counter() - started) * 1000, 3)}
        print(json.dumps(report, sort_keys=True))
    elif weight is None:
        print("no cycle")
    else:
        print(f"girth {weight}")
        if shown is not None:
            print("cycle " + " ".join(map(str, shown)))
    return EXIT_NO_CYCLE if weight is None else EXIT_OK


def cmd_girth(args) -> int:
    started = time.perf_counter()
    if args.from_instances:
        return _girth_from_instances(args, started)
    if args.path is None:
        raise UsageError("girth needs an input file or --from-instances")
    g = read_graph(args.path)
    mode = _mode_for(g, args.mode)
    if mode == "undirected":
        rep = run_undirected(g, seed=args.seed, trials=args.trials, deterministic=args.deterministic)
        t = rep.t
    elif mode == "directed":
        rep = run_directed(g, seed=args.seed)
        t = rep.t
    else:
        rep = run_mixed(g, seed=args.seed, trials=args.trials, deterministic=args.deterministic)
        t = rep.t
    for note in getattr(rep, "diagnostics", []):
        print(f"diagnostic: {note}", file=sys.stderr)
    w = rep.witness
    return _emit(args, None if w is None else w.weight, None if w is None else list(w.nodes),
                 mode, t, args.seed, started)


def _girth_from_instances(args, started) -> int:
    root = Path(args.from_instances)
    man = json.loads((root / MANIFEST).read_text())
    best, nodes = None, None
    cand = man.get("upper_candidate")
    if cand is not None:
        best, nodes = cand["weight"], [v - 1 for v in cand["nodes"]]
    for entry in man["instances"]:
        inst = load_instance(root / entry["triangle"])
        if man["target"] == "kcycle":
            got = best_certified(inst, [load_gadget(root / s) for s in entry["gadgets"]])
        else:
            got = _best_triangle(inst)
        if got is not None and (best is None or got < best):
            best, nodes = got, None
    return _emit(args, best, nodes, man["mode"], man.get("t"), man["seed"], started)


def _best_triangle(inst: TriangleInstance):
    ws = [inst.certified_weight(tri, w) for tri, w in lightest_triangle_per_class(inst)]
    return min(ws) if ws else None


def _reduced_instances(g, mode: str, args):
    """(instances, threshold t or None, upper candidate witness or None)."""
    M = g.weight_bound
    if mode == "undirected":
        thr = find_threshold(g)
        if thr.candidate is None:
            return [], thr.t, None
        cols = colorings_for(g.n, args.deterministic, args.trials, args.seed)
        return [build_instance(g, thr.t, thr.table, c) for c in cols], thr.t, thr.candidate
    if mode == "directed":
        est = sampled_estimates(g, args.seed)
        if detect_negative_cycle(est):
            raise NegativeCycle("graph contains a negative cycle")
        try:
            red = threshold_and_reduce(build_tripartite(g, est), M)
        except NoCycle:
            return [], None, None
        return [red], red.t, None
    sp = simple_paths(g, sampled_estimates(symmetrize(g), args.seed))
    out = []
    for col in colorings_for(g.n, args.deterministic, args.trials, args.seed):
        inst = build_mixed_instance(g, sp, col)
        try:
            out.append(reduce_weights(inst, search_threshold(inst, M), M))
        except NoCycle:
            continue
    return out, None, None


def cmd_reduce(args) -> int:
    g = read_graph(args.path)
    mode = _mode_for(g, args.mode)
    if args.target == "kcycle" and not 4 <= args.k <= MAX_K:
        raise UsageError(f"--k must lie in [4, {MAX_K}]")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    instances, t, cand = _reduced_instances(g, mode, args)
    entries = []
    for i, inst in enumerate(instances):
        stem = f"tri_{i:04d}"
        inst.save(out / stem)
        entry = {"triangle": stem, "gadgets": []}
        if args.target == "kcycle":
            for j, gad in enumerate(instance_gadgets(inst, args.k)):
                gstem = f"{stem}_k{args.k}_{j}"
                gad.save(out / gstem)
                entry["gadgets"].append(gstem)
        entries.append(entry)
    manifest = {
        "source": str(args.path), "mode": mode, "target": args.target, "k": args.k if args.target == "kcycle" else None,
        "seed": args.seed, "t": t, "M": g.weight_bound, "n": g.n,
        "upper_candidate": None if cand is None else {"weight": cand.weight, "nodes": [v + 1 for v in cand.nodes]},
        "instances": entries,
    }
    (out / MANIFEST).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    print(f"wrote {len(entries)} instance(s) to {out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    started = time.perf_counter()
    res = run_suite(args.suite, args.seeds, args.base_seed)
    for line in res.lines():
        print(line)
    for f in res.failures[:20]:
        print(f"FAIL {f}")
    print(f"suite {args.suite}: {'ok' if res.ok else 'FAILED'} in {time.perf_counter() - started:.1f}s")
    return EXIT_OK if res.ok else EXIT_VERIFY


def cmd_oracle(args) -> int:
    started = time.perf_counter()
    g = read_graph(args.path)
    res = oracle_girth(g)
    nodes = None if res.witness is None else list(res.witness.nodes)
    return _emit(args, res.weight, nodes, "oracle", None, None, started)


def cmd_generate(args) -> int:
    g = random_graph(args.n, args.p, args.lo, args.hi, args.kind, seed=args.seed,
                     undirected_fraction=args.undirected_fraction)
    if args.potentials is not None:
        g, _ = apply_random_potentials(g, args.potentials, seed=args.seed)
    if args.plant_negative is not None:
        g = plant_negative_cycle(g, args.plant_negative, seed=args.seed)
    text = serialize_graph(g)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_parse(args) -> int:
    g = read_graph(args.path)
    print(f"{g.kind.value} n={g.n} m={g.m} M={g.weight_bound}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="girth", description="Minimum-weight cycles through minimum triangles.")
    p.add_argument("--workers", type=int, default=None,
                   help="kernel threads (default: GIRTH_WORKERS or every core)")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def pipeline_flags(sp):
        sp.add_argument("--mode", choices=("auto", "undirected", "directed", "mixed"), default="auto")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--trials", type=int, default=None, help="colorings (default: ceil(48 ln n))")
        sp.add_argument("--deterministic", action="store_true", help="use the verified coloring family")

    sp = sub.add_parser("girth", help="minimum-weight cycle of a graph file")
    sp.add_argument("path", nargs="?")
    pipeline_flags(sp)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--from-instances", metavar="DIR", help="solve instances written by `reduce`")
    sp.set_defaults(func=cmd_girth)

    sp = sub.add_parser("reduce", help="write the reduced triangle or k-cycle instances")
    sp.add_argument("path")
    pipeline_flags(sp)
    sp.add_argument("--target", choices=("triangle", "kcycle"), default="triangle")
    sp.add_argument("--k", type=int, default=4)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("verify", help="run a seeded property suite")
    sp.add_argument("--suite", choices=SUITES + ("estimates",), required=True)
    sp.add_argument("--seeds", type=int, default=20)
    sp.add_argument("--base-seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("oracle", help="brute-force girth")
    sp.add_argument("path")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("generate", help="seeded random graph")
    sp.add_argument("--kind", choices=[k.value for k in Kind], default="undirected")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=float, default=0.3)
    sp.add_argument("--lo", type=int, default=1)
    sp.add_argument("--hi", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--undirected-fraction", type=float, default=0.5)
    sp.add_argument("--potentials", type=int, default=None, metavar="B",
                    help="shift arc weights by random potentials in [0, B]")
    sp.add_argument("--plant-negative", type=int, default=None, metavar="LEN",
                    help="plant a negative cycle of this length")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("parse", help="validate a graph file")
    sp.add_argument("path")
    sp.set_defaults(func=cmd_parse)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help or a usage error
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    minplus.set_workers(args.workers)
    try:
        return args.func(args)
    except NegativeCycle as exc:
        print(f"negative cycle: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except OracleTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (GraphError, UsageError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
