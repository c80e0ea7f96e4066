"""Command-line interface.

Subcommands: canon, orbits, build, solve, move, simulate.  All JSON output is
emitted with sorted keys and compact separators, one trailing newline, so
identical inputs give byte-identical outputs.  Exit codes: 0 success, 2 input
error, 3 unsolvable, 4 round budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

from .canonical import automorphism_orbits, canonical_form, occupied_orbits
from .errors import InputError
from .graphs import Configuration, Graph, load_configuration_file, load_graph_file, total_robots
from .hypergraph import ConfigHypergraph, build, export, loads
from .problems import load_problem_file, resolve_final_set
from .simulate import MAX_ROUNDS_EXCEEDED, parse_adversary, run_fsync
from .solver import UNSOLVABLE, decide, plan, solve

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_UNSOLVABLE = 3
EXIT_MAX_ROUNDS = 4


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _load_colored(args) -> tuple[Graph, tuple[int, ...]]:
    """Resolve the --graph/--config pair into (graph, coloring)."""
    if args.config is not None:
        c = load_configuration_file(args.config)
        return c.graph, c.lam
    g = load_graph_file(args.graph)
    return g, (0,) * g.n


def _cache_path(cache_dir: str | None, g: Graph, k: int, scheduler: str) -> Path | None:
    if cache_dir is None:
        cache_dir = os.environ.get("OBLOT_CACHE")
    if cache_dir is None:
        return None
    key_material = _dump(g.to_json_obj()) + f"k={k};scheduler={scheduler}"
    digest = hashlib.sha256(key_material.encode()).hexdigest()
    return Path(cache_dir) / f"{digest}.json"


def _get_hypergraph(g: Graph, k: int, scheduler: str, cache_dir: str | None) -> ConfigHypergraph:
    """Build the hypergraph, going through the cache file when one is configured.

    The cache is observationally transparent: a hit is trusted only if it
    deserializes cleanly; anything else falls back to a fresh build.
    """
    path = _cache_path(cache_dir, g, k, scheduler)
    if path is not None and path.is_file():
        try:
            return loads(path.read_text())
        except (InputError, OSError):
            pass
    h = build(g, k, scheduler)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(export(h, "json"))
    return h


def cmd_canon(args) -> int:
    g, colors = _load_colored(args)
    form = canonical_form(g, colors)
    sys.stdout.write(_dump({"encoding": form.hex(), "labeling": list(form.labeling)}))
    return EXIT_OK


def cmd_orbits(args) -> int:
    g, colors = _load_colored(args)
    c = Configuration(graph=g, lam=colors)
    p = automorphism_orbits(c)
    obj = {
        "orbits": [list(o) for o in p.orbits],
        "ranks": list(p.ranks),
        "occupied": list(occupied_orbits(p, c)),
    }
    sys.stdout.write(_dump(obj))
    return EXIT_OK


def cmd_build(args) -> int:
    g = load_graph_file(args.graph)
    if args.k < 1:
        raise InputError(f"robot count must be at least 1, got {args.k}")
    h = _get_hypergraph(g, args.k, args.scheduler, args.cache)
    Path(args.out).write_text(export(h, "json"))
    if args.dot is not None:
        Path(args.dot).write_text(export(h, "dot"))
    sys.stdout.write(f"configs={len(h.configs)} hyperarcs={len(h.hyperarcs)}\n")
    return EXIT_OK


def cmd_solve(args) -> int:
    g = load_graph_file(args.graph)
    if args.k < 1:
        raise InputError(f"robot count must be at least 1, got {args.k}")
    spec = load_problem_file(args.problem)
    h = _get_hypergraph(g, args.k, "fsync", args.cache)
    fin = resolve_final_set(spec, h)
    result = solve(h, fin)
    entries = plan(h, fin, result)
    for i, entry in enumerate(h.configs):
        solvable = i in result.solvable
        line = {
            "index": i,
            "lambda": list(entry.rep.lam),
            "final": i in fin,
            "solvable": solvable,
            "distance": entries[i].distance if solvable else None,
            "move": (
                entries[i].move.to_json_obj()
                if solvable and entries[i].move is not None
                else None
            ),
        }
        sys.stdout.write(_dump(line))
    return EXIT_OK


def cmd_move(args) -> int:
    c = load_configuration_file(args.config)
    spec = load_problem_file(args.problem)
    h = _get_hypergraph(c.graph, total_robots(c), "fsync", args.cache)
    fin = resolve_final_set(spec, h)
    result = solve(h, fin)
    entries = plan(h, fin, result)
    decision = decide(h, fin, result, entries, h.index_of(c))
    sys.stdout.write(_dump(decision.to_json_obj()))
    return EXIT_UNSOLVABLE if decision.status == UNSOLVABLE else EXIT_OK


def cmd_simulate(args) -> int:
    c = load_configuration_file(args.config)
    spec = load_problem_file(args.problem)
    adversary = parse_adversary(args.adversary)
    trace = run_fsync(c, spec, adversary, max_rounds=args.max_rounds)
    sys.stdout.write(trace.to_json())
    if trace.status == UNSOLVABLE:
        return EXIT_UNSOLVABLE
    if trace.status == MAX_ROUNDS_EXCEEDED:
        return EXIT_MAX_ROUNDS
    return EXIT_OK


def _add_colored_input(sub: argparse.ArgumentParser) -> None:
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--graph", help="graph JSON file (treated as unoccupied)")
    group.add_argument("--config", help="configuration JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oblot",
        description="Decision engine, optimal-move planner and execution "
        "simulator for anonymous oblivious robots on finite graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("canon", help="print canonical encoding and labeling")
    _add_colored_input(p)
    p.set_defaults(fn=cmd_canon)

    p = sub.add_parser("orbits", help="print automorphism orbits and ranks")
    _add_colored_input(p)
    p.set_defaults(fn=cmd_orbits)

    p = sub.add_parser("build", help="build the configuration hypergraph")
    p.add_argument("--graph", required=True, help="graph JSON file")
    p.add_argument("-k", type=int, required=True, help="number of robots")
    p.add_argument("--scheduler", choices=("fsync", "ssync"), default="fsync")
    p.add_argument("--out", required=True, help="output hypergraph JSON path")
    p.add_argument("--dot", help="optional DOT output path")
    p.add_argument("--cache", help="hypergraph cache directory")
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("solve", help="solvability and plan for every class")
    p.add_argument("--graph", required=True, help="graph JSON file")
    p.add_argument("-k", type=int, required=True, help="number of robots")
    p.add_argument("--problem", required=True, help="problem JSON file")
    p.add_argument("--cache", help="hypergraph cache directory")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("move", help="one round decision for a configuration")
    p.add_argument("--config", required=True, help="configuration JSON file")
    p.add_argument("--problem", required=True, help="problem JSON file")
    p.add_argument("--cache", help="hypergraph cache directory")
    p.set_defaults(fn=cmd_move)

    p = sub.add_parser("simulate", help="run rounds against an adversary")
    p.add_argument("--config", required=True, help="configuration JSON file")
    p.add_argument("--problem", required=True, help="problem JSON file")
    p.add_argument(
        "--adversary", default="worst", help="worst | first | random:<seed>"
    )
    p.add_argument("--max-rounds", type=int, default=None, help="step budget")
    p.set_defaults(fn=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


def entry() -> None:
    sys.exit(main())
