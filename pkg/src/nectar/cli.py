"""Command-line interface: ``nectar detect``, ``nectar evaluate``, ``nectar generate``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .cover import read_cover, write_cover
from .engine import AlgorithmConfig, SearchMode, beta_sweep, run
from .graph import EdgeListError, load_edge_list
from .metrics import evaluate
from .objectives import ObjectiveKind
from .planted import PlantedPartitionSpec, generate_planted

EXIT_INPUT = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nectar", description="Overlapping community detection by node-centric local search.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    det = sub.add_parser("detect", help="detect communities in an edge list")
    det.add_argument("--input", required=True, type=Path, help="edge list, two labels per line")
    det.add_argument("--output", required=True, type=Path, help="cover file to write")
    betas = det.add_mutually_exclusive_group()
    betas.add_argument("--beta", type=float, help="single beta >= 1")
    betas.add_argument("--beta-sweep", action="store_true",
                       help="try the default beta grid and keep the best run (default)")
    det.add_argument("--alpha", type=float, default=0.8, help="merge threshold (default 0.8)")
    det.add_argument("--max-iter", type=int, default=20, help="external iterations (default 20)")
    det.add_argument("--tr-rate", type=float, default=5.0, help="distinct triangles per node selecting WOCC (default 5)")
    det.add_argument("--objective", choices=["auto", "qext", "wocc"], default="auto")
    det.add_argument("--mode", choices=["node", "community"], default="node")
    det.add_argument("--seed", type=int, default=0)

    ev = sub.add_parser("evaluate", help="score a detected cover against ground truth")
    ev.add_argument("--detected", required=True, type=Path)
    ev.add_argument("--truth", required=True, type=Path)
    ev.add_argument("--match", action="store_true",
                    help="first reduce the detected cover to best F1 matches of truth communities")
    ev.add_argument("--n", type=int, help="universe size (default: union of labels in both files)")
    ev.add_argument("--records", type=Path, help="also append key=value records to this file")

    gen = sub.add_parser("generate", help="write a planted-partition graph and its truth cover")
    gen.add_argument("--communities", type=int, default=4)
    gen.add_argument("--size", type=int, default=32, help="nodes per community")
    gen.add_argument("--p-in", type=float, default=0.3)
    gen.add_argument("--p-out", type=float, default=0.02)
    gen.add_argument("--overlap", type=int, default=0, help="number of overlapping nodes")
    gen.add_argument("--memberships", type=int, default=2, help="communities per overlapping node")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--graph", required=True, type=Path, help="edge list to write")
    gen.add_argument("--truth", required=True, type=Path, help="truth cover to write")
    parser.set_defaults(subparsers={"detect": det, "evaluate": ev, "generate": gen})
    return parser


def _detect(args) -> int:
    try:
        config = AlgorithmConfig(
            beta=args.beta if args.beta is not None else 1.0,
            alpha=args.alpha,
            max_iter=args.max_iter,
            tr_rate=args.tr_rate,
            objective=None if args.objective == "auto" else ObjectiveKind(args.objective),
            mode=SearchMode(args.mode),
            rng_seed=args.seed,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc

    with open(args.input, encoding="utf-8") as fh:
        graph = load_edge_list(fh)
    if graph.n == 0:
        raise EdgeListError(0, "<no edges>")

    report = run(graph, config) if args.beta is not None else beta_sweep(graph, config)
    with open(args.output, "w", encoding="utf-8") as fh:
        write_cover(fh, report.cover, graph.labels)

    print(f"objective={report.objective.value}")
    print(f"beta={report.beta:g}")
    print(f"iterations={report.iterations}")
    print(f"converged={str(report.converged).lower()}")
    print(f"objective_value={report.objective_value:.6f}")
    print(f"communities={len(report.cover)}")
    if graph.self_loops_skipped:
        print(f"self_loops_skipped={graph.self_loops_skipped}")
    return 0


def _evaluate(args) -> int:
    with open(args.detected, encoding="utf-8") as fh:
        detected = read_cover(fh)
    with open(args.truth, encoding="utf-8") as fh:
        truth = read_cover(fh)
    if not detected or not truth:
        raise EdgeListError(0, "<empty cover file>")
    try:
        report = evaluate(detected, truth, n=args.n, match=args.match)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc

    human = f"nmi={report.nmi:.6f} omega={report.omega:.6f} f1={report.avg_f1:.6f}"
    if args.match:
        human += f" matched={report.matched_cover_size}"
    print(human)
    records = [
        f"metric={name} value={value!r} detected={args.detected} truth={args.truth} matched={int(args.match)}"
        for name, value in (("nmi", report.nmi), ("omega", report.omega), ("avg_f1", report.avg_f1))
    ]
    if args.match:
        records.append(
            f"metric=matched_size value={report.matched_cover_size} detected={args.detected} "
            f"truth={args.truth} matched=1"
        )
    print("\n".join(records))
    if args.records:
        with open(args.records, "a", encoding="utf-8") as fh:
            fh.write("\n".join(records) + "\n")
    return 0


def _generate(args) -> int:
    try:
        spec = PlantedPartitionSpec(
            communities=args.communities,
            community_size=args.size,
            p_in=args.p_in,
            p_out=args.p_out,
            overlap_nodes=args.overlap,
            memberships_per_overlap_node=args.memberships,
            seed=args.seed,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    graph, truth = generate_planted(spec)
    with open(args.graph, "w", encoding="utf-8") as fh:
        for u, v in graph.edges():
            fh.write(f"{u} {v}\n")
    with open(args.truth, "w", encoding="utf-8") as fh:
        for community in truth:
            fh.write(" ".join(map(str, community)) + "\n")
    print(f"nodes={graph.n} edges={graph.edge_count} "
          f"triangles_per_node={graph.distinct_triangle_rate():.3f}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handler = {"detect": _detect, "evaluate": _evaluate, "generate": _generate}[args.command]
    try:
        return handler(args)
    except UsageError as exc:
        args.subparsers[args.command].print_usage(sys.stderr)
        print(f"nectar: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, EdgeListError, UnicodeDecodeError) as exc:
        print(f"nectar: cannot read input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
