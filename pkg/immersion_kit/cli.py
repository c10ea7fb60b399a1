"""Command-line surface: ``immersion-kit {check,decompose,verify,branchwidth,search}``.

Exit codes: 0 success, 1 negative answer or failed verification, 2 usage,
input or scale error, 3 decomposition with uncertified leaves.
"""

import argparse
import logging
import sys
import time
import uuid
from dataclasses import dataclass
from pathlib import Path as FilePath
from typing import Callable, Dict, List, Optional

from .config import Settings, settings as default_settings
from .core.exceptions import CapacityError, CertificateError, GraphDomainError, GraphFormatError
from .core.logging import analysis_logger, setup_logging
from .core.metrics import RunMetrics, metrics_collector
from .models.decomposition import NodeVerdict
from .models.graph import MultiGraph
from .models.search import SearchCriteria
from .services.branchwidth import BranchwidthService
from .services.certificate import dump_certificate, dump_witness, parse_certificate
from .services.decomposer import DecomposerService
from .services.graph_io import read_graph
from .services.relations import K33, K5, RelationsService
from .services.search import SearchService, dump_search_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_UNCERTIFIED = 3

USAGE_ERRORS = (GraphDomainError, CapacityError, GraphFormatError, CertificateError, OSError)


@dataclass
class RunContext:
    settings: Settings
    guard_override: bool = False
    graph: Optional[MultiGraph] = None


def load_pattern(name: str) -> MultiGraph:
    """``k5``, ``k33`` or ``file:<path>``."""
    if name == "k5":
        return K5
    if name == "k33":
        return K33
    if name.startswith("file:"):
        return read_graph(name[len("file:"):])
    raise GraphDomainError(f"unknown pattern {name!r}; use k5, k33 or file:<path>")


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        FilePath(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_check(args: argparse.Namespace, context: RunContext) -> int:
    host = context.graph = read_graph(args.graph)
    pattern = load_pattern(args.pattern)
    relations = RelationsService(context.settings)
    model = relations.contains_immersion(host, pattern, strong=args.strong, guard_override=context.guard_override)
    if model is None:
        print(f"{args.pattern}: not {'strongly ' if args.strong else ''}immersed")
        return EXIT_NEGATIVE
    sys.stdout.write(dump_witness(model))
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace, context: RunContext) -> int:
    graph = context.graph = read_graph(args.graph)
    decomposer = DecomposerService(context.settings)
    trees = decomposer.decompose(graph, witnesses=args.witnesses)
    text = dump_certificate(trees)
    _emit(text, args.out)

    summary = decomposer.summarize(trees)
    print(
        f"components={summary.components} splits={summary.splits} leaves={summary.leaves} "
        f"uncertified={summary.uncertified}",
        file=sys.stderr,
    )
    if args.verify:
        report = decomposer.verify_certificate(graph, parse_certificate(text, decomposer.connectivity))
        if not report.passed:
            for node in report.failures:
                print(f"{node.address}: {'; '.join(node.problems)}", file=sys.stderr)
            for problem in report.problems:
                print(problem, file=sys.stderr)
            return EXIT_NEGATIVE
    return EXIT_UNCERTIFIED if summary.uncertified else EXIT_OK


def cmd_verify(args: argparse.Namespace, context: RunContext) -> int:
    graph = context.graph = read_graph(args.graph)
    decomposer = DecomposerService(context.settings)
    text = FilePath(args.certificate).read_text(encoding="utf-8")
    report = decomposer.verify_certificate(graph, parse_certificate(text, decomposer.connectivity))
    for problem in report.problems:
        print(f"certificate: {problem}")
    for node in report.nodes:
        detail = f" ({'; '.join(node.problems)})" if node.problems else ""
        print(f"{node.address} {node.node_type} {node.verdict.value}{detail}")
    if not report.passed:
        return EXIT_NEGATIVE
    if any(node.verdict == NodeVerdict.UNCERTIFIED for node in report.nodes):
        return EXIT_UNCERTIFIED
    return EXIT_OK


def cmd_branchwidth(args: argparse.Namespace, context: RunContext) -> int:
    graph = context.graph = read_graph(args.graph)
    service = BranchwidthService(context.settings)
    if args.exact:
        width, bd = service.branchwidth_exact(graph, guard_override=context.guard_override)
        print(f"branchwidth {width} exact")
    else:
        width, bd = service.branchwidth_upper(graph)
        lower = service.branchwidth_lower(graph, ceiling=width)
        if lower == width:
            print(f"branchwidth {width} exact")
        else:
            print(f"branchwidth between {lower} and {width}")
    print("parents " + " ".join(str(p) for p in bd.parent_list()))
    for edge_id, node in sorted(bd.leaf_map.items(), key=lambda item: item[1]):
        print(f"{node} -> {edge_id}")
    return EXIT_OK


def cmd_search(args: argparse.Namespace, context: RunContext) -> int:
    criteria = SearchCriteria(
        max_n=args.max_n,
        bw_at_least=args.bw_at_least,
        non_subcubic=args.non_subcubic,
        immersion_free_only=args.immersion_free_only,
    )
    service = SearchService(context.settings)
    witness_dir = FilePath(args.witness_dir) if args.witness_dir else None
    report = service.search(criteria, witness_dir=witness_dir, guard_override=context.guard_override,
                            jobs=args.jobs)
    _emit(dump_search_report(report), args.out)
    print(f"generated={sum(report.generated)} results={len(report.results)}", file=sys.stderr)
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace, RunContext], int]] = {
    "check": cmd_check,
    "decompose": cmd_decompose,
    "verify": cmd_verify,
    "branchwidth": cmd_branchwidth,
    "search": cmd_search,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="immersion-kit",
        description="Immersion containment, edge-cut decomposition and branch-width tools for multigraphs.",
    )
    parser.add_argument("--seed", type=int, default=None, help="seed for randomised routing restarts")
    parser.add_argument("--guard-override", action="store_true", help="ignore scale guards")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="test whether a pattern is immersed in a graph")
    check.add_argument("graph", help="graph file in the interchange format")
    check.add_argument("pattern", help="k5, k33 or file:<path>")
    check.add_argument("--strong", action="store_true", help="require a strong immersion")

    decompose = commands.add_parser("decompose", help="split along internal cuts and certify leaves")
    decompose.add_argument("graph")
    decompose.add_argument("--out", default=None, help="certificate path; standard output when omitted")
    decompose.add_argument("--verify", action="store_true", help="re-verify the written certificate")
    decompose.add_argument("--witnesses", action="store_true", help="embed K5 and K3,3 immersions found in leaves")

    verify = commands.add_parser("verify", help="check a certificate against its graph")
    verify.add_argument("graph")
    verify.add_argument("certificate")

    branchwidth = commands.add_parser("branchwidth", help="branch-width bounds and a decomposition")
    branchwidth.add_argument("graph")
    branchwidth.add_argument("--exact", action="store_true", help="run the exhaustive search")

    search = commands.add_parser("search", help="enumerate small connected graphs by width and degree")
    search.add_argument("--max-n", type=int, required=True)
    search.add_argument("--bw-at-least", type=int, default=0)
    search.add_argument("--non-subcubic", action="store_true")
    search.add_argument("--immersion-free-only", action="store_true")
    search.add_argument("--out", default=None, help="report path; standard output when omitted")
    search.add_argument("--witness-dir", default=None, help="directory for immersion witnesses")
    search.add_argument("--jobs", type=int, default=None, help="worker processes; settings value when omitted")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)

    run_settings = default_settings
    if args.seed is not None:
        run_settings = default_settings.model_copy(update={"default_seed": args.seed})
    context = RunContext(settings=run_settings, guard_override=args.guard_override)

    start = time.time()
    error: Optional[str] = None
    try:
        code = COMMANDS[args.command](args, context)
    except USAGE_ERRORS as e:
        error = str(e)
        print(f"error: {e}", file=sys.stderr)
        code = EXIT_USAGE

    duration_ms = (time.time() - start) * 1000
    graph = context.graph
    metrics_collector.record_run(RunMetrics(
        run_id=str(uuid.uuid4()),
        operation=args.command,
        vertices=graph.order if graph is not None else 0,
        edges=graph.size if graph is not None else 0,
        duration_ms=duration_ms,
        outcome=str(code),
        error_message=error,
    ))
    analysis_logger.log_run(args.command, {"exit_code": code, "duration_ms": round(duration_ms, 1)})
    return code


if __name__ == "__main__":
    sys.exit(main())
