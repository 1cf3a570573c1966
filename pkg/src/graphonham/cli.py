"""Command-line interface.

Subcommands: analyze, sample, test, certify, experiment, pathsys.  Any
validation failure exits with status 2 and a machine-readable error object on
stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from fractions import Fraction

from .errors import GraphonHamError
from .fracmatch import (
    FiniteGraph,
    fmn_half,
    fvcn_half,
    graph_peninsula,
    uniquely_half_covered,
)
from .graphon import analyze, load_graphon_file
from .harness import (
    ExperimentConfig,
    default_jobs,
    multinomial_fluctuation_report,
    records_to_csv,
    run_experiment,
)
from .hamilton import classify
from .pathsys import check_path_system, low_degree_path_system
from .presets import PRESET_NAMES, get_preset
from .sampler import load_graph, sample_graph, write_graph


def _load_model(source: str):
    if source in PRESET_NAMES:
        return get_preset(source)
    return load_graphon_file(source)


def _cmd_analyze(args) -> int:
    report = analyze(_load_model(args.graphon))
    print(json.dumps(report.to_dict(), indent=1))
    return 0


def _cmd_sample(args) -> int:
    g = _load_model(args.graphon)
    graph = sample_graph(g, args.n, args.seed, args.trial)
    if args.output:
        meta = write_graph(graph, args.output)
        print(json.dumps({"edges": len(graph.edges), "output": args.output, "sidecar": meta}))
    else:
        sys.stdout.write(graph.to_finite_graph().to_edge_list_text())
    return 0


def _cmd_test(args) -> int:
    g = load_graph(args.graph)
    verdict = classify(
        g,
        budget=args.budget,
        seed=args.seed,
        posa_restarts=args.restarts,
        max_rotations=args.max_rotations,
    )
    print(json.dumps(verdict.to_dict(), indent=1))
    return 0


def _cmd_certify(args) -> int:
    g = load_graph(args.graph)
    cover = fvcn_half(g)
    matching = fmn_half(g)
    uhc, witness = uniquely_half_covered(g)
    pen = graph_peninsula(g)
    out = {
        "n": g.n,
        "fvcn": str(cover.weight),
        "fmn": str(matching.weight),
        "cover_values": [str(v) for v in cover.values],
        "uniquely_half_covered": uhc,
        "uhc_witness": [str(v) for v in witness.values] if witness else None,
        "peninsula": (
            {"kind": pen.kind, "A": list(pen.A), "B": list(pen.B)} if pen else None
        ),
    }
    print(json.dumps(out, indent=1))
    return 0


def _cmd_experiment(args) -> int:
    with open(args.config, "r", encoding="utf-8") as fh:
        config = ExperimentConfig.from_json(fh.read())
    if args.budget is not None:
        config = replace(config, budget=args.budget)
    if args.fluctuation:
        report = multinomial_fluctuation_report(config)
        print(json.dumps(report.to_dict(), indent=1))
        return 0
    report, records = run_experiment(config, out_dir=args.output, jobs=args.jobs)
    if args.format == "csv":
        sys.stdout.write(records_to_csv(records))
    else:
        print(json.dumps(report.to_dict(), indent=1, sort_keys=True))
    return 0


def _cmd_pathsys(args) -> int:
    g = load_graph(args.graph)
    alpha = Fraction(args.alpha)
    system = low_degree_path_system(g, alpha)
    chk = check_path_system(g, system, alpha)
    print(
        json.dumps(
            {
                "paths": [list(p) for p in system.paths],
                "checks": {
                    "min_three_vertices": chk.min_three_vertices,
                    "low_degree_covered": chk.low_degree_covered,
                    "endpoint_degrees": chk.endpoint_degrees,
                    "covered_vertex_count": chk.covered_vertex_count,
                    "few_paths": chk.few_paths,
                },
            },
            indent=1,
        )
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="graphonham",
        description="Structural and Monte Carlo analysis of graphon random graphs",
    )
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="condition report for a graphon file or preset")
    a.add_argument("graphon", help=f"graphon JSON file or preset ({', '.join(PRESET_NAMES)})")
    a.set_defaults(func=_cmd_analyze)

    s = sub.add_parser("sample", help="sample one graph, write edge list + sidecar")
    s.add_argument("graphon")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trial", type=int, default=0)
    s.add_argument("-o", "--output", default=None)
    s.set_defaults(func=_cmd_sample)

    t = sub.add_parser("test", help="Hamiltonicity verdict for an edge-list file")
    t.add_argument("graph")
    t.add_argument("--budget", type=int, default=200_000)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--restarts", type=int, default=20)
    t.add_argument("--max-rotations", type=int, default=None)
    t.set_defaults(func=_cmd_test)

    c = sub.add_parser("certify", help="matching / cover / trap certificates")
    c.add_argument("graph")
    c.set_defaults(func=_cmd_certify)

    e = sub.add_parser("experiment", help="run a Monte Carlo campaign from a config file")
    e.add_argument("config")
    e.add_argument("-o", "--output", default=None, help="directory for trials.csv + report.json")
    e.add_argument("--jobs", type=int, default=default_jobs())
    e.add_argument("--format", choices=("json", "csv"), default="json")
    e.add_argument("--budget", type=int, default=None, help="override the exact-search budget")
    e.add_argument("--fluctuation", action="store_true", help="type-count fluctuation mode")
    e.set_defaults(func=_cmd_experiment)

    ps = sub.add_parser("pathsys", help="low-degree covering path system")
    ps.add_argument("graph")
    ps.add_argument("--alpha", required=True)
    ps.set_defaults(func=_cmd_pathsys)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GraphonHamError as exc:
        print(json.dumps({"error": exc.as_dict()}), file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(
            json.dumps({"error": {"type": "FileNotFound", "message": str(exc)}}),
            file=sys.stderr,
        )
        return 2


if __name__ == "__main__":
    sys.exit(main())
