"""Command-line front end.

Subcommands: sample, refine, canon, iso, analyze, check, experiment.
`iso` exits 0/1/2 for isomorphic / non-isomorphic / unknown; `experiment`
exits 3 when a calibration threshold fails (fractions are still written).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import analysis, harness, inequalities
from .canonical import (
    CanonicalLabelling,
    IsoVerdict,
    are_isomorphic,
    canonical_labelling,
)
from .graph import apply_permutation, graph_to_text, read_graph, write_graph
from .refinement import VertexPartition, is_discrete, read_partition, refine_to_stable
from .sampler import RngSeed, sample_regular


def _parse_int_list(text: str) -> List[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _cmd_sample(args) -> int:
    g = sample_regular(args.n, args.d, RngSeed(args.seed), args.max_attempts)
    if args.out:
        write_graph(g, args.out)
    else:
        sys.stdout.write(graph_to_text(g))
    return 0


def _parse_seed_spec(spec: str, n: int) -> VertexPartition:
    if spec == "trivial":
        return VertexPartition.trivial(n)
    if spec.startswith("singleton:"):
        return VertexPartition.singleton(n, int(spec.split(":", 1)[1]))
    if spec.startswith("parts:"):
        return read_partition(spec.split(":", 1)[1])
    raise SystemExit(f"bad --seed spec {spec!r}: use singleton:V, parts:FILE or trivial")


def _cmd_refine(args) -> int:
    g = read_graph(args.graph)
    parts = _parse_seed_spec(args.seed, g.n)
    trace = refine_to_stable(g, parts)
    print(f"# rounds {trace.rounds}")
    print(f"# total_steps {trace.total_steps}")
    print("# class_counts " + " ".join(str(c) for c in trace.class_counts_per_round))
    print(f"# discrete {str(is_discrete(trace.stable)).lower()}")
    for part in trace.stable.partition().parts:
        print(" ".join(str(int(v)) for v in part))
    return 0


def _cmd_canon(args) -> int:
    g = read_graph(args.graph)
    result = canonical_labelling(g, strategy=args.strategy)
    if isinstance(result, CanonicalLabelling):
        doc = {
            "status": "ok",
            "seed_strategy": result.seed_strategy,
            "rounds_used": result.rounds_used,
            "perm": [int(x) for x in result.perm],
        }
        print(json.dumps(doc, sort_keys=True))
        if args.emit_form:
            write_graph(apply_permutation(g, result.perm), args.emit_form)
        return 0
    print(json.dumps({"status": result.reason.value,
                      "seed_strategy": result.seed_strategy}, sort_keys=True))
    return 1


def _cmd_iso(args) -> int:
    g1 = read_graph(args.g1)
    g2 = read_graph(args.g2)
    result = are_isomorphic(g1, g2)
    if result.verdict is IsoVerdict.ISOMORPHIC:
        print(" ".join(str(int(x)) for x in result.mapping))
        return 0
    print(result.verdict.value)
    return 1 if result.verdict is IsoVerdict.NON_ISOMORPHIC else 2


def _read_vertex_set(path) -> List[int]:
    out: List[int] = []
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            out.extend(int(tok) for tok in line.split())
    return out


def _cmd_analyze(args) -> int:
    g = read_graph(args.graph)
    if args.mode == "lambda":
        est = analysis.lambda_estimate(g, max_iters=args.max_iters, tol=args.tol)
        doc = {
            "lambda_hat": est.lambda_hat,
            "iterations": est.iterations,
            "residual": est.residual,
            "converged": est.converged,
            "used_squared_operator": est.used_squared_operator,
        }
    elif args.mode == "mixing":
        lam = analysis.lambda_estimate(g).lambda_hat
        rng = RngSeed(args.seed).generator()
        pairs = []
        all_ok = True
        for _ in range(args.pairs):
            size_a = int(rng.integers(1, g.n))
            size_b = int(rng.integers(1, g.n))
            set_a = rng.choice(g.n, size=size_a, replace=False)
            set_b = rng.choice(g.n, size=size_b, replace=False)
            rep = analysis.mixing_discrepancy(g, set_a, set_b, lam)
            all_ok = all_ok and rep.ok
            pairs.append({
                "size_a": size_a, "size_b": size_b, "e_count": rep.e_count,
                "expected": rep.expected, "deviation": rep.deviation,
                "bound": rep.bound, "ok": rep.ok,
            })
        doc = {"lambda_hat": lam, "pairs": pairs, "all_ok": all_ok}
    elif args.mode == "spheres":
        rep = analysis.sphere_growth_check(g, [args.source], args.c)
        doc = {
            "source_size": rep.source_size,
            "c": rep.c,
            "growth_factor": rep.growth_factor,
            "all_ok": rep.all_ok,
            "radii": [
                {"radius": r.radius, "sphere_size": r.sphere_size,
                 "lower_bound": r.lower_bound, "ok": r.ok, "vacuous": r.vacuous}
                for r in rep.records
            ],
        }
    elif args.mode == "hist":
        hist = analysis.degree_histogram_into_set(g, _read_vertex_set(args.set))
        doc = {"histogram": {str(k): v for k, v in sorted(hist.items())}}
    else:  # pragma: no cover
        raise SystemExit(f"unknown analyze mode {args.mode!r}")
    print(json.dumps(doc, sort_keys=True))
    return 0


def _cmd_check(args) -> int:
    if args.what == "inequalities":
        reports = [
            inequalities.check_lemma_aux(args.max),
            inequalities.check_hypergeometric_anticoncentration(args.max, args.kmax),
        ]
        print(json.dumps([r.to_dict() for r in reports], sort_keys=True))
        return 0 if all(r.ok for r in reports) else 1
    raise SystemExit(f"unknown check {args.what!r}")  # pragma: no cover


def _cmd_experiment(args) -> int:
    cfg = harness.ExperimentConfig(
        n_list=tuple(_parse_int_list(args.n)),
        d_list=tuple(_parse_int_list(args.d)),
        samples=args.samples,
        master_seed=args.seed,
        seed_strategies=tuple(args.strategy.split(",")),
        max_attempts=args.max_attempts,
        out_path=args.out,
        out_format=args.format,
    )
    if args.kind == "discreteness":
        reports = harness.run_discreteness_experiment(cfg)
    elif args.kind == "seed-validity":
        reports = harness.run_seed_validity_experiment(cfg)
    else:
        reports = harness.run_iso_roundtrip_experiment(cfg)
    if cfg.out_path:
        harness.emit_report(reports, cfg.out_format, cfg.out_path)
    else:
        text = (harness.report_to_csv(reports) if cfg.out_format == "csv"
                else harness.report_to_json(reports))
        sys.stdout.write(text)
    return 0 if harness.calibration_ok(reports) else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rrcr",
        description="Canonical labelling of regular graphs by triangle-seeded "
                    "colour refinement: samplers, refinement, analysis, experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw a random d-regular graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--max-attempts", type=int, default=10_000)
    p.set_defaults(fn=_cmd_sample)

    p = sub.add_parser("refine", help="run refinement to the stable partition")
    p.add_argument("--graph", required=True)
    p.add_argument("--seed", required=True,
                   help="singleton:V | parts:FILE | trivial")
    p.set_defaults(fn=_cmd_refine)

    p = sub.add_parser("canon", help="compute a canonical labelling")
    p.add_argument("--graph", required=True)
    p.add_argument("--strategy", choices=["triangles", "degree"], default="triangles")
    p.add_argument("--emit-form", default=None)
    p.set_defaults(fn=_cmd_canon)

    p = sub.add_parser("iso", help="test two graphs for isomorphism")
    p.add_argument("--g1", required=True)
    p.add_argument("--g2", required=True)
    p.set_defaults(fn=_cmd_iso)

    p = sub.add_parser("analyze", help="structural statistics, JSON output")
    p.add_argument("--graph", required=True)
    modes = p.add_subparsers(dest="mode", required=True)
    m = modes.add_parser("lambda")
    m.add_argument("--max-iters", type=int, default=10_000)
    m.add_argument("--tol", type=float, default=1e-8)
    m = modes.add_parser("mixing")
    m.add_argument("--pairs", type=int, default=20)
    m.add_argument("--seed", type=int, default=0)
    m = modes.add_parser("spheres")
    m.add_argument("--source", type=int, required=True)
    m.add_argument("--c", type=float, default=0.004)
    m = modes.add_parser("hist")
    m.add_argument("--set", required=True)
    p.set_defaults(fn=_cmd_analyze)

    p = sub.add_parser("check", help="deterministic numeric verifications")
    checks = p.add_subparsers(dest="what", required=True)
    c = checks.add_parser("inequalities")
    c.add_argument("--max", type=int, default=40)
    c.add_argument("--kmax", type=int, default=6)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("experiment", help="statistical experiment cells")
    p.add_argument("kind", choices=["discreteness", "seed-validity", "iso"])
    p.add_argument("--n", required=True, help="comma-separated vertex counts")
    p.add_argument("--d", required=True, help="comma-separated degrees")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--strategy", default="singleton",
                   help="comma-separated seed strategies")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--max-attempts", type=int, default=10_000)
    p.set_defaults(fn=_cmd_experiment)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
