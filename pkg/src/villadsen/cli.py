"""Command-line entry point.

Four subcommands drive the verifiers: `chern` computes characteristic
classes of a bundle description, `vi` runs the type-I stage diagnostics
and witnesses, `v2` the type-II traces, comparability triple and radius of
comparison, and `cfp` the witness-sequence construction and both halves of
its verification.  Machine-readable JSON goes to stdout; human diagnostics
go to stderr.  Exit code 0 means every requested verification succeeded,
2 means a verification failed or was refused, 1 means a usage or parse
error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import cfp as cfp_mod
from . import reports
from .bundles import BundleExpr, chern, euler
from .cohomology import GradedClass, homogeneous_component, presentation_of
from .comparison import Outcome
from .errors import ConfigError, GeneratorBudgetExceeded
from .growth import parse_family_parameter
from .spaces import SpaceDescriptor
from .type_one import (
    SystemConfig,
    composed_projection_multiplicities,
    ratio_contradiction_check,
    ratio_trajectory,
    stats_over_range,
    top_chern_witness,
)
from .type_two import (
    SystemParams,
    comparability_triple,
    radius_of_comparison,
    stage_space,
    trace_value,
    unit_bundle,
    obstruction_bundle,
)


class _Parser(argparse.ArgumentParser):
    # usage errors must exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _emit(report: dict) -> int:
    reports.validate_report(report)
    print(reports.canonical_json(report))
    return 0 if report["ok"] else 2


def _run_chern(args) -> int:
    started = time.perf_counter()
    space_doc = _load_json(args.space)
    bundle_doc = _load_json(args.bundle)
    base = SpaceDescriptor.from_json(space_doc)
    pres = presentation_of(base)
    summands = [(GradedClass.from_json(pres, s["line"]), int(s["mult"]))
                for s in bundle_doc.get("summands", [])]
    bundle = BundleExpr(base, int(bundle_doc.get("trivial", "0")), summands)
    checks = []
    try:
        total = chern(bundle)
        components = {}
        for degree in sorted(total.degree_support()):
            components[str(degree)] = homogeneous_component(total, degree).to_json()
        checks.append(reports.check("chern_components", True, {
            "rank": str(bundle.rank),
            "components": components,
        }))
    except GeneratorBudgetExceeded as exc:
        checks.append(reports.refused("chern_components", str(exc), {
            "required": str(exc.required), "budget": str(exc.budget)}))
    top = euler(bundle)
    checks.append(reports.check("euler_class", True, {
        "degree": str(2 * bundle.rank),
        "nonzero": not top.is_zero(),
        "class": top.to_json(),
    }))
    report = reports.assemble("chern", {"space": space_doc, "bundle": bundle_doc},
                              checks, started)
    return _emit(report)


def _run_vi(args) -> int:
    started = time.perf_counter()
    config_doc = _load_json(args.config)
    config = SystemConfig.from_json(config_doc)
    steps = list(config.steps)
    start = args.start
    stop = args.stage if args.stage is not None else len(steps)
    if not 0 <= start <= stop <= len(steps):
        raise ConfigError(f"stage range [{start}, {stop}] out of bounds")

    checks = []
    stats = stats_over_range(steps, start, stop)
    checks.append(reports.check("stage_stats", True, {
        "from_stage": start, "to_stage": stop,
        **stats.to_json(),
        "distinct_ratio": reports.fraction_json(stats.distinct_ratio),
        "projection_ratio": reports.fraction_json(stats.projection_ratio),
    }))

    trajectory = ratio_trajectory(steps, start)[: stop - start]
    nonincreasing = all(a >= b for a, b in zip(trajectory, trajectory[1:]))
    checks.append(reports.check("ratio_trajectory", nonincreasing, {
        "values": [reports.fraction_json(v) for v in trajectory],
    }))

    checks.append(reports.check("projection_ratio_estimate", True, {
        "value": reports.fraction_json(stats.projection_ratio),
        "finite_stage": True,
        "from_stage": start, "to_stage": stop,
    }))

    if args.witness is not None:
        try:
            mults = composed_projection_multiplicities(steps, start, stop)
            if not mults:
                checks.append(reports.check(
                    "top_chern_witness", False,
                    message="no composed coordinate projections in this range"))
            else:
                witness = top_chern_witness(args.witness, mults)
                checks.append(reports.check("top_chern_witness", True, {
                    **witness.to_json(),
                    "distinct_projections": str(len(mults)),
                }))
        except GeneratorBudgetExceeded as exc:
            checks.append(reports.refused("top_chern_witness", str(exc)))
        contradiction = ratio_contradiction_check(args.witness, stats)
        ok = (not contradiction.hypothesis_holds) or contradiction.contradiction
        checks.append(reports.check("ratio_contradiction", ok,
                                    contradiction.to_json()))

    report = reports.assemble("vi", {"config": config_doc,
                                     "from": start, "stage": stop,
                                     "witness": args.witness},
                              checks, started)
    return _emit(report)


def _run_v2(args) -> int:
    started = time.perf_counter()
    params = SystemParams(parse_family_parameter(args.k))
    n = args.n
    want_trace = args.trace or not (args.rc or args.comparability)
    checks = []

    if want_trace:
        space = stage_space(params, n)
        unit = unit_bundle(params, n)
        unit_trace = trace_value(params, n, unit)
        cert = {
            "stage": n,
            "dimension": str(space.real_dimension),
            "rank": str(unit.rank),
            "unit_trace": reports.fraction_json(unit_trace),
            "trivial_line_trace": reports.fraction_json(Fraction(1, unit.rank)),
        }
        if n >= 1:
            cert["witness_sum_trace"] = reports.fraction_json(
                trace_value(params, n, obstruction_bundle(params, n)))
        checks.append(reports.check("trace_table", unit_trace == 1, cert))

    if args.comparability:
        if n < 1:
            raise ConfigError("comparability needs a stage >= 1")
        verify_stage = args.stage if args.stage is not None else n
        try:
            triple = comparability_triple(params, n, verify_stage)
            checks.append(reports.check("comparability_triple", triple.passed,
                                        triple.to_json()))
        except GeneratorBudgetExceeded as exc:
            checks.append(reports.refused("comparability_triple", str(exc)))

    if args.rc:
        rc = radius_of_comparison(params, n)
        checks.append(reports.check("radius_of_comparison", rc.passed, rc.to_json()))

    report = reports.assemble("v2", {"k": args.k, "n": n, "stage": args.stage,
                                     "rc": args.rc,
                                     "comparability": args.comparability,
                                     "trace": want_trace},
                              checks, started)
    return _emit(report)


def _run_cfp(args) -> int:
    started = time.perf_counter()
    overrides = None
    if args.override_l:
        overrides = [int(x) for x in args.override_l.split(",") if x.strip()]
    witness = cfp_mod.build_witness(args.terms, overrides)
    checks = []
    construction_cert: dict = {"witness": witness.to_json()}
    if not witness.overridden:
        construction_cert["first_stage"] = cfp_mod.first_stage_certificate()
    checks.append(reports.check("witness_stages", True, construction_cert))

    for term in witness.terms:
        verdict = cfp_mod.verify_upper(term)
        checks.append(reports.check(
            f"upper_term_{term.index}",
            verdict.outcome == Outcome.DOMINATES,
            {"stage": term.stage, "copies": str(term.copies),
             **verdict.to_json()}))

    stage = args.stage if args.stage is not None else witness.terms[-1].stage
    lower = cfp_mod.verify_lower(witness, stage)
    checks.append(reports.check("lower_bound", lower.passed, lower.to_json()))

    report = reports.assemble("cfp", {"terms": args.terms, "stage": stage,
                                      "override_l": args.override_l},
                              checks, started)
    return _emit(report)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="villadsen",
                     description="Exact verification of comparison obstructions "
                                 "in Villadsen-type inductive systems")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_chern = sub.add_parser("chern", help="Chern and Euler classes of a bundle spec")
    p_chern.add_argument("--space", required=True, help="space descriptor JSON file")
    p_chern.add_argument("--bundle", required=True, help="bundle JSON file")
    p_chern.set_defaults(func=_run_chern)

    p_vi = sub.add_parser("vi", help="type-I stage diagnostics and witnesses")
    p_vi.add_argument("--config", required=True, help="system config JSON file")
    p_vi.add_argument("--from", dest="start", type=int, default=0,
                      help="first stage of the composed range (default 0)")
    p_vi.add_argument("--stage", type=int, default=None,
                      help="last stage of the composed range (default: all)")
    p_vi.add_argument("--witness", type=int, default=None,
                      help="witness size n for the top-Chern and contradiction checks")
    p_vi.set_defaults(func=_run_vi)

    p_v2 = sub.add_parser("v2", help="type-II traces, comparability, radius")
    p_v2.add_argument("-k", required=True, help="family parameter (integer or 'inf')")
    p_v2.add_argument("-n", type=int, required=True, help="stage")
    p_v2.add_argument("--stage", type=int, default=None,
                      help="verification stage for --comparability (default n)")
    p_v2.add_argument("--trace", action="store_true", help="emit the trace table")
    p_v2.add_argument("--comparability", action="store_true",
                      help="verify the comparability triple")
    p_v2.add_argument("--rc", action="store_true",
                      help="verify the radius of comparison up to stage n")
    p_v2.set_defaults(func=_run_v2)

    p_cfp = sub.add_parser("cfp", help="witness sequences and both verification halves")
    p_cfp.add_argument("--terms", type=int, default=2, help="number of witness terms")
    p_cfp.add_argument("--stage", type=int, default=None,
                       help="verification stage for the lower bound")
    p_cfp.add_argument("--override-l", default="",
                       help="comma-separated witness stages overriding the minimal choice")
    p_cfp.set_defaults(func=_run_cfp)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
