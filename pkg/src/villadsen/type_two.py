"""Type-II inductive systems: stage spaces, unit bundles, traces, comparison.

Each family is indexed by a parameter k (a positive integer or infinity).
Stage n lives over a product of a disk power and one projective space per
earlier stage; the connecting map has one coordinate-projection slot
carrying the trivial line and n+1 point-evaluation slots carrying the new
stage's tautological line.  Iterating from a rank-one projection produces
the unit bundle, whose rank telescopes to (n+1)!.  The unique trace of a
projection at stage n is rank/(n+1)!, an exact rational.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bundles import BundleExpr, DiagonalSlot, pushforward_diagonal, trivial_bundle
from .cohomology import GradedClass, presentation_of
from .comparison import (
    Outcome,
    obstructed_by_euler,
    trivial_line_subbundle_sufficient,
)
from .errors import BaseMismatchError, GeneratorBudgetExceeded
from .growth import (
    INFINITE,
    cp_dimension,
    family_parameter_label,
    unit_multiplicity,
    unit_rank,
)
from .spaces import SpaceDescriptor, SpaceMap, constant, cproj, disk, projection


@dataclass(frozen=True)
class SystemParams:
    """Family parameter: a positive integer, or INFINITE (None)."""

    k: int | None

    def __post_init__(self):
        if self.k is not INFINITE and self.k < 1:
            raise ValueError("family parameter must be >= 1 or INFINITE")

    @property
    def label(self) -> str:
        return family_parameter_label(self.k)


def _disk_power(params: SystemParams, n: int) -> int:
    """Total disk power at stage n: k for finite families, n*sigma(n)^2 else."""
    if params.k is not INFINITE:
        return params.k
    if n == 0:
        return 1
    return n * unit_multiplicity(n) ** 2


def stage_space(params: SystemParams, n: int) -> SpaceDescriptor:
    """The stage-n base space.

    Factors are ordered by stage of introduction.  For the infinite family
    the disk power grows stage by stage, and the increments are kept as
    separate factors so that the map to the previous stage is an exact
    coordinate projection; the increments total n*sigma(n)^2.
    """
    if n < 0:
        raise ValueError("stage must be >= 0")
    atoms = [disk(_disk_power(params, 0), label="d0")]
    for j in range(1, n + 1):
        increment = _disk_power(params, j) - _disk_power(params, j - 1)
        if increment > 0:
            atoms.append(disk(increment, label=f"d{j}"))
        atoms.append(cproj(cp_dimension(params.k, j), label=f"cp{j}"))
    return SpaceDescriptor(tuple(atoms))


def cp_factor_indices(space: SpaceDescriptor) -> list[int]:
    """Indices of the projective factors, in stage order."""
    return [i for i, a in enumerate(space.factors) if a.kind == "cp"]


def cp_line(space: SpaceDescriptor, j: int) -> GradedClass:
    """First Chern class of the stage-j tautological line pulled to `space`."""
    idx = cp_factor_indices(space)[j - 1]
    return GradedClass.generator(presentation_of(space), idx)


def unit_bundle(params: SystemParams, n: int) -> BundleExpr:
    """The stage-n unit: one trivial line plus sigma(j) copies of each stage line.

    Rank is checked two ways: the sum of the block multiplicities and the
    telescoped value (n+1)!.
    """
    space = stage_space(params, n)
    summands = [(cp_line(space, j), unit_multiplicity(j)) for j in range(1, n + 1)]
    bundle = BundleExpr(space, 1, summands)
    direct = 1 + sum(unit_multiplicity(j) for j in range(1, n + 1))
    if bundle.rank != direct or bundle.rank != unit_rank(n):
        raise AssertionError("unit rank bookkeeping is inconsistent")
    return bundle


def build_stage(params: SystemParams, n: int) -> tuple[SpaceDescriptor, BundleExpr]:
    return stage_space(params, n), unit_bundle(params, n)


def previous_stage_projection(params: SystemParams, n: int) -> SpaceMap:
    """The coordinate projection from stage n onto stage n-1."""
    if n < 1:
        raise ValueError("stage must be >= 1")
    src = stage_space(params, n)
    tgt = stage_space(params, n - 1)
    return projection(src, tgt, tuple(range(len(tgt.factors))))


def connecting_slots(params: SystemParams, n: int) -> list[DiagonalSlot]:
    """Eigenvalue-map slots of the connecting map from stage n to stage n+1.

    One projection slot on the trivial line and n+1 point evaluations on the
    new tautological line, so a bundle of rank r pushes to its pullback plus
    (n+1)*r copies of the new line.
    """
    src = stage_space(params, n + 1)
    tgt = stage_space(params, n)
    new_line = cp_line(src, n + 1)
    slots = [DiagonalSlot(previous_stage_projection(params, n + 1), 1, None)]
    for j in range(1, n + 2):
        slots.append(DiagonalSlot(constant(src, tgt, f"y{n}_{j}"), 1, new_line))
    return slots


def push_through_stages(params: SystemParams, bundle: BundleExpr,
                        start: int, stop: int) -> BundleExpr:
    """Push a stage-`start` bundle through the connecting maps up to `stop`."""
    if bundle.base != stage_space(params, start):
        raise BaseMismatchError("bundle does not live over the start stage")
    current = bundle
    for ell in range(start, stop):
        current = pushforward_diagonal(current, connecting_slots(params, ell))
    return current


def trace_value(params: SystemParams, n: int, bundle: BundleExpr) -> Fraction:
    """Exact trace of a stage-n projection: rank over (n+1)!."""
    if bundle.base != stage_space(params, n):
        raise BaseMismatchError("bundle does not live over the given stage")
    return Fraction(bundle.rank, unit_rank(n))


def obstruction_bundle(params: SystemParams, n: int) -> BundleExpr:
    """The stage-n witness sum: cp_dimension(k, i) copies of each stage line."""
    space = stage_space(params, n)
    summands = [(cp_line(space, i), cp_dimension(params.k, i)) for i in range(1, n + 1)]
    return BundleExpr(space, 0, summands)


def _fr(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator)}


@dataclass(frozen=True)
class ComparabilityReport:
    """The three comparability facts at one stage, with certificates."""

    params_label: str
    stage: int
    verify_stage: int
    line_subbundle: list = field(default_factory=list)
    chain: list = field(default_factory=list)
    euler_obstruction: dict = field(default_factory=dict)
    traces: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (all(r["outcome"] == "dominates" for r in self.line_subbundle)
                and all(r["within_capacity"] for r in self.chain)
                and self.euler_obstruction.get("outcome") == "obstructed")

    def to_json(self) -> dict:
        return {
            "k": self.params_label,
            "stage": self.stage,
            "verify_stage": self.verify_stage,
            "line_subbundle": self.line_subbundle,
            "chain": self.chain,
            "euler_obstruction": self.euler_obstruction,
            "traces": self.traces,
            "passed": self.passed,
        }


def comparability_triple(params: SystemParams, n: int, verify_stage: int | None = None,
                         budget: int | None = None,
                         require_full_expansion: bool = False) -> ComparabilityReport:
    """Certify the three comparability facts for the stage-n projections.

    (a) each doubled block dominates a trivial line by the stable-range
    criterion on its own projective factor; (b) the witness sum pushes
    forward within capacity stage by stage up to `verify_stage`, where its
    Euler class is nonzero, obstructing domination of a trivial line; (c)
    the exact trace values, with the divergent sequence spelled out for the
    infinite family.

    The Euler certificate normally uses the factorized route, cross-checked
    against the full expansion whenever that fits the term budget.  With
    require_full_expansion=True an unaffordable cross-check refuses with
    the required term count instead of falling back.
    """
    if n < 1:
        raise ValueError("stage must be >= 1")
    j = n if verify_stage is None else verify_stage
    if j < n:
        raise ValueError("verify stage must be >= the witness stage")
    if require_full_expansion:
        from .bundles import chern_expansion_cost, expansion_budget
        effective = expansion_budget() if budget is None else budget
        cost = chern_expansion_cost(obstruction_bundle(params, j))
        if cost > effective:
            raise GeneratorBudgetExceeded(cost, effective,
                                          "comparability Euler cross-check")

    line_records = []
    for i in range(1, n + 1):
        dim = cp_dimension(params.k, i)
        one_factor = SpaceDescriptor((cproj(dim, label=f"cp{i}"),))
        doubled = BundleExpr(one_factor, 0,
                             [(GradedClass.generator(presentation_of(one_factor), 0),
                               2 * dim)])
        verdict = trivial_line_subbundle_sufficient(doubled)
        line_records.append({"i": i, "cp_dimension": str(dim),
                             "rank": str(doubled.rank),
                             "outcome": verdict.outcome.value,
                             "certificate": verdict.certificate})

    chain_records = []
    current = obstruction_bundle(params, n)
    for ell in range(n, j):
        pushed = pushforward_diagonal(current, connecting_slots(params, ell))
        target = obstruction_bundle(params, ell + 1)
        capacity = {next(iter(line.terms)): m for line, m in target.summands}
        ok = all(m <= capacity.get(next(iter(line.terms)), 0)
                 for line, m in pushed.summands)
        new_key = next(iter(cp_line(stage_space(params, ell + 1), ell + 1).terms))
        new_coeff = {next(iter(line.terms)): m
                     for line, m in pushed.summands}.get(new_key, 0)
        chain_records.append({
            "from_stage": ell,
            "to_stage": ell + 1,
            "pushed_rank": str(pushed.rank),
            "new_line_multiplicity": str(new_coeff),
            "capacity": str(cp_dimension(params.k, ell + 1)),
            "within_capacity": ok,
        })
        current = target

    witness = obstruction_bundle(params, j)
    verdict = obstructed_by_euler(trivial_bundle(stage_space(params, j), 1),
                                  witness, budget=budget)
    euler_record = {"outcome": verdict.outcome.value, "certificate": verdict.certificate,
                    "witness_rank": str(witness.rank)}

    unit_line_trace = Fraction(1, unit_rank(n))
    q_sum = trace_value(params, n, obstruction_bundle(params, n))
    traces: dict = {
        "unit_line": _fr(unit_line_trace),
        "q_sum": _fr(q_sum),
    }
    if params.k is not INFINITE:
        closed = Fraction(params.k * unit_rank(n) - params.k, unit_rank(n))
        if closed != q_sum:
            raise AssertionError("closed-form q-sum trace disagrees with rank count")
        traces["limit"] = str(params.k)
        traces["divergent"] = False
    else:
        entries = []
        for m in range(1, n + 1):
            exact = trace_value(params, m, obstruction_bundle(params, m))
            lower = Fraction(m * m, m + 1)
            if exact < lower:
                raise AssertionError("divergence lower bound fails")
            entries.append({"stage": m, "exact": _fr(exact), "lower_bound": _fr(lower)})
        traces["entries"] = entries
        traces["divergent"] = True

    return ComparabilityReport(params.label, n, j, line_records, chain_records,
                               euler_record, traces)


@dataclass(frozen=True)
class RadiusReport:
    """Per-stage radius-of-comparison data with witness lower bounds."""

    params_label: str
    max_stage: int
    divergent: bool
    stages: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        if self.divergent:
            return (all(s["nondecreasing"] for s in self.stages)
                    and all(w["obstructed"] for w in self.witnesses)
                    and all(w["bound_holds"] for w in self.witnesses))
        return (all(s["equals_parameter"] for s in self.stages)
                and all(w["obstructed"] for w in self.witnesses))

    def to_json(self) -> dict:
        return {
            "k": self.params_label,
            "max_stage": self.max_stage,
            "divergent": self.divergent,
            "stages": self.stages,
            "witnesses": self.witnesses,
            "passed": self.passed,
        }


def radius_of_comparison(params: SystemParams, max_stage: int) -> RadiusReport:
    """Exact per-stage dimension-to-rank ratios plus trace witnesses.

    For a finite parameter the ratio dim/(2*rank) equals the parameter at
    every stage, and each stage n also yields the lower-bound witness: the
    trivial line has trace 1/(n+1)!, the witness sum has trace within
    (k+1)/(n+1)! of k, and domination fails by the Euler obstruction.  For
    the infinite family the ratios and witness traces are reported as a
    divergent sequence instead.
    """
    if max_stage < 0:
        raise ValueError("need a stage >= 0")
    stages = []
    previous = None
    for m in range(0, max_stage + 1):
        space = stage_space(params, m)
        rank = unit_rank(m)
        value = Fraction(space.real_dimension, 2 * rank)
        rec = {"stage": m, "dimension": str(space.real_dimension), "rank": str(rank),
               "value": _fr(value)}
        if params.k is not INFINITE:
            rec["equals_parameter"] = value == params.k
        else:
            rec["nondecreasing"] = previous is None or value >= previous
        stages.append(rec)
        previous = value

    witnesses = []
    for m in range(1, max_stage + 1):
        tau_e = Fraction(1, unit_rank(m))
        q_sum = trace_value(params, m, obstruction_bundle(params, m))
        verdict = obstructed_by_euler(trivial_bundle(stage_space(params, m), 1),
                                      obstruction_bundle(params, m), budget=0)
        rec = {
            "stage": m,
            "trace_trivial_line": _fr(tau_e),
            "trace_witness_sum": _fr(q_sum),
            "obstructed": verdict.outcome == Outcome.OBSTRUCTED,
        }
        if params.k is not INFINITE:
            rec["lower_bound"] = _fr(params.k - Fraction(params.k + 1, unit_rank(m)))
        else:
            # witness traces grow at least like m^2/(m+1), which diverges
            bound = Fraction(m * m, m + 1)
            rec["divergence_lower_bound"] = _fr(bound)
            rec["bound_holds"] = q_sum >= bound
        witnesses.append(rec)

    return RadiusReport(params.label, max_stage, params.k is INFINITE,
                        stages, witnesses)
