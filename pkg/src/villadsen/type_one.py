"""Type-I inductive systems: multiplicity bookkeeping and finite-stage verifiers.

A connecting step is described by which coordinate projections occur among
its eigenvalue maps (with multiplicities) and how many point evaluations it
carries.  Three integers summarize a composed map: the number of distinct
coordinate projections, their total multiplicity, and the multiplicity of
the whole map; all three multiply under composition, and the two ratios
they define over the total are the quantities every argument about these
systems runs on.  All ratio arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .cohomology import GradedClass, cup, homogeneous_component, presentation_of
from .errors import ConfigError, GeneratorBudgetExceeded
from .spaces import spheres


@dataclass(frozen=True)
class StepSpec:
    """One connecting step: projection id -> multiplicity, plus point evaluations."""

    projection_multiplicities: tuple[tuple[str, int], ...]
    point_evaluations: int = 0

    def __post_init__(self):
        ids = [pid for pid, _ in self.projection_multiplicities]
        if len(set(ids)) != len(ids):
            raise ConfigError("duplicate projection id in step")
        for pid, m in self.projection_multiplicities:
            if m < 1:
                raise ConfigError(f"projection {pid!r} needs multiplicity >= 1")
        if self.point_evaluations < 0:
            raise ConfigError("point evaluation count must be >= 0")
        if self.total_multiplicity < 1:
            raise ConfigError("a step needs at least one eigenvalue map")

    @property
    def total_multiplicity(self) -> int:
        return self.point_evaluations + sum(m for _, m in self.projection_multiplicities)

    def stats(self) -> "StageStats":
        alpha = sum(m for _, m in self.projection_multiplicities)
        return StageStats(len(self.projection_multiplicities), alpha,
                          alpha + self.point_evaluations)

    @staticmethod
    def from_json(doc: dict) -> "StepSpec":
        unknown = set(doc) - {"proj_mults", "point_evals"}
        if unknown:
            raise ConfigError(f"unknown step keys: {sorted(unknown)}")
        mults = tuple(sorted((str(k), int(v))
                             for k, v in doc.get("proj_mults", {}).items()))
        return StepSpec(mults, int(doc.get("point_evals", 0)))

    def to_json(self) -> dict:
        return {"proj_mults": {k: v for k, v in self.projection_multiplicities},
                "point_evals": self.point_evaluations}


@dataclass(frozen=True)
class StageStats:
    """Composite multiplicity data of a composed connecting map."""

    distinct_projections: int
    projection_multiplicity: int
    total_multiplicity: int

    def __post_init__(self):
        if not (0 <= self.distinct_projections
                <= self.projection_multiplicity
                <= self.total_multiplicity):
            raise ValueError("need 0 <= distinct <= with-multiplicity <= total")
        if self.total_multiplicity < 1:
            raise ValueError("total multiplicity must be >= 1")

    @property
    def distinct_ratio(self) -> Fraction:
        return Fraction(self.distinct_projections, self.total_multiplicity)

    @property
    def projection_ratio(self) -> Fraction:
        return Fraction(self.projection_multiplicity, self.total_multiplicity)

    def to_json(self) -> dict:
        return {
            "distinct_projections": str(self.distinct_projections),
            "projection_multiplicity": str(self.projection_multiplicity),
            "total_multiplicity": str(self.total_multiplicity),
        }


IDENTITY_STATS = StageStats(1, 1, 1)


def compose_stats(a: StageStats, b: StageStats) -> StageStats:
    """Stats of the composite map: all three counts multiply."""
    return StageStats(a.distinct_projections * b.distinct_projections,
                      a.projection_multiplicity * b.projection_multiplicity,
                      a.total_multiplicity * b.total_multiplicity)


def stats_over_range(steps: list[StepSpec], start: int, stop: int) -> StageStats:
    """Composite stats of steps[start:stop] (identity when empty)."""
    if not 0 <= start <= stop <= len(steps):
        raise IndexError("stage range out of bounds")
    return reduce(compose_stats, (s.stats() for s in steps[start:stop]), IDENTITY_STATS)


def ratio_trajectory(steps: list[StepSpec], start: int) -> list[Fraction]:
    """The nonincreasing sequence of distinct-projection ratios from a stage."""
    if not 0 <= start <= len(steps):
        raise IndexError("start stage out of bounds")
    out = []
    acc = IDENTITY_STATS
    for step in steps[start:]:
        acc = compose_stats(acc, step.stats())
        out.append(acc.distinct_ratio)
    return out


@dataclass(frozen=True)
class FiniteStageEstimate:
    """A ratio at the last computed stage; never extrapolated to a limit."""

    value: Fraction
    from_stage: int
    to_stage: int
    finite_stage: bool = True

    def to_json(self) -> dict:
        return {
            "value": {"num": str(self.value.numerator), "den": str(self.value.denominator)},
            "from_stage": self.from_stage,
            "to_stage": self.to_stage,
            "finite_stage": self.finite_stage,
        }


def trace_extreme_ratio(steps: list[StepSpec], start: int) -> FiniteStageEstimate:
    """Projection-multiplicity share at the last stage, flagged finite-stage.

    Trace behaviour of the limit is governed by whether this tends to zero;
    only the value at the final available stage is reported.
    """
    stats = stats_over_range(steps, start, len(steps))
    return FiniteStageEstimate(stats.projection_ratio, start, len(steps))


def composed_projection_multiplicities(steps: list[StepSpec], start: int, stop: int,
                                       limit: int = 100_000) -> list[int]:
    """Multiplicities of the distinct composed coordinate projections.

    A composed projection is a chain of per-step choices, so its
    multiplicity is the product along the chain; the list has one entry per
    distinct chain.  Guarded because the count multiplies across steps.
    """
    mults = [1]
    for step in steps[start:stop]:
        step_mults = [m for _, m in step.projection_multiplicities]
        if len(mults) * max(len(step_mults), 1) > limit:
            raise GeneratorBudgetExceeded(len(mults) * len(step_mults), limit,
                                          "projection chain enumeration")
        mults = [a * b for a in mults for b in step_mults]
    return mults


@dataclass(frozen=True)
class TopChernWitness:
    """Degree and coefficient of the top Chern class of the pushed witness bundle."""

    sphere_power: int
    degree: int
    coefficient: int

    def to_json(self) -> dict:
        return {"sphere_power": self.sphere_power, "degree": str(self.degree),
                "coefficient": str(self.coefficient)}


def top_chern_witness(n: int, multiplicities: list[int]) -> TopChernWitness:
    """Top Chern data of a sum of pulled-back witness bundles.

    The witness bundle over an n-fold sphere power is a sum of n pulled-back
    lines; pushing it through a composed map whose distinct projections have
    the given multiplicities yields a bundle over a sphere power of size
    n * len(multiplicities) whose top Chern class is the full product of all
    generators with coefficient prod(m^n).  Computed both in closed form and
    by full sparse expansion; the two must agree and the coefficient is
    always nonzero.
    """
    if n < 1:
        raise ValueError("witness size n must be >= 1")
    if not multiplicities:
        raise ValueError("need at least one distinct projection")
    if any(m < 1 for m in multiplicities):
        raise ValueError("multiplicities must be positive")
    count = len(multiplicities)
    gens = n * count
    closed = 1
    for m in multiplicities:
        closed *= m ** n

    # independent route: expand prod_{l,s} (1 + m_l z_{l,s}) over (S^2)^{n*count}
    pres = presentation_of(spheres(gens))
    product = GradedClass.unit(pres)
    for l, m in enumerate(multiplicities):
        for s in range(n):
            pos = l * n + s
            exps = tuple(1 if i == pos else 0 for i in range(gens))
            product = cup(product, GradedClass(pres, {(0,) * gens: 1, exps: m}))
    top = homogeneous_component(product, 2 * gens)
    expanded = top.terms.get((1,) * gens, 0) if top.terms else 0
    if expanded != closed:
        raise AssertionError(
            f"top Chern coefficient mismatch: closed {closed}, expanded {expanded}")
    if closed == 0:
        raise AssertionError("top Chern coefficient vanished; witness is broken")
    return TopChernWitness(gens, n * count, closed)


@dataclass(frozen=True)
class RatioContradiction:
    """Outcome of the comparison-failure arithmetic at one stage.

    If the ratio of distinct projections meets the hypothesis threshold
    (2n-1)/(2n), then the rank bound forced by the top-Chern obstruction
    (ratio <= n/(n+2), the fixed point of r <= 1 - (2/n) r) must fail, and
    the two together are contradictory.
    """

    n: int
    ratio: Fraction
    threshold: Fraction
    hypothesis_holds: bool
    rank_bound_holds: bool
    fixed_point_bound: Fraction
    forced_square: Fraction
    strict_drop: bool
    contradiction: bool

    def to_json(self) -> dict:
        def fr(x: Fraction) -> dict:
            return {"num": str(x.numerator), "den": str(x.denominator)}
        return {
            "n": self.n,
            "ratio": fr(self.ratio),
            "threshold": fr(self.threshold),
            "hypothesis_holds": self.hypothesis_holds,
            "rank_bound_holds": self.rank_bound_holds,
            "fixed_point_bound": fr(self.fixed_point_bound),
            "forced_square": fr(self.forced_square),
            "strict_drop": self.strict_drop,
            "contradiction": self.contradiction,
        }


def ratio_contradiction_check(n: int, stats: StageStats) -> RatioContradiction:
    """Check that a high distinct-projection ratio contradicts the rank bound.

    The obstruction argument forces distinct*n <= total*n - 2*distinct for
    the stage data; together with the hypothesis ratio >= (2n-1)/(2n) this
    pins the ratio under ((n-1)/n)^2 which lies strictly below (n-1)/n and
    hence below the hypothesis, an exact contradiction.
    """
    if n < 2:
        raise ValueError("the argument needs n >= 2")
    ratio = stats.distinct_ratio
    threshold = Fraction(2 * n - 1, 2 * n)
    hypothesis = ratio >= threshold
    rank_bound = (n * stats.distinct_projections
                  <= n * stats.total_multiplicity - 2 * stats.distinct_projections)
    forced_square = (Fraction(n - 1, n)) ** 2
    strict_drop = forced_square < Fraction(n - 1, n)
    return RatioContradiction(
        n=n,
        ratio=ratio,
        threshold=threshold,
        hypothesis_holds=hypothesis,
        rank_bound_holds=rank_bound,
        fixed_point_bound=Fraction(n, n + 2),
        forced_square=forced_square,
        strict_drop=strict_drop,
        contradiction=hypothesis and not rank_bound,
    )


@dataclass(frozen=True)
class SystemConfig:
    seed_dimension: int
    steps: tuple[StepSpec, ...]

    @staticmethod
    def from_json(doc: dict) -> "SystemConfig":
        unknown = set(doc) - {"seed_dim", "steps"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if "seed_dim" not in doc or "steps" not in doc:
            raise ConfigError("config needs 'seed_dim' and 'steps'")
        seed = int(doc["seed_dim"])
        if seed < 0:
            raise ConfigError("seed_dim must be >= 0")
        steps = tuple(StepSpec.from_json(s) for s in doc["steps"])
        return SystemConfig(seed, steps)

    def to_json(self) -> dict:
        return {"seed_dim": self.seed_dimension,
                "steps": [s.to_json() for s in self.steps]}
