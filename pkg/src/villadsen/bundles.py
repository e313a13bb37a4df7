"""Formal vector bundles: sums of pulled-back line bundles plus trivial part.

A bundle expression records everything the comparison arguments ever use:
the base space, a trivial rank, and line summands given by their first Chern
class (a single pulled-back generator, coefficient one) with big-integer
multiplicities.  Multiplicities grow factorially along the inductive
systems, so they are never assumed to fit a machine word.

Equality is normal-form equality (sorted, merged summands); this is the
working notion of isomorphism, and stable isomorphism is the same with
trivial ranks added on both sides.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import comb

from .cohomology import (
    GradedClass,
    cup,
    homogeneous_component,
    presentation_of,
    pullback_class,
)
from .errors import BaseMismatchError, GeneratorBudgetExceeded, InvalidLineClassError
from .spaces import CONSTANT, PROJECTION, SpaceDescriptor, SpaceMap

DEFAULT_BUDGET = 100_000


def expansion_budget() -> int:
    """Term budget for full sparse expansions, from ENGINE_GENERATOR_BUDGET."""
    raw = os.environ.get("ENGINE_GENERATOR_BUDGET", "")
    if raw.strip():
        value = int(raw)
        if value < 1:
            raise ValueError("ENGINE_GENERATOR_BUDGET must be positive")
        return value
    return DEFAULT_BUDGET


def _line_generator_position(line: GradedClass) -> int | None:
    """Position of the line's generator, or None for the zero (trivial) line.

    Raises InvalidLineClassError unless the class is zero or a single
    generator with coefficient one.
    """
    if line.is_zero():
        return None
    if len(line.terms) != 1:
        raise InvalidLineClassError("line class must be a single generator or zero")
    (exps, coeff), = line.terms.items()
    if coeff != 1 or sum(exps) != 1:
        raise InvalidLineClassError("line class must be one generator with coefficient 1")
    return exps.index(1)


class BundleExpr:
    """base, trivial rank, and (line class, multiplicity) summands."""

    __slots__ = ("base", "trivial_rank", "summands")

    def __init__(self, base: SpaceDescriptor, trivial_rank: int = 0,
                 summands: list[tuple[GradedClass, int]] | None = None):
        if trivial_rank < 0:
            raise ValueError("trivial rank must be >= 0")
        pres = presentation_of(base)
        merged: dict[tuple, tuple[GradedClass, int]] = {}
        extra_trivial = 0
        for line, mult in summands or []:
            if mult < 0:
                raise ValueError("multiplicity must be >= 0")
            if mult == 0:
                continue
            if line.presentation != pres:
                raise BaseMismatchError("summand line class lives over a different base")
            pos = _line_generator_position(line)
            if pos is None:
                extra_trivial += mult
                continue
            key = next(iter(line.terms))
            if key in merged:
                merged[key] = (line, merged[key][1] + mult)
            else:
                merged[key] = (line, mult)
        self.base = base
        self.trivial_rank = trivial_rank + extra_trivial
        self.summands = tuple(merged[k] for k in sorted(merged))

    @property
    def rank(self) -> int:
        return self.trivial_rank + sum(m for _, m in self.summands)

    def __eq__(self, other) -> bool:
        return (isinstance(other, BundleExpr)
                and self.base == other.base
                and self.trivial_rank == other.trivial_rank
                and self.summands == other.summands)

    def __hash__(self):
        return hash((self.base, self.trivial_rank, self.summands))

    def __repr__(self):
        parts = [f"theta_{self.trivial_rank}"] if self.trivial_rank else []
        parts += [f"{m}*({line!r})" for line, m in self.summands]
        return "BundleExpr(" + " + ".join(parts or ["0"]) + ")"

    def direct_sum(self, other: "BundleExpr") -> "BundleExpr":
        if self.base != other.base:
            raise BaseMismatchError("direct sum needs a common base")
        return BundleExpr(self.base, self.trivial_rank + other.trivial_rank,
                          list(self.summands) + list(other.summands))

    def add_trivial(self, extra: int) -> "BundleExpr":
        return BundleExpr(self.base, self.trivial_rank + extra, list(self.summands))

    def to_json(self) -> dict:
        return {
            "base": self.base.to_json(),
            "trivial": str(self.trivial_rank),
            "summands": [{"line": line.to_json(), "mult": str(m)}
                         for line, m in self.summands],
        }

    @staticmethod
    def from_json(doc: dict) -> "BundleExpr":
        base = SpaceDescriptor.from_json(doc["base"])
        pres = presentation_of(base)
        summands = [(GradedClass.from_json(pres, s["line"]), int(s["mult"]))
                    for s in doc.get("summands", [])]
        return BundleExpr(base, int(doc.get("trivial", "0")), summands)


def trivial_bundle(base: SpaceDescriptor, rank: int) -> BundleExpr:
    return BundleExpr(base, rank, [])


def generator_line(base: SpaceDescriptor, factor_index: int) -> GradedClass:
    """First Chern class of the tautological/Hopf line on one factor."""
    return GradedClass.generator(presentation_of(base), factor_index)


def line_sum(base: SpaceDescriptor, parts: list[tuple[int, int]],
             trivial_rank: int = 0) -> BundleExpr:
    """Bundle from (factor_index, multiplicity) pairs plus a trivial part."""
    summands = [(generator_line(base, idx), m) for idx, m in parts]
    return BundleExpr(base, trivial_rank, summands)


def chern_expansion_cost(b: BundleExpr) -> int:
    """Upper bound on the term count of the full Chern class expansion."""
    caps = {g.factor_index: g.cap for g in presentation_of(b.base).generators}
    cost = 1
    for line, mult in b.summands:
        pos = next(iter(line.terms)).index(1)
        factor_index = presentation_of(b.base).generators[pos].factor_index
        cost *= min(mult, caps[factor_index] - 1) + 1
    return cost


def chern(b: BundleExpr, budget: int | None = None) -> GradedClass:
    """Total Chern class: the product of (1 + line)^multiplicity, capped.

    The trivial part contributes 1.  Refuses with GeneratorBudgetExceeded if
    the expansion would exceed the term budget; budget=None reads the
    environment and budget=0 disables the guard.
    """
    pres = presentation_of(b.base)
    if budget is None:
        budget = expansion_budget()
    if budget:
        cost = chern_expansion_cost(b)
        if cost > budget:
            raise GeneratorBudgetExceeded(cost, budget, "Chern class expansion")
    total = GradedClass.unit(pres)
    for line, mult in b.summands:
        total = cup(total, _line_power_series(line, mult))
    return total


def _line_power_series(line: GradedClass, mult: int) -> GradedClass:
    # (1 + y)^mult truncated at the generator's cap: sum of C(mult, i) y^i
    pres = line.presentation
    (exps, _), = line.terms.items()
    pos = exps.index(1)
    cap = pres.generators[pos].cap
    n = len(pres.generators)
    terms = {}
    for i in range(0, min(mult, cap - 1) + 1):
        key = tuple(i if j == pos else 0 for j in range(n))
        terms[key] = comb(mult, i)
    return GradedClass(pres, terms)


def euler(b: BundleExpr) -> GradedClass:
    """Top Chern class, computed from the factorization over line summands.

    Equals the product of line^multiplicity over all summands and vanishes
    as soon as the bundle has a trivial part; each factor is the single
    monomial y^multiplicity, dead once the multiplicity reaches the cap, so
    this never needs a full expansion.
    """
    pres = presentation_of(b.base)
    if b.trivial_rank > 0:
        return GradedClass.zero(pres)
    n = len(pres.generators)
    key = [0] * n
    for line, mult in b.summands:
        (exps, _), = line.terms.items()
        pos = exps.index(1)
        if mult >= pres.generators[pos].cap:
            return GradedClass.zero(pres)
        key[pos] += mult
    for pos, e in enumerate(key):
        if e >= pres.generators[pos].cap:
            return GradedClass.zero(pres)
    return GradedClass(pres, {tuple(key): 1})


def pullback_bundle(f: SpaceMap, b: BundleExpr) -> BundleExpr:
    """Pull a bundle back along a map; constants yield trivial bundles."""
    f = f.normalize()
    if b.base != f.target:
        raise BaseMismatchError("bundle does not live over the map's target")
    if f.kind == CONSTANT:
        return trivial_bundle(f.source, b.rank)
    assert f.kind == PROJECTION
    summands = [(pullback_class(f, line), m) for line, m in b.summands]
    return BundleExpr(f.source, b.trivial_rank, summands)


def tensor_line(b: BundleExpr, carrier: GradedClass) -> BundleExpr:
    """Tensor with the line bundle whose first Chern class is `carrier`.

    First Chern classes add, so each summand's line shifts by the carrier
    and the trivial part becomes that many copies of the carrier line.
    """
    if _line_generator_position(carrier) is None:
        return b
    summands = [(line + carrier, m) for line, m in b.summands]
    if b.trivial_rank:
        summands.append((carrier, b.trivial_rank))
    return BundleExpr(b.base, 0, summands)


@dataclass(frozen=True)
class DiagonalSlot:
    """One eigenvalue-map slot of a diagonal connecting map.

    The carrier is the line bundle the slot's projection is supported on
    (None or zero meaning the trivial line); slots of the basic kind just
    pull back, constant slots convert everything they carry into carrier
    lines of the appropriate rank.
    """

    eigenvalue_map: SpaceMap
    multiplicity: int = 1
    carrier: GradedClass | None = None


def pushforward_diagonal(b: BundleExpr, slots: list) -> BundleExpr:
    """Image of a bundle under a diagonal map given by eigenvalue-map slots.

    Accepts DiagonalSlot instances or bare (map, multiplicity) pairs.  All
    maps must share one source (the next stage space) and target the
    bundle's base.
    """
    norm_slots = []
    for s in slots:
        if isinstance(s, DiagonalSlot):
            norm_slots.append(s)
        else:
            m, mult = s
            norm_slots.append(DiagonalSlot(m, mult))
    if not norm_slots:
        raise ValueError("diagonal map needs at least one slot")
    source = norm_slots[0].eigenvalue_map.source
    for s in norm_slots:
        if s.eigenvalue_map.source != source:
            raise BaseMismatchError("all eigenvalue maps must share a source")
        if s.eigenvalue_map.target != b.base:
            raise BaseMismatchError("eigenvalue map target differs from the bundle base")
    result = trivial_bundle(source, 0)
    for s in norm_slots:
        piece = pullback_bundle(s.eigenvalue_map, b)
        if s.carrier is not None and not s.carrier.is_zero():
            piece = tensor_line(piece, s.carrier)
        piece = BundleExpr(source, piece.trivial_rank * s.multiplicity,
                           [(line, m * s.multiplicity) for line, m in piece.summands])
        result = result.direct_sum(piece)
    return result


def euler_nonzero(b: BundleExpr, budget: int | None = None) -> tuple[bool, str]:
    """Whether the Euler class is nonzero, and which route decided it.

    The factorized route is always available; when the full expansion fits
    the budget the top component of the expanded Chern class is computed as
    a cross-check and the two must agree.  budget=None reads the
    environment, budget=0 skips the cross-check.
    """
    fast = euler(b)
    route = "factorized"
    if budget is None:
        budget = expansion_budget()
    if budget and chern_expansion_cost(b) <= budget:
        full = homogeneous_component(chern(b, budget=budget), 2 * b.rank)
        if full != fast:
            raise AssertionError("factorized Euler class disagrees with full expansion")
        route = "factorized+full"
    return (not fast.is_zero(), route)
