"""Operating-mode weights and the adaptation measure.

After retrieval narrows the sources down, the adaptation measure ranks how
well each retrieved case's knowledge transfers to the target. It is a
presence-normalized sum of value similarities weighted by how abnormal the
operating modes are: descriptors in failure mode point at the components
most likely to be at fault, so they dominate the choice.

Only co-present descriptors annotated with an operating mode on at least one
side enter the sums, and uncertain descriptors participate: doubt disqualifies
a value from similarity, not from pointing at a failing component.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cases import Case, OperatingMode, align
from .measures import ScoringContext, ScoringMode, phi_value


def lambda_weight(target_mode: OperatingMode, source_mode: OperatingMode) -> int:
    """Weight doubling per abnormal side: 1, 2, or 4.

    An unspecified mode weighs like a normal one; absence of evidence of
    failure must not add weight.
    """
    abnormal = int(target_mode is OperatingMode.ABNORMAL) + int(source_mode is OperatingMode.ABNORMAL)
    return 2**abnormal


@dataclass(frozen=True)
class AdaptationTerm:
    """Per-descriptor weighted contribution; term is the numerator share."""

    descriptor_id: str
    weight: int
    phi_presence: int
    phi_value: float
    term: float


@dataclass(frozen=True)
class AdaptationResult:
    score: float
    breakdown: list[AdaptationTerm]


def adaptation_measure(target: Case, source: Case, ctx: ScoringContext) -> AdaptationResult:
    """Adaptation score with its per-descriptor breakdown, in [0, 4].

    Numeric values are compared by fuzzy class equality, so callers pass the
    target in corrected form (the pipeline always does). Sums run in
    descriptor-id order; with no mode-bearing co-present descriptor the score
    is 0.
    """
    rows: list[AdaptationTerm] = []
    numerator = 0.0
    denominator = 0
    for pair in align(target, source):
        t_mode = pair.target.operating_mode
        s_mode = pair.source.operating_mode
        if t_mode is OperatingMode.UNSPECIFIED and s_mode is OperatingMode.UNSPECIFIED:
            continue
        presence = 1
        weight = lambda_weight(t_mode, s_mode)
        value = phi_value(pair, ctx.taxonomy, ctx.profiles.get(pair.descriptor_id), ScoringMode.ENHANCED)
        term = weight * presence * value
        rows.append(
            AdaptationTerm(
                descriptor_id=pair.descriptor_id,
                weight=weight,
                phi_presence=presence,
                phi_value=value,
                term=term,
            )
        )
        numerator += term
        denominator += presence
    score = numerator / denominator if denominator else 0.0
    return AdaptationResult(score=score, breakdown=rows)
