"""Local similarity measures and the global retrieval measure.

The retrieval score of a source case against the target aggregates four
local factors per co-present descriptor: value closeness, state agreement,
presence, and operating-mode agreement. The score is the presence-normalized
sum of their products and always lands in [0, 1].

Two scoring modes exist. The typical mode is the comparison baseline: raw
values, no exclusions, numeric closeness as linear distance over the value
domain. The enhanced mode scores corrected values (the pipeline corrects the
target first), compares numerics by fuzzy class equality, and drops
descriptors whose value is uncertain on either side from both sums.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Optional

from .cases import AlignmentPair, Case, NumericValue, SymbolicValue, align
from .errors import MissingProfileError
from .fuzzy import FuzzyProfile, same_class
from .taxonomy import Taxonomy


class ScoringMode(enum.Enum):
    TYPICAL = "typical"
    ENHANCED = "enhanced"


@dataclass(frozen=True)
class ScoringContext:
    """Shared immutable context for scoring one target against sources."""

    taxonomy: Taxonomy
    profiles: Mapping[str, FuzzyProfile]
    mode: ScoringMode = ScoringMode.ENHANCED


@dataclass(frozen=True)
class LocalScores:
    """Per-descriptor factor breakdown; product is the numerator term."""

    descriptor_id: str
    phi_value: float
    phi_state: int
    phi_presence: int
    phi_om: int
    product: float


@dataclass(frozen=True)
class RetrievalResult:
    score: float
    breakdown: list[LocalScores]


def phi_presence(pair: Optional[AlignmentPair], mode: ScoringMode) -> int:
    """1 iff the descriptor is co-present; in enhanced mode an uncertain
    value on either side disqualifies it entirely."""
    if pair is None:
        return 0
    if mode is ScoringMode.ENHANCED and (pair.target.flags.uncertain or pair.source.flags.uncertain):
        return 0
    return 1


def phi_state(pair: AlignmentPair) -> int:
    """1 iff both states are absent or equal ignoring case."""
    ts, ss = pair.target.state, pair.source.state
    if ts is None and ss is None:
        return 1
    if ts is None or ss is None:
        return 0
    return 1 if ts.casefold() == ss.casefold() else 0


def phi_om(pair: AlignmentPair) -> int:
    """1 iff operating modes match exactly; a one-sided blank is a mismatch
    (it cannot certify agreement)."""
    return 1 if pair.target.operating_mode is pair.source.operating_mode else 0


def phi_value(
    pair: AlignmentPair,
    taxonomy: Taxonomy,
    profile: Optional[FuzzyProfile],
    mode: ScoringMode,
) -> float:
    """Value closeness in [0, 1].

    Symbolic labels use the taxonomy's depth-ratio similarity in both modes.
    Numerics with matching units: identical magnitudes score 1; otherwise
    enhanced mode asks the fuzzy profile for class equality and typical mode
    measures linear distance over the profile's domain span (exact equality
    when no profile is registered). Mismatched kinds or units score 0.
    """
    tv, sv = pair.target.value, pair.source.value
    if isinstance(tv, SymbolicValue) and isinstance(sv, SymbolicValue):
        return taxonomy.value_similarity(tv.label, sv.label)
    if isinstance(tv, NumericValue) and isinstance(sv, NumericValue):
        if tv.unit != sv.unit:
            return 0.0
        x, y = tv.magnitude, sv.magnitude
        if x == y:
            return 1.0
        if mode is ScoringMode.ENHANCED:
            if profile is None:
                raise MissingProfileError(pair.descriptor_id)
            return 1.0 if same_class(x, y, profile) else 0.0
        if profile is None:
            return 0.0
        span = profile.domain_upper - profile.domain_lower
        if span <= 0:
            return 0.0
        return max(0.0, min(1.0, 1.0 - abs(x - y) / span))
    return 0.0


def retrieval_measure(target: Case, source: Case, ctx: ScoringContext) -> RetrievalResult:
    """Global retrieval score with its per-descriptor breakdown.

    Sums run over co-present descriptors in id order. A pair excluded by the
    presence factor contributes zero to both sums and its value factor is
    reported as 0 without being evaluated, so enhanced scoring is exactly
    equivalent to deleting the uncertain descriptors up front. With nothing
    co-present the source is incomparable and scores 0.
    """
    rows: list[LocalScores] = []
    numerator = 0.0
    denominator = 0
    for pair in align(target, source):
        presence = phi_presence(pair, ctx.mode)
        state = phi_state(pair)
        om = phi_om(pair)
        if presence == 0:
            value = 0.0
        else:
            value = phi_value(pair, ctx.taxonomy, ctx.profiles.get(pair.descriptor_id), ctx.mode)
        product = value * state * presence * om
        rows.append(
            LocalScores(
                descriptor_id=pair.descriptor_id,
                phi_value=value,
                phi_state=state,
                phi_presence=presence,
                phi_om=om,
                product=product,
            )
        )
        numerator += product
        denominator += presence
    score = numerator / denominator if denominator else 0.0
    return RetrievalResult(score=score, breakdown=rows)
