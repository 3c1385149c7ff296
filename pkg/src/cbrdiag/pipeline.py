"""Diagnosis pipeline: correct, retrieve, refine, select.

The full query runs in four steps: imprecise numeric descriptors of the
target are corrected through their fuzzy profiles, retrieval scores every
source (excluding uncertain descriptors), the top ranked cases get an
adaptation score, and the case with the highest adaptation score is selected
so its recorded solution can be proposed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping, Optional

from .adaptation import AdaptationTerm, adaptation_measure
from .cases import Case, CaseBase, NumericValue, Solution
from .errors import ConfigurationError, MissingProfileError
from .fuzzy import FuzzyProfile, correct_imprecise
from .measures import LocalScores, ScoringContext, ScoringMode, retrieval_measure


@dataclass(frozen=True)
class Correction:
    descriptor_id: str
    original: float
    corrected: float


@dataclass(frozen=True)
class ScoredCase:
    """A source case with its scores and explanation breakdowns.

    The adaptation fields are filled only for cases that survived retrieval.
    """

    case_id: str
    m_r: float
    breakdown_r: list[LocalScores]
    m_a: Optional[float] = None
    breakdown_a: Optional[list[AdaptationTerm]] = None


@dataclass(frozen=True)
class DiagnosisOutcome:
    selected_case_id: Optional[str]
    solution: Optional[Solution]
    ranking: list[ScoredCase]
    mode: ScoringMode
    corrections_applied: list[Correction]


def prepare_target(
    target: Case, profiles: Mapping[str, FuzzyProfile]
) -> tuple[Case, list[Correction]]:
    """Correct every imprecise numeric descriptor of the target.

    Flags are kept on the corrected descriptors for audit, and the log lists
    every imprecise numeric descriptor even when correction was the identity.
    """
    corrections: list[Correction] = []
    updated = dict(target.descriptors)
    for did in sorted(target.descriptors):
        d = target.descriptors[did]
        if not (d.flags.imprecise and isinstance(d.value, NumericValue)):
            continue
        profile = profiles.get(did)
        if profile is None:
            raise MissingProfileError(did)
        corrected = correct_imprecise(d.value.magnitude, profile)
        corrections.append(Correction(descriptor_id=did, original=d.value.magnitude, corrected=corrected))
        updated[did] = replace(d, value=NumericValue(magnitude=corrected, unit=d.value.unit))
    prepared = replace(target, descriptors=updated)
    return prepared, corrections


def _rank_sources(target: Case, case_base: CaseBase, ctx: ScoringContext) -> list[ScoredCase]:
    scored = []
    for source in case_base.sources():
        result = retrieval_measure(target, source, ctx)
        scored.append(ScoredCase(case_id=source.id, m_r=result.score, breakdown_r=result.breakdown))
    scored.sort(key=lambda sc: (-sc.m_r, sc.case_id))
    return scored


def retrieve(target: Case, case_base: CaseBase, mode: ScoringMode, top_k: int) -> list[ScoredCase]:
    """Score every source against the target and keep the top_k best.

    Sources are ordered by descending retrieval score, ties broken by case id.
    In enhanced mode the target is corrected first. An empty case base gives
    an empty list.
    """
    if top_k < 1:
        raise ConfigurationError(f"top_k must be at least 1, got {top_k}")
    if mode is ScoringMode.ENHANCED:
        target, _ = prepare_target(target, case_base.profiles)
    ctx = ScoringContext(taxonomy=case_base.taxonomy, profiles=case_base.profiles, mode=mode)
    return _rank_sources(target, case_base, ctx)[:top_k]


def diagnose(target: Case, case_base: CaseBase, top_k: int = 3) -> DiagnosisOutcome:
    """Run the full enhanced pipeline and select the most adaptable case.

    Selection is the retrieved case with the highest adaptation score, ties
    broken by higher retrieval score and then case id. The outcome carries
    the selected case's solution, both breakdowns for every retrieved case,
    and the correction log.
    """
    if top_k < 1:
        raise ConfigurationError(f"top_k must be at least 1, got {top_k}")
    prepared, corrections = prepare_target(target, case_base.profiles)
    ctx = ScoringContext(
        taxonomy=case_base.taxonomy, profiles=case_base.profiles, mode=ScoringMode.ENHANCED
    )
    retrieved = _rank_sources(prepared, case_base, ctx)[:top_k]
    ranking: list[ScoredCase] = []
    for sc in retrieved:
        result = adaptation_measure(prepared, case_base.cases[sc.case_id], ctx)
        ranking.append(replace(sc, m_a=result.score, breakdown_a=result.breakdown))
    if not ranking:
        return DiagnosisOutcome(
            selected_case_id=None,
            solution=None,
            ranking=[],
            mode=ScoringMode.ENHANCED,
            corrections_applied=corrections,
        )
    selected = min(ranking, key=lambda sc: (-sc.m_a, -sc.m_r, sc.case_id))
    return DiagnosisOutcome(
        selected_case_id=selected.case_id,
        solution=case_base.cases[selected.case_id].solution,
        ranking=ranking,
        mode=ScoringMode.ENHANCED,
        corrections_applied=corrections,
    )
