"""Brute-force reference scorer, kept deliberately independent.

Everything here recomputes scores from raw case data: taxonomy walks follow
parent pointers directly, fuzzy classification rescans the subset list, and
the two measures accumulate term by term. No scoring function from the
package is called; only its data model is read. Arithmetic expression shapes
match the package so agreement is bit-exact, which is what the equivalence
tests assert.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Mapping, Optional

from cbrdiag import (
    Case,
    CaseBase,
    CaseKind,
    FuzzyProfile,
    FuzzySubset,
    NumericValue,
    OperatingMode,
    SymbolicValue,
    Taxonomy,
)


def path_to_root(taxonomy: Taxonomy, name: str) -> list[str]:
    path = [name]
    while True:
        parent = taxonomy.parent(path[-1])
        if parent is None:
            return path
        path.append(parent)


def naive_value_similarity(taxonomy: Taxonomy, a: str, b: str) -> float:
    if a == b:
        return 1.0
    ancestors_a = path_to_root(taxonomy, a)
    lca = next(n for n in path_to_root(taxonomy, b) if n in set(ancestors_a))
    depth_a = len(ancestors_a) - 1
    depth_b = len(path_to_root(taxonomy, b)) - 1
    depth_lca = len(path_to_root(taxonomy, lca)) - 1
    return 2.0 * depth_lca / (depth_a + depth_b)


def naive_membership(x: float, profile: FuzzyProfile) -> float:
    return max(0.0, 1.0 - abs(x - profile.prototype) / profile.half_width)


def naive_classify(x: float, profile: FuzzyProfile) -> Optional[FuzzySubset]:
    for s in profile.subsets:
        if s.lower <= x <= s.upper:
            return s
    p = profile.prototype
    if x < p:
        below = [s for s in profile.subsets if s.upper < p and s.upper < x]
        if below:
            return max(below, key=lambda s: s.upper)
        return None
    above = [s for s in profile.subsets if s.lower > p and s.lower > x]
    if above:
        return min(above, key=lambda s: s.lower)
    return None


def naive_correct(x: float, profile: FuzzyProfile) -> float:
    if naive_membership(x, profile) >= 0.5:
        return profile.prototype
    s = naive_classify(x, profile)
    if s is None:
        return x
    if abs(s.lower - profile.prototype) > abs(s.upper - profile.prototype):
        return s.lower
    return s.upper


def naive_phi_value(
    taxonomy: Taxonomy,
    profile: Optional[FuzzyProfile],
    target_value,
    source_value,
    enhanced: bool,
) -> float:
    if isinstance(target_value, SymbolicValue) and isinstance(source_value, SymbolicValue):
        return naive_value_similarity(taxonomy, target_value.label, source_value.label)
    if isinstance(target_value, NumericValue) and isinstance(source_value, NumericValue):
        if target_value.unit != source_value.unit:
            return 0.0
        x, y = target_value.magnitude, source_value.magnitude
        if x == y:
            return 1.0
        if enhanced:
            assert profile is not None, "reference scorer needs a profile for every numeric"
            cx = naive_classify(x, profile)
            cy = naive_classify(y, profile)
            return 1.0 if (cx is not None and cx == cy) else 0.0
        if profile is None:
            return 0.0
        span = profile.domain_upper - profile.domain_lower
        if span <= 0:
            return 0.0
        return max(0.0, min(1.0, 1.0 - abs(x - y) / span))
    return 0.0


def naive_retrieval_score(
    target: Case,
    source: Case,
    taxonomy: Taxonomy,
    profiles: Mapping[str, FuzzyProfile],
    enhanced: bool,
) -> float:
    numerator = 0.0
    denominator = 0
    for did in sorted(set(target.descriptors) & set(source.descriptors)):
        dt = target.descriptors[did]
        ds = source.descriptors[did]
        if enhanced and (dt.flags.uncertain or ds.flags.uncertain):
            presence = 0
        else:
            presence = 1
        if presence == 0:
            value = 0.0
        else:
            value = naive_phi_value(taxonomy, profiles.get(did), dt.value, ds.value, enhanced)
        if dt.state is None and ds.state is None:
            state = 1
        elif dt.state is None or ds.state is None:
            state = 0
        else:
            state = 1 if dt.state.casefold() == ds.state.casefold() else 0
        om = 1 if dt.operating_mode is ds.operating_mode else 0
        numerator += value * state * presence * om
        denominator += presence
    return numerator / denominator if denominator else 0.0


def naive_adaptation_score(
    target: Case,
    source: Case,
    taxonomy: Taxonomy,
    profiles: Mapping[str, FuzzyProfile],
) -> float:
    numerator = 0.0
    denominator = 0
    for did in sorted(set(target.descriptors) & set(source.descriptors)):
        dt = target.descriptors[did]
        ds = source.descriptors[did]
        if (
            dt.operating_mode is OperatingMode.UNSPECIFIED
            and ds.operating_mode is OperatingMode.UNSPECIFIED
        ):
            continue
        abnormal = int(dt.operating_mode is OperatingMode.ABNORMAL) + int(
            ds.operating_mode is OperatingMode.ABNORMAL
        )
        weight = 2**abnormal
        presence = 1
        value = naive_phi_value(taxonomy, profiles.get(did), dt.value, ds.value, True)
        numerator += weight * presence * value
        denominator += presence
    return numerator / denominator if denominator else 0.0


def naive_prepare(target: Case, profiles: Mapping[str, FuzzyProfile]) -> Case:
    updated = dict(target.descriptors)
    for did in sorted(target.descriptors):
        d = target.descriptors[did]
        if d.flags.imprecise and isinstance(d.value, NumericValue):
            profile = profiles[did]
            corrected = naive_correct(d.value.magnitude, profile)
            updated[did] = replace(d, value=NumericValue(magnitude=corrected, unit=d.value.unit))
    return replace(target, descriptors=updated)


def naive_retrieve(
    target: Case, case_base: CaseBase, enhanced: bool, top_k: int
) -> list[tuple[str, float]]:
    if enhanced:
        target = naive_prepare(target, case_base.profiles)
    scored = []
    for cid in sorted(case_base.cases):
        case = case_base.cases[cid]
        if case.kind is not CaseKind.SOURCE:
            continue
        scored.append(
            (cid, naive_retrieval_score(target, case, case_base.taxonomy, case_base.profiles, enhanced))
        )
    scored.sort(key=lambda item: (-item[1], item[0]))
    return scored[:top_k]


def naive_select(target: Case, case_base: CaseBase, top_k: int) -> Optional[str]:
    prepared = naive_prepare(target, case_base.profiles)
    retrieved = naive_retrieve(target, case_base, True, top_k)
    if not retrieved:
        return None
    adapted = [
        (cid, naive_adaptation_score(prepared, case_base.cases[cid], case_base.taxonomy, case_base.profiles), m_r)
        for cid, m_r in retrieved
    ]
    return min(adapted, key=lambda item: (-item[1], -item[2], item[0]))[0]
