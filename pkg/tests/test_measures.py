from __future__ import annotations

from dataclasses import replace

import pytest
from hypothesis import given

from cbrdiag import (
    AlignmentPair,
    Descriptor,
    ImperfectionFlags,
    MissingProfileError,
    NumericValue,
    OperatingMode,
    ScoringContext,
    ScoringMode,
    SymbolicValue,
    retrieval_measure,
)
from cbrdiag.measures import phi_om, phi_presence, phi_state, phi_value
from strategies import case_bundles, clean_cases


def make_pair(target: Descriptor, source: Descriptor) -> AlignmentPair:
    return AlignmentPair(descriptor_id=target.id, target=target, source=source)


def sym(did: str, label: str, **kwargs) -> Descriptor:
    return Descriptor(id=did, name=did, value=SymbolicValue(label=label), **kwargs)


def num(did: str, magnitude: float, unit: str = "°C", **kwargs) -> Descriptor:
    return Descriptor(id=did, name=did, value=NumericValue(magnitude=magnitude, unit=unit), **kwargs)


UNCERTAIN = ImperfectionFlags(uncertain=True)


def test_phi_presence_absent_descriptor():
    assert phi_presence(None, ScoringMode.TYPICAL) == 0
    assert phi_presence(None, ScoringMode.ENHANCED) == 0


def test_phi_presence_co_present():
    pair = make_pair(sym("d", "works"), sym("d", "works"))
    assert phi_presence(pair, ScoringMode.TYPICAL) == 1
    assert phi_presence(pair, ScoringMode.ENHANCED) == 1


def test_phi_presence_uncertain_excluded_only_in_enhanced():
    pair = make_pair(sym("d", "works", flags=UNCERTAIN), sym("d", "works"))
    assert phi_presence(pair, ScoringMode.TYPICAL) == 1
    assert phi_presence(pair, ScoringMode.ENHANCED) == 0
    flipped = make_pair(sym("d", "works"), sym("d", "works", flags=UNCERTAIN))
    assert phi_presence(flipped, ScoringMode.ENHANCED) == 0


def test_phi_state_cases():
    assert phi_state(make_pair(sym("d", "x", state="Trained"), sym("d", "x", state="Trained"))) == 1
    assert phi_state(make_pair(sym("d", "x", state="trained"), sym("d", "x", state="TRAINED"))) == 1
    assert phi_state(make_pair(sym("d", "x"), sym("d", "x"))) == 1
    assert phi_state(make_pair(sym("d", "x", state="Noise presence"), sym("d", "x", state="Gaz circulating"))) == 0
    assert phi_state(make_pair(sym("d", "x", state="Trained"), sym("d", "x"))) == 0


def test_phi_om_cases():
    n = OperatingMode.NORMAL
    a = OperatingMode.ABNORMAL
    u = OperatingMode.UNSPECIFIED
    assert phi_om(make_pair(sym("d", "x", operating_mode=n), sym("d", "x", operating_mode=n))) == 1
    assert phi_om(make_pair(sym("d", "x", operating_mode=n), sym("d", "x", operating_mode=a))) == 0
    assert phi_om(make_pair(sym("d", "x", operating_mode=u), sym("d", "x", operating_mode=u))) == 1
    assert phi_om(make_pair(sym("d", "x", operating_mode=u), sym("d", "x", operating_mode=n))) == 0


def test_phi_value_symbolic_uses_taxonomy(engine_case_base):
    pair = make_pair(sym("d", "Turbo comp."), sym("d", "Comp."))
    value = phi_value(pair, engine_case_base.taxonomy, None, ScoringMode.TYPICAL)
    assert value == 0.8
    assert value == phi_value(pair, engine_case_base.taxonomy, None, ScoringMode.ENHANCED)


def test_phi_value_numeric_typical_linear(engine_case_base):
    pair = make_pair(num("ds3", 95.0), num("ds3", 100.0))
    profile = engine_case_base.profiles["ds3"]
    assert phi_value(pair, engine_case_base.taxonomy, profile, ScoringMode.TYPICAL) == 0.95


def test_phi_value_numeric_enhanced_class_equality(engine_case_base):
    profile = engine_case_base.profiles["ds3"]
    taxonomy = engine_case_base.taxonomy
    same = make_pair(num("ds3", 95.0), num("ds3", 100.0))
    assert phi_value(same, taxonomy, profile, ScoringMode.ENHANCED) == 1.0
    split = make_pair(num("ds3", 70.0), num("ds3", 95.0))
    assert phi_value(split, taxonomy, profile, ScoringMode.ENHANCED) == 0.0


def test_phi_value_identical_magnitudes_without_class(engine_case_base):
    # 30 falls in no subset, but identical readings always agree
    profile = engine_case_base.profiles["ds3"]
    pair = make_pair(num("ds3", 30.0), num("ds3", 30.0))
    assert phi_value(pair, engine_case_base.taxonomy, profile, ScoringMode.ENHANCED) == 1.0


def test_phi_value_unit_mismatch_scores_zero(engine_case_base):
    pair = make_pair(num("ds3", 95.0, unit="°C"), num("ds3", 95.0, unit="°F"))
    profile = engine_case_base.profiles["ds3"]
    assert phi_value(pair, engine_case_base.taxonomy, profile, ScoringMode.ENHANCED) == 0.0
    assert phi_value(pair, engine_case_base.taxonomy, profile, ScoringMode.TYPICAL) == 0.0


def test_phi_value_kind_mismatch_scores_zero(engine_case_base):
    pair = make_pair(num("d", 95.0), sym("d", "works"))
    assert phi_value(pair, engine_case_base.taxonomy, None, ScoringMode.TYPICAL) == 0.0


def test_phi_value_enhanced_numeric_requires_profile(engine_case_base):
    pair = make_pair(num("dX", 10.0, unit="u"), num("dX", 20.0, unit="u"))
    with pytest.raises(MissingProfileError):
        phi_value(pair, engine_case_base.taxonomy, None, ScoringMode.ENHANCED)


def ctx(case_base, mode: ScoringMode) -> ScoringContext:
    return ScoringContext(taxonomy=case_base.taxonomy, profiles=case_base.profiles, mode=mode)


def test_retrieval_fixture_source1_typical(engine_case_base):
    result = retrieval_measure(
        engine_case_base.cases["target"],
        engine_case_base.cases["source1"],
        ctx(engine_case_base, ScoringMode.TYPICAL),
    )
    assert result.score == 0.5
    assert [row.descriptor_id for row in result.breakdown] == ["ds1", "ds11", "ds5", "ds7"]


def test_retrieval_fixture_source3_typical(engine_case_base):
    # ds3 reads 95 on both sides, so the value factor is exact agreement
    result = retrieval_measure(
        engine_case_base.cases["target"],
        engine_case_base.cases["source3"],
        ctx(engine_case_base, ScoringMode.TYPICAL),
    )
    assert result.score == 0.75


def test_retrieval_empty_overlap_scores_zero(engine_case_base):
    target = engine_case_base.cases["target"]
    lonely = replace(engine_case_base.cases["source1"], descriptors={})
    result = retrieval_measure(target, lonely, ctx(engine_case_base, ScoringMode.TYPICAL))
    assert result.score == 0.0
    assert result.breakdown == []


def test_retrieval_excluded_pair_reported_with_zero_presence(engine_case_base):
    target = engine_case_base.cases["target"]
    source = engine_case_base.cases["source3"]
    result = retrieval_measure(target, source, ctx(engine_case_base, ScoringMode.ENHANCED))
    by_id = {row.descriptor_id: row for row in result.breakdown}
    assert by_id["ds9"].phi_presence == 0
    assert by_id["ds9"].product == 0.0


@given(clean_cases())
def test_self_similarity_of_clean_case(bundle):
    case_base, case = bundle
    for mode in ScoringMode:
        result = retrieval_measure(case, case, ctx(case_base, mode))
        assert result.score == 1.0


@given(case_bundles(min_sources=1))
def test_score_bounded(bundle):
    case_base, target = bundle
    for mode in ScoringMode:
        for source in case_base.sources():
            result = retrieval_measure(target, source, ctx(case_base, mode))
            assert 0.0 <= result.score <= 1.0


@given(case_bundles(min_sources=1))
def test_breakdown_products_consistent(bundle):
    case_base, target = bundle
    for source in case_base.sources():
        result = retrieval_measure(target, source, ctx(case_base, ScoringMode.ENHANCED))
        for row in result.breakdown:
            assert row.product == row.phi_value * row.phi_state * row.phi_presence * row.phi_om
