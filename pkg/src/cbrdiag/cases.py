"""Case and descriptor model.

A case is an identified bundle of descriptors; each descriptor carries a
symbolic or numeric value, an optional state label, an operating mode, and
two independent imperfection flags (imprecise, uncertain). Incompleteness is
never a flag: a missing descriptor is simply absent from the case, and all
scoring is gated on co-presence via :func:`align`.

All types are immutable values after construction and safe to share across
concurrent scorers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Mapping, Optional, Union

if TYPE_CHECKING:
    from .fuzzy import FuzzyProfile
    from .taxonomy import Taxonomy


class OperatingMode(enum.Enum):
    """Operating mode of the observed component.

    UNSPECIFIED stands for a blank annotation and is distinct from NORMAL:
    a blank never certifies normal operation.
    """

    NORMAL = "N"
    ABNORMAL = "A"
    UNSPECIFIED = "U"


class CaseKind(enum.Enum):
    SOURCE = "source"
    TARGET = "target"


@dataclass(frozen=True)
class ImperfectionFlags:
    """Imprecision and uncertainty markers; the flags may co-occur."""

    imprecise: bool = False
    uncertain: bool = False


CLEAN = ImperfectionFlags()


@dataclass(frozen=True)
class SymbolicValue:
    """A label naming a node of the case base's component taxonomy."""

    label: str


@dataclass(frozen=True)
class NumericValue:
    """A measured magnitude with its unit."""

    magnitude: float
    unit: str


DescriptorValue = Union[SymbolicValue, NumericValue]


@dataclass(frozen=True)
class Descriptor:
    """One observed attribute of a case."""

    id: str
    name: str
    value: DescriptorValue
    state: Optional[str] = None
    operating_mode: OperatingMode = OperatingMode.UNSPECIFIED
    flags: ImperfectionFlags = CLEAN


@dataclass(frozen=True)
class Solution:
    """Diagnosis attached to a solved source case."""

    failing_component: str
    action: str


@dataclass(frozen=True)
class Case:
    """Identified bundle of descriptors, optionally with a solution.

    Source cases used for final selection should carry a solution; target
    cases carry none.
    """

    id: str
    kind: CaseKind
    descriptors: Mapping[str, Descriptor] = field(default_factory=dict)
    solution: Optional[Solution] = None

    def descriptor_ids(self) -> list[str]:
        return sorted(self.descriptors)


@dataclass(frozen=True)
class AlignmentPair:
    """A descriptor co-present in the target and a source case."""

    descriptor_id: str
    target: Descriptor
    source: Descriptor


def align(target: Case, source: Case) -> list[AlignmentPair]:
    """Pair up the descriptors present in both cases.

    Returns one pair per co-present descriptor id, sorted by id; descriptors
    present on only one side are dropped (they can only ever gate presence).
    """
    shared = sorted(set(target.descriptors) & set(source.descriptors))
    return [
        AlignmentPair(descriptor_id=did, target=target.descriptors[did], source=source.descriptors[did])
        for did in shared
    ]


@dataclass(frozen=True)
class CaseBase:
    """Immutable snapshot of cases, a taxonomy, and fuzzy profiles.

    The snapshot may bundle target cases next to the sources; retrieval only
    ever scores against the sources.
    """

    taxonomy: "Taxonomy"
    profiles: Mapping[str, "FuzzyProfile"] = field(default_factory=dict)
    cases: Mapping[str, Case] = field(default_factory=dict)

    def sources(self) -> list[Case]:
        return [self.cases[cid] for cid in sorted(self.cases) if self.cases[cid].kind is CaseKind.SOURCE]

    def targets(self) -> list[Case]:
        return [self.cases[cid] for cid in sorted(self.cases) if self.cases[cid].kind is CaseKind.TARGET]

    def validate(self) -> list[str]:
        violations: list[str] = []
        for cid in sorted(self.cases):
            violations.extend(validate_case(self.cases[cid], self.taxonomy, self.profiles))
        return violations


def validate_case(
    case: Case,
    taxonomy: "Taxonomy",
    profiles: Mapping[str, "FuzzyProfile"],
) -> list[str]:
    """Report the case's violations against a taxonomy and profile registry.

    Checks: symbolic labels (including a solution's failing component) must
    resolve to taxonomy nodes; a numeric descriptor flagged imprecise must
    have a fuzzy profile; descriptor map keys must match descriptor ids.
    An empty report means the case is valid; callers decide severity.
    """
    violations: list[str] = []
    for key in sorted(case.descriptors):
        d = case.descriptors[key]
        where = f"{case.id}/{key}"
        if d.id != key:
            violations.append(f"{where}: descriptor id {d.id!r} does not match its key")
        if isinstance(d.value, SymbolicValue):
            if not taxonomy.contains(d.value.label):
                violations.append(f"{where}: unknown taxonomy label {d.value.label!r}")
        elif isinstance(d.value, NumericValue):
            if d.flags.imprecise and d.id not in profiles:
                violations.append(f"{where}: imprecise numeric descriptor has no fuzzy profile")
    if case.solution is not None and not taxonomy.contains(case.solution.failing_component):
        violations.append(
            f"{case.id}/solution: unknown taxonomy label {case.solution.failing_component!r}"
        )
    return violations
