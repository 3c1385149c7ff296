"""Run both scoring modes over the bundled engine case base and print a
side-by-side comparison: retrieval rankings, adaptation scores, and the
final selection with its proposed repair action.
"""

from __future__ import annotations

import argparse
import os
import sys

from cbrdiag import (
    ScoringMode,
    decode_case_base,
    diagnose,
    prepare_target,
    retrieve,
)

DEFAULT_CASE_BASE = os.path.join(
    os.path.dirname(os.path.abspath(__file__)), os.pardir, "data", "engine_case_base.json"
)


def print_ranking(title: str, ranking) -> None:
    print(title)
    for position, sc in enumerate(ranking, start=1):
        extra = "" if sc.m_a is None else f"  m_a={sc.m_a:.4f}"
        print(f"  {position}. {sc.case_id}  m_r={sc.m_r:.4f}{extra}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--case-base", default=os.path.normpath(DEFAULT_CASE_BASE))
    parser.add_argument("--top-k", type=int, default=3, dest="top_k")
    args = parser.parse_args(argv)

    with open(args.case_base, encoding="utf-8") as handle:
        case_base = decode_case_base(handle.read())
    targets = case_base.targets()
    if len(targets) != 1:
        print(f"expected exactly one bundled target, found {len(targets)}", file=sys.stderr)
        return 1
    target = targets[0]
    print(f"case base: {args.case_base}")
    print(f"target: {target.id} with descriptors {', '.join(target.descriptor_ids())}")
    print()

    _, corrections = prepare_target(target, case_base.profiles)
    for c in corrections:
        print(f"imprecise {c.descriptor_id} corrected: {c.original:g} -> {c.corrected:g}")
    print()

    typical = retrieve(target, case_base, ScoringMode.TYPICAL, args.top_k)
    print_ranking("retrieval, typical mode (raw values, no exclusions):", typical)
    print()

    enhanced = retrieve(target, case_base, ScoringMode.ENHANCED, args.top_k)
    print_ranking("retrieval, enhanced mode (corrected target, uncertain excluded):", enhanced)
    print()

    outcome = diagnose(target, case_base, top_k=args.top_k)
    print_ranking("adaptation over the retrieved cases:", outcome.ranking)
    print()
    print(f"selected: {outcome.selected_case_id}")
    if outcome.solution is not None:
        print(f"failing component: {outcome.solution.failing_component}")
        print(f"action: {outcome.solution.action}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
