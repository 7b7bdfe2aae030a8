"""Design evaluation: coupling (CBO), keyword cohesion, pattern matching.

All arithmetic is exact ``fractions.Fraction``; values are converted to
decimal only when they cross a presentation boundary (JSON, CLI output).
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import EmptyDesignError, MissingKeywordsError
from .model import ClassBox, Design
from .puzzle import PatternTemplate, PuzzleDef, SolutionKind, SolutionSpec

ZERO = Fraction(0)
ONE = Fraction(1)


def round_half_up(value: Fraction) -> int:
    """Round to the nearest integer, halves away from zero toward +inf."""
    return math.floor(value + Fraction(1, 2))


# -- coupling --------------------------------------------------------------


def cbo_per_class(design: Design, class_id: str) -> int:
    """Number of distinct other classes this class is associated with."""
    design.class_by_id(class_id)
    return len(design.adjacent(class_id))


def avg_cbo(design: Design) -> Fraction:
    """Exact mean of per-class CBO over all classes."""
    if not design.classes:
        raise EmptyDesignError("average CBO")
    total = sum(len(design.adjacent(c.id)) for c in design.classes)
    return Fraction(total, len(design.classes))


def coupling_warnings(design: Design, threshold: int) -> list[tuple[str, int]]:
    """Classes whose CBO exceeds the threshold, highest first."""
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    hits = [
        (c.id, len(design.adjacent(c.id)))
        for c in design.classes
        if len(design.adjacent(c.id)) > threshold
    ]
    hits.sort(key=lambda item: (-item[1], item[0]))
    return hits


# -- cohesion ---------------------------------------------------------------


def _cohesion_elements(box: ClassBox) -> list[tuple[str, frozenset[str]]]:
    """Class header plus each member, as (element id, keyword set)."""
    return [(box.id, box.keywords)] + [(m.id, m.keywords) for m in box.members]


def class_cohesion(design: Design, class_id: str) -> Fraction:
    """Mean pairwise keyword-match ratio over the class header and members.

    Each unordered pair contributes |intersection| / |union|; a class whose
    only element is its own header is vacuously cohesive (1). Raises
    MissingKeywordsError naming the first element with no keywords.
    """
    box = design.class_by_id(class_id)
    elements = _cohesion_elements(box)
    for element_id, keywords in elements:
        if not keywords:
            raise MissingKeywordsError(class_id, element_id)
    if len(elements) == 1:
        return ONE
    total = ZERO
    pairs = 0
    for (_, kw_a), (_, kw_b) in itertools.combinations(elements, 2):
        union = kw_a | kw_b
        total += Fraction(len(kw_a & kw_b), len(union))
        pairs += 1
    return total / pairs


def design_cohesion(design: Design) -> Fraction:
    """Unweighted mean of class cohesion over all classes."""
    if not design.classes:
        raise EmptyDesignError("design cohesion")
    total = sum((class_cohesion(design, c.id) for c in design.classes), ZERO)
    return total / len(design.classes)


def _cohesion_survey(design: Design) -> tuple[dict[str, Fraction], list[tuple[str, str]]]:
    """Per-class cohesion where computable, plus (class, element) gaps."""
    per_class: dict[str, Fraction] = {}
    missing: list[tuple[str, str]] = []
    for box in design.classes:
        try:
            per_class[box.id] = class_cohesion(design, box.id)
        except MissingKeywordsError as exc:
            missing.append((exc.class_id, exc.element_id))
    return per_class, missing


# -- pattern matching -------------------------------------------------------


def _slot_satisfaction(slot, box: ClassBox) -> int:
    available = Counter((m.kind, m.name) for m in box.members)
    required = Counter(slot.required_members)
    satisfied = sum(min(count, available[key]) for key, count in required.items())
    satisfied += len(slot.required_keywords & box.keywords)
    return satisfied


def _assignments(slots, classes):
    """Yield maximal injective slot->class mappings (None for spare slots)."""
    if len(classes) >= len(slots):
        for perm in itertools.permutations(classes, len(slots)):
            yield dict(zip((s.slot_id for s in slots), perm))
    else:
        slot_ids = [s.slot_id for s in slots]
        for chosen in itertools.combinations(slot_ids, len(classes)):
            for perm in itertools.permutations(classes):
                yield dict(zip(chosen, perm))


def pattern_match(design: Design, template: PatternTemplate) -> Fraction:
    """Best fraction of template constraints any slot assignment satisfies.

    Searches every injective assignment of slots to classes (puzzle scale
    keeps this small); returns 1 exactly when some assignment satisfies all
    member, keyword and association constraints.
    """
    total = template.constraint_count()
    if total == 0:
        return ONE
    if not design.classes:
        return ZERO
    slot_by_id = {s.slot_id: s for s in template.slots}
    best = 0
    for mapping in _assignments(template.slots, design.classes):
        satisfied = 0
        for slot_id, box in mapping.items():
            satisfied += _slot_satisfaction(slot_by_id[slot_id], box)
        for a, b in template.slot_associations:
            box_a = mapping.get(a)
            box_b = mapping.get(b)
            if box_a is None or box_b is None:
                continue
            if box_b.id in design.adjacent(box_a.id):
                satisfied += 1
        if satisfied > best:
            best = satisfied
            if best == total:
                break
    return Fraction(best, total)


# -- composite score --------------------------------------------------------


@dataclass(frozen=True)
class ScoreWarning:
    class_id: str
    code: str
    message: str


@dataclass(frozen=True)
class ScoreReport:
    """Everything the evaluation of one design against one spec produced."""

    per_class_cbo: dict[str, int]
    avg_cbo: Fraction
    per_class_cohesion: dict[str, Fraction]
    design_cohesion: Fraction
    pattern_score: Fraction
    coupling_term: Fraction
    composite: int
    accepted: bool
    spec_kind: SolutionKind
    spec_index: Optional[int]
    warnings: tuple[ScoreWarning, ...]
    unplaced_count: int = 0

    def failure_reasons(self, spec: SolutionSpec) -> list[str]:
        """Human-readable reasons this report is not accepted."""
        if self.accepted:
            return []
        reasons = []
        if spec.kind is SolutionKind.THRESHOLDS:
            assert spec.thresholds is not None
            if self.unplaced_count:
                reasons.append(
                    f"{self.unplaced_count} toolbox member(s) still unplaced"
                )
            if self.design_cohesion < spec.thresholds.min_design_cohesion:
                reasons.append(
                    f"design cohesion {float(self.design_cohesion):.3f} is below "
                    f"the required {float(spec.thresholds.min_design_cohesion):.3f}"
                )
            if self.avg_cbo > spec.thresholds.max_avg_cbo:
                reasons.append(
                    f"average CBO {float(self.avg_cbo):.3f} exceeds the allowed "
                    f"{float(spec.thresholds.max_avg_cbo):.3f}"
                )
        else:
            reasons.append(
                f"pattern match is {float(self.pattern_score):.3f}, needs 1.0"
            )
        return reasons


def score(
    design: Design,
    spec: SolutionSpec,
    cbo_warning_threshold: int = 4,
    spec_index: Optional[int] = None,
    strict_cohesion: bool = True,
) -> ScoreReport:
    """Evaluate one design against one solution spec.

    The coupling term normalizes average CBO by max(1, n-1) so it is
    scale-free; the composite is the weighted mix of the three metrics on a
    0..100 scale, rounded half-up. Classes whose cohesion cannot be computed
    (an element without keywords) are reported as warnings; if the spec
    actually scores cohesion that is an error under ``strict_cohesion``.
    """
    if not design.classes:
        raise EmptyDesignError("score")
    n = len(design.classes)
    per_cbo = {c.id: len(design.adjacent(c.id)) for c in design.classes}
    avg = Fraction(sum(per_cbo.values()), n)
    cbo_norm = max(1, n - 1)
    coupling_term = max(ZERO, ONE - avg / cbo_norm)

    per_coh, missing = _cohesion_survey(design)
    if missing:
        if strict_cohesion and spec.requires_cohesion():
            raise MissingKeywordsError(*missing[0])
        coh = ZERO
    else:
        coh = sum(per_coh.values(), ZERO) / n

    pattern_score = pattern_match(design, spec.pattern) if spec.pattern else ZERO

    warnings = [
        ScoreWarning(class_id, "high_coupling", f"CBO {value} exceeds threshold {cbo_warning_threshold}")
        for class_id, value in coupling_warnings(design, cbo_warning_threshold)
    ]
    if spec.requires_cohesion():
        # On keyword-free puzzles missing keywords are by design, not a gap.
        warnings.extend(
            ScoreWarning(class_id, "missing_keywords", f"element {element_id!r} has no keywords")
            for class_id, element_id in missing
        )

    composite = round_half_up(
        100
        * (
            spec.weights.cohesion * coh
            + spec.weights.coupling * coupling_term
            + spec.weights.pattern * pattern_score
        )
    )

    if spec.kind is SolutionKind.THRESHOLDS:
        # A half-sorted board is not a solution: threshold specs demand the
        # whole toolbox placed, else an empty board would win on vacuous
        # cohesion alone.
        assert spec.thresholds is not None
        accepted = (
            not design.unplaced
            and coh >= spec.thresholds.min_design_cohesion
            and avg <= spec.thresholds.max_avg_cbo
        )
    else:
        accepted = pattern_score == 1

    return ScoreReport(
        per_class_cbo=per_cbo,
        avg_cbo=avg,
        per_class_cohesion=per_coh,
        design_cohesion=coh,
        pattern_score=pattern_score,
        coupling_term=coupling_term,
        composite=composite,
        accepted=accepted,
        spec_kind=spec.kind,
        spec_index=spec_index,
        warnings=tuple(warnings),
        unplaced_count=len(design.unplaced),
    )


def evaluate(design: Design, puzzle: PuzzleDef, strict_cohesion: bool = True) -> ScoreReport:
    """Score against every solution spec and keep the most favorable report:
    accepted beats not-accepted, then higher composite, then spec order."""
    best: Optional[ScoreReport] = None
    for i, spec in enumerate(puzzle.solutions):
        report = score(
            design,
            spec,
            cbo_warning_threshold=puzzle.cbo_warning_threshold,
            spec_index=i,
            strict_cohesion=strict_cohesion,
        )
        if best is None or (report.accepted, report.composite) > (best.accepted, best.composite):
            best = report
    assert best is not None
    return best


def progress(design: Design, puzzle: PuzzleDef) -> Fraction:
    """Closeness to a solution in [0, 1]; exactly 1 iff some spec accepts.

    Half the value is the fraction of members placed (out of every member the
    design carries, placed or not -- authored members a player removes count
    against placement just like toolbox leftovers); the other half is the
    best per-spec satisfaction: mean threshold-satisfaction ratios for
    threshold specs, the pattern-match fraction for pattern specs.
    """
    total = len(design.all_members())
    if total:
        placement = Fraction(total - len(design.unplaced), total)
    else:
        placement = ONE

    if not design.classes:
        return placement / 2

    per_coh, missing = _cohesion_survey(design)
    coh = sum(per_coh.values(), ZERO) / len(design.classes) if not missing else ZERO
    avg = avg_cbo(design)

    best = ZERO
    for spec in puzzle.solutions:
        if spec.kind is SolutionKind.THRESHOLDS:
            assert spec.thresholds is not None
            min_c = spec.thresholds.min_design_cohesion
            max_b = spec.thresholds.max_avg_cbo
            cohesion_ratio = ONE if min_c == 0 else min(ONE, coh / min_c)
            coupling_ratio = ONE if avg <= max_b else max_b / avg
            spec_progress = (cohesion_ratio + coupling_ratio) / 2
            accepted = not design.unplaced and coh >= min_c and avg <= max_b
        else:
            assert spec.pattern is not None
            spec_progress = pattern_match(design, spec.pattern)
            accepted = spec_progress == 1
        if accepted:
            return ONE
        best = max(best, spec_progress)

    return placement / 2 + best / 2
