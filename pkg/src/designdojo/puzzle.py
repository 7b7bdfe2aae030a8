"""Puzzle configuration types: pattern templates, solution specs, puzzle defs."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .model import Design, Member, MemberKind, MoveKind, validate_design

PRINCIPLES = frozenset({"coupling", "cohesion", "information-hiding", "modularity"})

MAX_ASSIGNMENT_PARAGRAPHS = 3
MAX_PARAGRAPH_LINES = 4


@dataclass(frozen=True)
class PatternSlot:
    """One template class: required members (by kind and symbolic name,
    multiset) and keywords the matched class must carry."""

    slot_id: str
    required_members: tuple[tuple[MemberKind, str], ...] = ()
    required_keywords: frozenset[str] = frozenset()

    def constraint_count(self) -> int:
        return len(self.required_members) + len(self.required_keywords)


@dataclass(frozen=True)
class PatternTemplate:
    """Slot-based description a design must realize up to class relabeling."""

    slots: tuple[PatternSlot, ...]
    slot_associations: frozenset[tuple[str, str]] = frozenset()

    def __post_init__(self):
        ids = [s.slot_id for s in self.slots]
        if len(ids) != len(set(ids)):
            raise ValueError("pattern slot ids must be unique")
        canon = set()
        for a, b in self.slot_associations:
            if a == b:
                raise ValueError(f"pattern association may not be a self-pair: {a!r}")
            if a not in ids or b not in ids:
                raise ValueError(f"pattern association references unknown slot: ({a!r}, {b!r})")
            canon.add((a, b) if a <= b else (b, a))
        object.__setattr__(self, "slot_associations", frozenset(canon))

    def constraint_count(self) -> int:
        return sum(s.constraint_count() for s in self.slots) + len(self.slot_associations)


class SolutionKind(enum.Enum):
    THRESHOLDS = "thresholds"
    PATTERN = "pattern"


@dataclass(frozen=True)
class Thresholds:
    """Inclusive bounds a design must meet: cohesion at least, coupling at most."""

    min_design_cohesion: Fraction
    max_avg_cbo: Fraction

    def __post_init__(self):
        if not (0 <= self.min_design_cohesion <= 1):
            raise ValueError("min_design_cohesion must be within [0, 1]")
        if self.max_avg_cbo < 0:
            raise ValueError("max_avg_cbo must be non-negative")


@dataclass(frozen=True)
class ScoreWeights:
    """Composite-score weights; non-negative, summing to one."""

    cohesion: Fraction = Fraction(1, 3)
    coupling: Fraction = Fraction(1, 3)
    pattern: Fraction = Fraction(1, 3)

    def __post_init__(self):
        for name in ("cohesion", "coupling", "pattern"):
            if getattr(self, name) < 0:
                raise ValueError(f"weight {name} must be non-negative")
        if self.cohesion + self.coupling + self.pattern != 1:
            raise ValueError("score weights must sum to 1")


@dataclass(frozen=True)
class SolutionSpec:
    """How a design gets accepted: thresholds on metrics, or a pattern match."""

    kind: SolutionKind
    weights: ScoreWeights
    thresholds: Optional[Thresholds] = None
    pattern: Optional[PatternTemplate] = None

    def __post_init__(self):
        if self.kind is SolutionKind.THRESHOLDS:
            if self.thresholds is None or self.pattern is not None:
                raise ValueError("thresholds spec must set thresholds and no pattern")
            if self.weights.pattern != 0:
                raise ValueError("thresholds spec has no pattern to weight")
        else:
            if self.pattern is None or self.thresholds is not None:
                raise ValueError("pattern spec must set pattern and no thresholds")

    def requires_cohesion(self) -> bool:
        if self.weights.cohesion > 0:
            return True
        return (
            self.kind is SolutionKind.THRESHOLDS
            and self.thresholds is not None
            and self.thresholds.min_design_cohesion > 0
        )


@dataclass(frozen=True)
class SolverCaps:
    """Search limits for exhaustive solution enumeration."""

    max_states: int = 200_000
    max_depth: int = 30

    def __post_init__(self):
        if self.max_states <= 0 or self.max_depth <= 0:
            raise ValueError("solver caps must be positive")


@dataclass(frozen=True)
class PuzzleDef:
    """One level: an initial design fragment, the toolbox it carries in
    ``initial.unplaced``, the moves the player may use, and how solutions
    are recognized and scored."""

    id: str
    title: str
    assignment: tuple[str, ...]
    principles: frozenset[str]
    initial: Design
    allowed_moves: frozenset[MoveKind]
    solutions: tuple[SolutionSpec, ...]
    class_creation_allowed: bool = False
    cbo_warning_threshold: int = 4
    max_classes: Optional[int] = None
    solver_caps: SolverCaps = SolverCaps()
    min_solutions: int = 1
    min_score_spread: int = 0

    def __post_init__(self):
        if not self.solutions:
            raise ValueError(f"puzzle {self.id!r} must declare at least one solution spec")
        if self.cbo_warning_threshold <= 0:
            raise ValueError("cbo_warning_threshold must be positive")

    def toolbox_ids(self) -> frozenset[str]:
        return frozenset(m.id for m in self.initial.unplaced)

    def requires_cohesion(self) -> bool:
        return any(spec.requires_cohesion() for spec in self.solutions)


def puzzle_problems(puzzle: PuzzleDef) -> list[str]:
    """Content-level validation of one puzzle; empty list means playable."""
    problems: list[str] = []
    if not (1 <= len(puzzle.assignment) <= MAX_ASSIGNMENT_PARAGRAPHS):
        problems.append(
            f"assignment must have 1..{MAX_ASSIGNMENT_PARAGRAPHS} paragraphs, "
            f"has {len(puzzle.assignment)}"
        )
    for i, para in enumerate(puzzle.assignment):
        lines = para.split("\n")
        if not para.strip():
            problems.append(f"assignment paragraph {i + 1} is empty")
        elif len(lines) > MAX_PARAGRAPH_LINES:
            problems.append(
                f"assignment paragraph {i + 1} has {len(lines)} lines "
                f"(max {MAX_PARAGRAPH_LINES})"
            )
    unknown = puzzle.principles - PRINCIPLES
    if unknown:
        problems.append(f"unknown principle tags: {sorted(unknown)}")
    if not puzzle.allowed_moves:
        problems.append("no moves are allowed")
    creation_kinds = {MoveKind.CREATE_CLASS, MoveKind.DELETE_CLASS}
    if not puzzle.class_creation_allowed and (puzzle.allowed_moves & creation_kinds):
        problems.append("create/delete class moves allowed but class_creation_allowed is false")
    if not puzzle.initial.classes:
        problems.append("initial design must contain at least one class")
    for violation in validate_design(puzzle.initial):
        problems.append(f"initial design: {violation.message}")
    if puzzle.max_classes is not None and puzzle.max_classes < len(puzzle.initial.classes):
        problems.append("max_classes is below the initial class count")
    if puzzle.requires_cohesion():
        for c in puzzle.initial.classes:
            if not c.keywords:
                problems.append(f"class {c.id!r} needs keywords (cohesion is scored)")
            for m in c.members:
                if not m.keywords:
                    problems.append(f"member {m.id!r} needs keywords (cohesion is scored)")
        for m in puzzle.initial.unplaced:
            if not m.keywords:
                problems.append(f"toolbox member {m.id!r} needs keywords (cohesion is scored)")
    return problems
