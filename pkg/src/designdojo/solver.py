"""Exhaustive breadth-first enumeration of reachable accepted designs.

Used to certify packs (every shipped puzzle must be solvable) and as the
oracle for multi-solution properties. States are deduplicated by a canonical
form: placement map plus canonical association set, with player-created
classes identified only by their keyword set and contents so renaming a
created class never spawns a new branch.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .engine import legal_moves
from .errors import DesignDojoError
from .metrics import ScoreReport, evaluate
from .model import Design, Move, apply_structural_edit
from .puzzle import PuzzleDef, SolverCaps

CanonicalKey = tuple


def canonical_key(design: Design, authored_ids: frozenset[str]) -> CanonicalKey:
    """Canonical form of a design, ignoring layout and created-class names."""
    labels: dict[str, tuple] = {}
    entries = []
    for box in design.classes:
        if box.id in authored_ids:
            label = ("a", box.id)
        else:
            label = ("c", tuple(sorted(box.keywords)), tuple(sorted(box.member_ids())))
        labels[box.id] = label
        entries.append((label, tuple(sorted(box.member_ids()))))
    assoc_pairs = sorted(
        tuple(sorted((labels[a.a], labels[a.b]))) for a in design.associations
    )
    unplaced = tuple(sorted(m.id for m in design.unplaced))
    return (tuple(sorted(entries)), tuple(assoc_pairs), unplaced)


@dataclass(frozen=True)
class FoundSolution:
    design: Design
    report: ScoreReport
    moves: tuple[Move, ...]

    @property
    def composite(self) -> int:
        return self.report.composite


@dataclass
class SolutionSearch:
    solutions: list[FoundSolution] = field(default_factory=list)
    states_visited: int = 0
    exhausted: bool = True
    cap_hit: Optional[str] = None  # "max_states" or "max_depth"

    @property
    def solvable(self) -> bool:
        return bool(self.solutions)

    @property
    def composites(self) -> list[int]:
        return sorted(s.composite for s in self.solutions)

    @property
    def score_spread(self) -> int:
        scores = self.composites
        return scores[-1] - scores[0] if scores else 0


def enumerate_solutions(puzzle: PuzzleDef, caps: Optional[SolverCaps] = None) -> SolutionSearch:
    """BFS over canonical design states reachable with the puzzle's moves.

    Returns every distinct accepted state found within the caps, each with
    its score report and one shortest move path. ``exhausted`` is True only
    if the whole reachable space fit inside the caps; hitting a cap returns
    the partial result flagged with ``cap_hit``.
    """
    caps = caps or puzzle.solver_caps
    authored = frozenset(c.id for c in puzzle.initial.classes)
    initial = puzzle.initial

    start_key = canonical_key(initial, authored)
    visited: set[CanonicalKey] = {start_key}
    parents: dict[CanonicalKey, tuple[Optional[CanonicalKey], Optional[Move]]] = {
        start_key: (None, None)
    }
    result = SolutionSearch()
    accepted: dict[CanonicalKey, tuple[Design, ScoreReport]] = {}

    def consider(key: CanonicalKey, design: Design) -> None:
        report = evaluate(design, puzzle, strict_cohesion=False)
        if report.accepted:
            accepted[key] = (design, report)

    consider(start_key, initial)
    queue: deque[tuple[Design, CanonicalKey, int]] = deque([(initial, start_key, 0)])

    while queue:
        design, key, depth = queue.popleft()
        for move in legal_moves(puzzle, design):
            try:
                nxt = apply_structural_edit(design, move)
            except DesignDojoError:
                continue
            nxt_key = canonical_key(nxt, authored)
            if nxt_key in visited:
                continue
            if depth >= caps.max_depth:
                result.exhausted = False
                result.cap_hit = result.cap_hit or "max_depth"
                continue
            if len(visited) >= caps.max_states:
                result.exhausted = False
                result.cap_hit = result.cap_hit or "max_states"
                queue.clear()
                break
            visited.add(nxt_key)
            parents[nxt_key] = (key, move)
            consider(nxt_key, nxt)
            queue.append((nxt, nxt_key, depth + 1))

    result.states_visited = len(visited)

    def path_to(key: CanonicalKey) -> tuple[Move, ...]:
        moves: list[Move] = []
        cursor: Optional[CanonicalKey] = key
        while cursor is not None:
            parent, move = parents[cursor]
            if move is not None:
                moves.append(move)
            cursor = parent
        moves.reverse()
        return tuple(moves)

    for key, (design, report) in accepted.items():
        result.solutions.append(FoundSolution(design=design, report=report, moves=path_to(key)))
    result.solutions.sort(key=lambda s: (-s.composite, len(s.moves)))
    return result
