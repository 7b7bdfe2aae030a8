"""Game sessions: move legality, direct feedback, completion.

Illegal moves are not exceptions here: every move produces exactly one
FeedbackEvent, and a rejected move produces one with the error sound cue and
an unchanged session, so the UI can keep its every-action-makes-a-sound
contract.
"""

from __future__ import annotations

import enum
import uuid
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from .errors import DesignDojoError, InvalidPuzzleError, NotAcceptedError
from .flows import FlowDelta, derive_flows, flow_delta
from .metrics import ScoreReport, ScoreWarning, evaluate, progress, score
from .model import Design, Move, MoveKind, apply_structural_edit, validate_design
from .puzzle import PuzzleDef, puzzle_problems


class SoundCue(enum.Enum):
    PLACE = "place"
    REMOVE = "remove"
    CONNECT = "connect"
    ERROR = "error"
    LEVEL_COMPLETE = "level_complete"


_MOVE_CUES = {
    MoveKind.PLACE_MEMBER: SoundCue.PLACE,
    MoveKind.CREATE_CLASS: SoundCue.PLACE,
    MoveKind.REMOVE_MEMBER: SoundCue.REMOVE,
    MoveKind.DELETE_CLASS: SoundCue.REMOVE,
    MoveKind.DISCONNECT: SoundCue.REMOVE,
    MoveKind.CONNECT: SoundCue.CONNECT,
}


@dataclass(frozen=True)
class FeedbackEvent:
    """The per-action packet the UI consumes."""

    report: ScoreReport
    progress: Fraction
    score_delta: int
    sound_cue: Optional[SoundCue]
    warnings: tuple[ScoreWarning, ...]
    flow_delta: Optional[FlowDelta] = None
    message: Optional[str] = None
    assignment: Optional[tuple[str, ...]] = None

    @property
    def rejected(self) -> bool:
        return self.sound_cue is SoundCue.ERROR


@dataclass(frozen=True)
class Session:
    """Current state of one play-through; reproducible from the move log."""

    id: str
    puzzle: PuzzleDef
    design: Design
    move_log: tuple[Move, ...]
    last_report: ScoreReport
    finished: bool = False


def start_session(puzzle: PuzzleDef, session_id: Optional[str] = None) -> tuple[Session, FeedbackEvent]:
    """Open a session on the puzzle's initial fragment.

    The initial event carries the assignment text with the starting score
    and progress. A pre-solved initial design still needs an explicit
    finish() before the session counts as done.
    """
    problems = puzzle_problems(puzzle)
    if problems:
        raise InvalidPuzzleError(f"puzzle {puzzle.id!r}: " + "; ".join(problems))
    report = evaluate(puzzle.initial, puzzle)
    session = Session(
        id=session_id or uuid.uuid4().hex,
        puzzle=puzzle,
        design=puzzle.initial,
        move_log=(),
        last_report=report,
    )
    event = FeedbackEvent(
        report=report,
        progress=progress(puzzle.initial, puzzle),
        score_delta=0,
        sound_cue=None,
        warnings=report.warnings,
        assignment=puzzle.assignment,
    )
    return session, event


def check_move(puzzle: PuzzleDef, design: Design, move: Move) -> Optional[str]:
    """Why a move is not playable right now, or None if it is.

    Only covers puzzle-rule gates; structural applicability (unknown ids,
    duplicate placement) is reported by the edit itself.
    """
    if move.kind not in puzzle.allowed_moves:
        return f"move kind {move.kind.value!r} is not allowed in this puzzle"
    if move.kind in (MoveKind.CREATE_CLASS, MoveKind.DELETE_CLASS):
        if not puzzle.class_creation_allowed:
            return "this puzzle does not allow creating or deleting classes"
    if move.kind is MoveKind.CREATE_CLASS:
        if not move.name or not move.name.strip():
            return "a new class needs a name"
        if puzzle.max_classes is not None and len(design.classes) >= puzzle.max_classes:
            return f"the board is limited to {puzzle.max_classes} classes"
        if puzzle.requires_cohesion() and not move.keywords:
            return "a new class needs at least one keyword in this puzzle"
    if move.kind is MoveKind.DELETE_CLASS and len(design.classes) <= 1:
        return "the design must keep at least one class"
    return None


def play_move(session: Session, move: Move) -> tuple[Session, FeedbackEvent]:
    """Apply one move; rejected moves leave the session untouched."""
    if session.finished:
        return session, _error_event(session, "the puzzle is already finished")

    reason = check_move(session.puzzle, session.design, move)
    if reason is not None:
        return session, _error_event(session, reason)

    try:
        new_design = apply_structural_edit(session.design, move)
        new_report = evaluate(new_design, session.puzzle)
    except DesignDojoError as exc:
        return session, _error_event(session, str(exc))

    violations = validate_design(new_design)
    if violations:  # edits preserve well-formedness; guard against content bugs
        return session, _error_event(session, violations[0].message)

    delta = None
    if move.kind in (MoveKind.PLACE_MEMBER, MoveKind.REMOVE_MEMBER, MoveKind.DELETE_CLASS):
        delta = flow_delta(derive_flows(session.design), derive_flows(new_design))

    new_session = replace(
        session,
        design=new_design,
        move_log=session.move_log + (move,),
        last_report=new_report,
    )
    event = FeedbackEvent(
        report=new_report,
        progress=progress(new_design, session.puzzle),
        score_delta=new_report.composite - session.last_report.composite,
        sound_cue=_MOVE_CUES[move.kind],
        warnings=new_report.warnings,
        flow_delta=delta,
    )
    return new_session, event


def _error_event(session: Session, message: str) -> FeedbackEvent:
    return FeedbackEvent(
        report=session.last_report,
        progress=progress(session.design, session.puzzle),
        score_delta=0,
        sound_cue=SoundCue.ERROR,
        warnings=session.last_report.warnings,
        message=message,
    )


def snapshot_event(session: Session) -> FeedbackEvent:
    """Neutral view of the current state (used when resuming a session)."""
    return FeedbackEvent(
        report=session.last_report,
        progress=progress(session.design, session.puzzle),
        score_delta=0,
        sound_cue=None,
        warnings=session.last_report.warnings,
        assignment=session.puzzle.assignment,
    )


def finish(session: Session) -> tuple[Session, FeedbackEvent]:
    """Commit the current design if some solution spec accepts it.

    Raises NotAcceptedError (carrying progress and the per-spec failures)
    otherwise. Finishing twice is idempotent.
    """
    report = session.last_report
    if not report.accepted:
        prog = progress(session.design, session.puzzle)
        failures = []
        for i, spec in enumerate(session.puzzle.solutions):
            spec_report = score(
                session.design,
                spec,
                cbo_warning_threshold=session.puzzle.cbo_warning_threshold,
                spec_index=i,
                strict_cohesion=False,
            )
            for why in spec_report.failure_reasons(spec):
                failures.append(f"solution {i + 1}: {why}")
        raise NotAcceptedError(prog, tuple(failures))

    done = session if session.finished else replace(session, finished=True)
    event = FeedbackEvent(
        report=report,
        progress=Fraction(1),
        score_delta=0,
        sound_cue=SoundCue.LEVEL_COMPLETE,
        warnings=report.warnings,
    )
    return done, event


def replay(puzzle: PuzzleDef, moves: list[Move] | tuple[Move, ...]) -> Session:
    """Rebuild a session by replaying a move log from the initial design."""
    session, _ = start_session(puzzle)
    for move in moves:
        session, _ = play_move(session, move)
    return session


def legal_moves(puzzle: PuzzleDef, design: Design) -> list[Move]:
    """Every currently playable move, in a deterministic order."""
    moves: list[Move] = []
    class_ids = [c.id for c in design.classes]

    if MoveKind.PLACE_MEMBER in puzzle.allowed_moves:
        for member in design.unplaced:
            for cid in class_ids:
                moves.append(Move.place(member.id, cid))
    if MoveKind.REMOVE_MEMBER in puzzle.allowed_moves:
        for _box, member in design.placed_members():
            moves.append(Move.remove(member.id))
    if MoveKind.CONNECT in puzzle.allowed_moves:
        for i, a in enumerate(class_ids):
            for b in class_ids[i + 1:]:
                if b not in design.adjacent(a):
                    moves.append(Move.connect(a, b))
    if MoveKind.DISCONNECT in puzzle.allowed_moves:
        for assoc in sorted(design.associations, key=lambda x: (x.a, x.b)):
            moves.append(Move.disconnect(assoc.a, assoc.b))
    if MoveKind.CREATE_CLASS in puzzle.allowed_moves and puzzle.class_creation_allowed:
        if puzzle.max_classes is None or len(design.classes) < puzzle.max_classes:
            for keywords in candidate_keyword_sets(puzzle):
                name = "New" + "".join(w.capitalize() for w in sorted(keywords))
                moves.append(Move(MoveKind.CREATE_CLASS, name=name or "NewClass", keywords=keywords))
    if MoveKind.DELETE_CLASS in puzzle.allowed_moves and puzzle.class_creation_allowed:
        if len(design.classes) > 1:
            for cid in class_ids:
                moves.append(Move.delete_class(cid))

    return [m for m in moves if check_move(puzzle, design, m) is None]


def candidate_keyword_sets(puzzle: PuzzleDef) -> list[frozenset[str]]:
    """Keyword sets worth giving a created class: the finite move alphabet
    the solver (and hint systems) use for CreateClass."""
    candidates: set[frozenset[str]] = set()
    for spec in puzzle.solutions:
        if spec.pattern is not None:
            for slot in spec.pattern.slots:
                if slot.required_keywords:
                    candidates.add(slot.required_keywords)
    for box in puzzle.initial.classes:
        if box.keywords:
            candidates.add(box.keywords)
    for member in list(puzzle.initial.unplaced) + [
        m for c in puzzle.initial.classes for m in c.members
    ]:
        if member.keywords:
            candidates.add(member.keywords)
    if not puzzle.requires_cohesion():
        candidates.add(frozenset())
    return sorted(candidates, key=lambda s: (len(s), tuple(sorted(s))))
