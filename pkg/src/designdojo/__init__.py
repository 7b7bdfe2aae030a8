"""designdojo: a headless engine for class-diagram design puzzles.

Players arrange attributes and methods into class boxes, wire
associations, and get scored on cohesion, coupling, and pattern
conformance.  The package exposes the scoring metrics, a move engine
with deterministic replay, data/control-flow derivation, a level tree
with per-player saves, a brute-force solver for certifying puzzle
packs, and an HTTP service plus CLI on top.
"""
from .engine import FeedbackEvent, Session, play_move, replay, start_session
from .errors import DesignDojoError
from .metrics import ScoreReport, avg_cbo, design_cohesion, evaluate, pattern_match, progress, score
from .model import Association, BehaviorSpec, ClassBox, Design, Member, MemberKind, Move, MoveKind
from .packio import PuzzlePack, load_bundled_pack, load_pack
from .progression import PuzzleTree, SaveGame, SaveStore, unlocked
from .puzzle import PatternSlot, PatternTemplate, PuzzleDef, ScoreWeights, SolutionSpec, Thresholds
from .solver import enumerate_solutions

__version__ = "0.1.0"

__all__ = [
    "Association",
    "BehaviorSpec",
    "ClassBox",
    "Design",
    "DesignDojoError",
    "FeedbackEvent",
    "Member",
    "MemberKind",
    "Move",
    "MoveKind",
    "PatternSlot",
    "PatternTemplate",
    "PuzzleDef",
    "PuzzlePack",
    "PuzzleTree",
    "SaveGame",
    "SaveStore",
    "ScoreReport",
    "ScoreWeights",
    "Session",
    "SolutionSpec",
    "Thresholds",
    "avg_cbo",
    "design_cohesion",
    "enumerate_solutions",
    "evaluate",
    "load_bundled_pack",
    "load_pack",
    "pattern_match",
    "play_move",
    "progress",
    "replay",
    "score",
    "start_session",
    "unlocked",
]
