"""Puzzle tree, unlock rules, saved games and their file-backed store."""

from __future__ import annotations

import json
import os
import time
import urllib.parse
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable, Optional

from .errors import InvariantError, LockedPuzzleError, NotAcceptedError
from .metrics import ScoreReport

MAX_PLAYER_NAME_LEN = 32
SAVE_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class PuzzleTree:
    """Puzzles in declaration order plus their prerequisite sets."""

    puzzle_ids: tuple[str, ...]
    prerequisites: dict[str, frozenset[str]]

    def __post_init__(self):
        prereqs = {pid: frozenset(self.prerequisites.get(pid, frozenset()))
                   for pid in self.puzzle_ids}
        object.__setattr__(self, "prerequisites", prereqs)

    def roots(self) -> tuple[str, ...]:
        return tuple(p for p in self.puzzle_ids if not self.prerequisites[p])


def tree_problems(tree: PuzzleTree) -> list[str]:
    """Structural problems: duplicate/dangling ids, no roots, cycles."""
    problems: list[str] = []
    ids = set(tree.puzzle_ids)
    if len(ids) != len(tree.puzzle_ids):
        problems.append("duplicate puzzle ids in tree")
    for pid, prereqs in tree.prerequisites.items():
        for pre in prereqs:
            if pre not in ids:
                problems.append(f"puzzle {pid!r} requires unknown puzzle {pre!r}")
        if pid in prereqs:
            problems.append(f"puzzle {pid!r} requires itself")
    cycle = find_cycle(tree)
    if cycle:
        problems.append("prerequisite cycle: " + " -> ".join(cycle))
    elif not tree.roots():
        problems.append("tree has no root puzzle (every puzzle has prerequisites)")
    return problems


def find_cycle(tree: PuzzleTree) -> Optional[list[str]]:
    """Return one prerequisite cycle as [p0, ..., p0], or None if acyclic."""
    known = set(tree.puzzle_ids)
    visiting: set[str] = set()
    done: set[str] = set()

    def dfs(node: str, path: list[str]) -> Optional[list[str]]:
        visiting.add(node)
        path.append(node)
        for pre in sorted(tree.prerequisites.get(node, frozenset())):
            if pre not in known:
                continue
            if pre in visiting:
                start = path.index(pre)
                return path[start:] + [pre]
            if pre not in done:
                found = dfs(pre, path)
                if found:
                    return found
        visiting.discard(node)
        done.add(node)
        path.pop()
        return None

    for start in tree.puzzle_ids:
        if start not in done:
            found = dfs(start, [])
            if found:
                return found
    return None


def validate_tree(tree: PuzzleTree) -> None:
    problems = tree_problems(tree)
    if problems:
        raise InvariantError("; ".join(problems))


@dataclass(frozen=True)
class CompletionRecord:
    best_composite: int
    completed_at: str  # ISO-8601 UTC
    seq: int  # monotone completion counter within one save


@dataclass(frozen=True)
class SaveGame:
    """One player's persistent state. The name is the save key."""

    player_name: str
    completed: dict[str, CompletionRecord] = field(default_factory=dict)
    active_session: Optional[dict[str, Any]] = None

    def __post_init__(self):
        validate_player_name(self.player_name)

    def best_score(self, puzzle_id: str) -> Optional[int]:
        record = self.completed.get(puzzle_id)
        return record.best_composite if record else None

    def next_seq(self) -> int:
        return max((r.seq for r in self.completed.values()), default=0) + 1


def validate_player_name(name: str) -> None:
    if not isinstance(name, str) or not name.strip():
        raise ValueError("player name must be a non-empty string")
    if len(name) > MAX_PLAYER_NAME_LEN:
        raise ValueError(f"player name may be at most {MAX_PLAYER_NAME_LEN} characters")


def unlocked(tree: PuzzleTree, save: SaveGame) -> set[str]:
    """Puzzles whose prerequisites are all completed (completed ones stay
    listed: they remain replayable)."""
    done = set(save.completed)
    return {pid for pid in tree.puzzle_ids if tree.prerequisites[pid] <= done}


def complete(
    tree: PuzzleTree,
    save: SaveGame,
    puzzle_id: str,
    report: ScoreReport,
    now: Optional[float] = None,
) -> SaveGame:
    """Record an accepted finish; keeps the best composite across replays."""
    if puzzle_id not in tree.prerequisites:
        raise LockedPuzzleError(puzzle_id)
    open_ids = unlocked(tree, save)
    if puzzle_id not in open_ids:
        missing = tuple(sorted(tree.prerequisites[puzzle_id] - set(save.completed)))
        raise LockedPuzzleError(puzzle_id, missing)
    if not report.accepted:
        raise NotAcceptedError(None, ("cannot complete a puzzle with a non-accepted design",))

    stamp = now if now is not None else time.time()
    completed_at = datetime.fromtimestamp(stamp, tz=timezone.utc).isoformat()
    old = save.completed.get(puzzle_id)
    best = report.composite if old is None else max(old.best_composite, report.composite)
    record = CompletionRecord(best_composite=best, completed_at=completed_at, seq=save.next_seq())
    new_completed = dict(save.completed)
    new_completed[puzzle_id] = record
    return replace(save, completed=new_completed, active_session=None)


def resume_point(tree: PuzzleTree, save: SaveGame) -> Optional[str]:
    """Where to drop the player: the in-progress puzzle if one is saved,
    otherwise the most recently unlocked uncompleted puzzle (declaration
    order breaks ties), or None once everything is done."""
    if save.active_session:
        pid = save.active_session.get("puzzle_id")
        if pid in tree.prerequisites:
            return pid
    candidates = [
        pid for pid in tree.puzzle_ids
        if pid in unlocked(tree, save) and pid not in save.completed
    ]
    if not candidates:
        return None

    def ready_seq(pid: str) -> int:
        prereqs = tree.prerequisites[pid]
        if not prereqs:
            return 0
        return max(save.completed[p].seq for p in prereqs)

    best = candidates[0]
    for pid in candidates[1:]:
        if ready_seq(pid) > ready_seq(best):
            best = pid
    return best


def save_problems(tree: PuzzleTree, save: SaveGame) -> list[str]:
    """Consistency checks a persisted save must satisfy against its pack."""
    problems = []
    for pid in save.completed:
        if pid not in tree.prerequisites:
            problems.append(f"completed puzzle {pid!r} is not in the pack")
            continue
        missing = tree.prerequisites[pid] - set(save.completed)
        if missing:
            problems.append(
                f"puzzle {pid!r} completed without prerequisites {sorted(missing)}"
            )
    return problems


# -- serialization and file store -------------------------------------------


def save_to_dict(save: SaveGame) -> dict[str, Any]:
    return {
        "schema_version": SAVE_SCHEMA_VERSION,
        "player_name": save.player_name,
        "completed": {
            pid: {
                "best_composite": rec.best_composite,
                "completed_at": rec.completed_at,
                "seq": rec.seq,
            }
            for pid, rec in sorted(save.completed.items())
        },
        "active_session": save.active_session,
    }


def save_from_dict(data: dict[str, Any]) -> SaveGame:
    if data.get("schema_version") != SAVE_SCHEMA_VERSION:
        raise InvariantError(f"unknown save schema version: {data.get('schema_version')!r}")
    completed = {
        pid: CompletionRecord(
            best_composite=int(rec["best_composite"]),
            completed_at=str(rec["completed_at"]),
            seq=int(rec["seq"]),
        )
        for pid, rec in data.get("completed", {}).items()
    }
    return SaveGame(
        player_name=data["player_name"],
        completed=completed,
        active_session=data.get("active_session"),
    )


class SaveStore:
    """One JSON file per player under a data directory, written atomically."""

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)

    def _path(self, player_name: str) -> Path:
        validate_player_name(player_name)
        return self.data_dir / (urllib.parse.quote(player_name, safe="") + ".json")

    def exists(self, player_name: str) -> bool:
        return self._path(player_name).exists()

    def load(self, player_name: str) -> Optional[SaveGame]:
        path = self._path(player_name)
        if not path.exists():
            return None
        with open(path, encoding="utf-8") as fh:
            return save_from_dict(json.load(fh))

    def store(self, save: SaveGame) -> None:
        path = self._path(save.player_name)
        payload = json.dumps(save_to_dict(save), sort_keys=True, indent=2) + "\n"
        tmp = path.with_name(path.name + f".tmp{os.getpid()}")
        tmp.write_text(payload, encoding="utf-8")
        os.replace(tmp, path)

    def player_names(self) -> list[str]:
        names = []
        for path in sorted(self.data_dir.glob("*.json")):
            names.append(urllib.parse.unquote(path.stem))
        return names
