"""Puzzle pack loading, validation, and certification.

A pack is a single JSON document: a set of puzzles plus the prerequisite
tree that orders them.  Loading is strict -- malformed JSON raises
ParseError, schema violations raise SchemaError, and semantic problems
(bad tree, bad puzzle definitions) raise InvariantError.  Certification
additionally runs the solver over every puzzle to prove solvability.
"""
from __future__ import annotations

import importlib.resources
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

import jsonschema

from .errors import InvariantError, ParseError, SchemaError
from .progression import PuzzleTree, tree_problems
from .puzzle import PuzzleDef, puzzle_problems
from .serialize import dumps_canonical, puzzle_from_dict, puzzle_to_dict
from .solver import enumerate_solutions

PACK_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class FlowNote:
    """Authored annotation attached to a flow edge of some puzzle."""

    puzzle: str
    src: str  # "class.member" label
    dst: str
    note: str


@dataclass(frozen=True)
class PuzzlePack:
    id: str
    title: str
    version: str
    puzzles: tuple[PuzzleDef, ...]
    tree: PuzzleTree
    flow_notes: tuple[FlowNote, ...] = ()
    metadata: dict = field(default_factory=dict)

    def puzzle_by_id(self, puzzle_id: str) -> PuzzleDef:
        for p in self.puzzles:
            if p.id == puzzle_id:
                return p
        raise KeyError(puzzle_id)

    def has_puzzle(self, puzzle_id: str) -> bool:
        return any(p.id == puzzle_id for p in self.puzzles)


def _load_schema() -> dict:
    text = (
        importlib.resources.files("designdojo")
        .joinpath("schemas/pack.schema.v1.json")
        .read_text(encoding="utf-8")
    )
    return json.loads(text)


_SCHEMA = _load_schema()


def pack_to_dict(pack: PuzzlePack) -> dict:
    out: dict = {
        "schema_version": PACK_SCHEMA_VERSION,
        "id": pack.id,
        "title": pack.title,
        "version": pack.version,
        "puzzles": [puzzle_to_dict(p) for p in pack.puzzles],
        "tree": {
            "prerequisites": {
                pid: sorted(pack.tree.prerequisites.get(pid, frozenset()))
                for pid in pack.tree.puzzle_ids
            }
        },
    }
    if pack.flow_notes:
        out["flow_notes"] = [
            {"puzzle": n.puzzle, "src": n.src, "dst": n.dst, "note": n.note}
            for n in pack.flow_notes
        ]
    if pack.metadata:
        out["metadata"] = pack.metadata
    return out


def pack_from_dict(data: dict) -> PuzzlePack:
    """Build a pack from an already schema-valid dict.

    Raises InvariantError on semantic problems the schema cannot express.
    """
    if data.get("schema_version") != PACK_SCHEMA_VERSION:
        raise SchemaError(
            f"unknown pack schema version: {data.get('schema_version')!r}", path="schema_version"
        )
    puzzles = tuple(puzzle_from_dict(p) for p in data["puzzles"])
    prereqs = data["tree"]["prerequisites"]
    known = {p.id for p in puzzles}
    strays = sorted(set(prereqs) - known)
    if strays:
        raise InvariantError(
            f"tree lists prerequisites for unknown puzzle(s): {', '.join(strays)}"
        )
    tree = PuzzleTree(
        puzzle_ids=tuple(p.id for p in puzzles),
        prerequisites={k: frozenset(v) for k, v in prereqs.items()},
    )
    notes = tuple(
        FlowNote(puzzle=n["puzzle"], src=n["src"], dst=n["dst"], note=n["note"])
        for n in data.get("flow_notes", ())
    )
    pack = PuzzlePack(
        id=data["id"],
        title=data["title"],
        version=data["version"],
        puzzles=puzzles,
        tree=tree,
        flow_notes=notes,
        metadata=data.get("metadata", {}),
    )
    problems = validate_pack(pack)
    if problems:
        raise InvariantError("; ".join(problems))
    return pack


def validate_pack(pack: PuzzlePack, certify: bool = False) -> list[str]:
    """Collect semantic problems.  Empty list means the pack is sound.

    With certify=True the solver is run over every puzzle; this is slow
    but proves each puzzle admits at least `min_solutions` distinct
    accepted designs with the required score spread.
    """
    problems: list[str] = []
    seen: set[str] = set()
    for p in pack.puzzles:
        if p.id in seen:
            problems.append(f"duplicate puzzle id {p.id!r}")
        seen.add(p.id)
        problems.extend(f"{p.id}: {msg}" for msg in puzzle_problems(p))
    problems.extend(tree_problems(pack.tree))
    known = {p.id for p in pack.puzzles}
    for n in pack.flow_notes:
        if n.puzzle not in known:
            problems.append(f"flow note references unknown puzzle {n.puzzle!r}")
    if certify and not problems:
        problems.extend(certify_pack(pack))
    return problems


def certify_pack(pack: PuzzlePack) -> list[str]:
    """Run the solver over every puzzle; report solvability failures."""
    problems: list[str] = []
    for p in pack.puzzles:
        search = enumerate_solutions(p)
        if not search.exhausted and not search.solutions:
            problems.append(
                f"{p.id}: search hit {search.cap_hit} cap before finding a solution"
            )
            continue
        if len(search.solutions) < p.min_solutions:
            problems.append(
                f"{p.id}: found {len(search.solutions)} accepted designs, "
                f"requires {p.min_solutions}"
            )
            continue
        if p.min_score_spread > 0 and search.score_spread < p.min_score_spread:
            problems.append(
                f"{p.id}: score spread {search.score_spread} below required "
                f"{p.min_score_spread}"
            )
    return problems


def _parse_json(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc), line=exc.lineno, column=exc.colno) from exc


def _check_schema(data: dict) -> None:
    validator = jsonschema.Draft202012Validator(_SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        path = "/".join(str(p) for p in first.absolute_path) or "(root)"
        raise SchemaError(first.message, path=path)


def load_pack_text(text: str, certify: bool = False) -> PuzzlePack:
    data = _parse_json(text)
    if not isinstance(data, dict):
        raise SchemaError("pack document must be a JSON object", path="(root)")
    _check_schema(data)
    pack = pack_from_dict(data)
    if certify:
        problems = certify_pack(pack)
        if problems:
            raise InvariantError("; ".join(problems))
    return pack


def load_pack(path: Union[str, Path], certify: bool = False) -> PuzzlePack:
    text = Path(path).read_text(encoding="utf-8")
    return load_pack_text(text, certify=certify)


def load_bundled_pack(name: str = "core") -> PuzzlePack:
    text = (
        importlib.resources.files("designdojo")
        .joinpath(f"packs/{name}.json")
        .read_text(encoding="utf-8")
    )
    return load_pack_text(text)


def dump_pack(pack: PuzzlePack) -> str:
    return dumps_canonical(pack_to_dict(pack))
