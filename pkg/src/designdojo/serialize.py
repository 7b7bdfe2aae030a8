"""JSON codecs for the shared wire/file shapes.

The same Design sub-schema is used by pack files, save snapshots, the CLI
score command and the HTTP API. Exact rationals serialize as canonical
"p/q" strings next to a float convenience value; serialization output is
deterministic (sorted keys, sorted collections).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional

from .engine import FeedbackEvent, Session, SoundCue
from .flows import FlowDelta, FlowEdge, FlowGraph, FlowKind, FlowNode, UnresolvedRef
from .metrics import ScoreReport, ScoreWarning
from .model import (
    Association,
    BehaviorSpec,
    ClassBox,
    Design,
    Member,
    MemberKind,
    Move,
    MoveKind,
    make_keywords,
)
from .puzzle import (
    PatternSlot,
    PatternTemplate,
    PuzzleDef,
    ScoreWeights,
    SolutionKind,
    SolutionSpec,
    SolverCaps,
    Thresholds,
)


def parse_rational(value: Any, where: str = "value") -> Fraction:
    """Accept ints, decimal floats and "p/q" / decimal strings, exactly."""
    try:
        if isinstance(value, bool):
            raise ValueError
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, float):
            return Fraction(str(value))
        if isinstance(value, str):
            return Fraction(value)
    except (ValueError, ZeroDivisionError):
        pass
    raise ValueError(f"{where}: not a rational number: {value!r}")


def rational_str(value: Fraction) -> str:
    return str(value)


# -- model ------------------------------------------------------------------


def behavior_to_dict(behavior: BehaviorSpec) -> dict[str, Any]:
    return {
        "calls": list(behavior.calls),
        "reads": list(behavior.reads),
        "writes": list(behavior.writes),
    }


def behavior_from_dict(data: dict[str, Any]) -> BehaviorSpec:
    return BehaviorSpec(
        calls=tuple(data.get("calls", ())),
        reads=tuple(data.get("reads", ())),
        writes=tuple(data.get("writes", ())),
    )


def member_to_dict(member: Member) -> dict[str, Any]:
    out: dict[str, Any] = {
        "id": member.id,
        "kind": member.kind.value,
        "name": member.name,
        "keywords": sorted(member.keywords),
    }
    if not member.behavior.empty:
        out["behavior"] = behavior_to_dict(member.behavior)
    return out


def member_from_dict(data: dict[str, Any]) -> Member:
    return Member(
        id=data["id"],
        kind=MemberKind(data["kind"]),
        name=data["name"],
        keywords=make_keywords(data.get("keywords", ())),
        behavior=behavior_from_dict(data.get("behavior", {})),
    )


def class_to_dict(box: ClassBox) -> dict[str, Any]:
    return {
        "id": box.id,
        "name": box.name,
        "keywords": sorted(box.keywords),
        "position": list(box.position),
        "members": [member_to_dict(m) for m in box.members],
    }


def class_from_dict(data: dict[str, Any]) -> ClassBox:
    position = data.get("position", [0, 0])
    return ClassBox(
        id=data["id"],
        name=data["name"],
        keywords=make_keywords(data.get("keywords", ())),
        members=tuple(member_from_dict(m) for m in data.get("members", ())),
        position=(int(position[0]), int(position[1])),
    )


def design_to_dict(design: Design) -> dict[str, Any]:
    return {
        "classes": [class_to_dict(c) for c in design.classes],
        "associations": sorted([a.a, a.b] for a in design.associations),
        "unplaced": [member_to_dict(m) for m in design.unplaced],
    }


def design_from_dict(data: dict[str, Any]) -> Design:
    return Design(
        classes=tuple(class_from_dict(c) for c in data.get("classes", ())),
        associations=frozenset(
            Association(a, b) for a, b in data.get("associations", ())
        ),
        unplaced=tuple(member_from_dict(m) for m in data.get("unplaced", ())),
    )


def move_to_dict(move: Move) -> dict[str, Any]:
    out: dict[str, Any] = {"kind": move.kind.value}
    if move.member_id is not None:
        out["member_id"] = move.member_id
    if move.class_id is not None:
        out["class_id"] = move.class_id
    if move.other_class_id is not None:
        out["other_class_id"] = move.other_class_id
    if move.name is not None:
        out["name"] = move.name
    if move.keywords:
        out["keywords"] = sorted(move.keywords)
    return out


def move_from_dict(data: dict[str, Any]) -> Move:
    return Move(
        kind=MoveKind(data["kind"]),
        member_id=data.get("member_id"),
        class_id=data.get("class_id"),
        other_class_id=data.get("other_class_id"),
        name=data.get("name"),
        keywords=make_keywords(data.get("keywords", ())),
    )


# -- puzzle configuration -----------------------------------------------------


def weights_to_dict(weights: ScoreWeights) -> dict[str, str]:
    return {
        "cohesion": rational_str(weights.cohesion),
        "coupling": rational_str(weights.coupling),
        "pattern": rational_str(weights.pattern),
    }


def weights_from_dict(data: dict[str, Any]) -> ScoreWeights:
    return ScoreWeights(
        cohesion=parse_rational(data["cohesion"], "weights.cohesion"),
        coupling=parse_rational(data["coupling"], "weights.coupling"),
        pattern=parse_rational(data["pattern"], "weights.pattern"),
    )


def pattern_to_dict(pattern: PatternTemplate) -> dict[str, Any]:
    return {
        "slots": [
            {
                "id": slot.slot_id,
                "members": [
                    {"kind": kind.value, "name": name}
                    for kind, name in slot.required_members
                ],
                "keywords": sorted(slot.required_keywords),
            }
            for slot in pattern.slots
        ],
        "associations": sorted(list(pair) for pair in pattern.slot_associations),
    }


def pattern_from_dict(data: dict[str, Any]) -> PatternTemplate:
    slots = tuple(
        PatternSlot(
            slot_id=slot["id"],
            required_members=tuple(
                (MemberKind(m["kind"]), m["name"]) for m in slot.get("members", ())
            ),
            required_keywords=make_keywords(slot.get("keywords", ())),
        )
        for slot in data.get("slots", ())
    )
    associations = frozenset(tuple(pair) for pair in data.get("associations", ()))
    return PatternTemplate(slots=slots, slot_associations=associations)


def solution_to_dict(spec: SolutionSpec) -> dict[str, Any]:
    out: dict[str, Any] = {"kind": spec.kind.value, "weights": weights_to_dict(spec.weights)}
    if spec.thresholds is not None:
        out["thresholds"] = {
            "min_design_cohesion": rational_str(spec.thresholds.min_design_cohesion),
            "max_avg_cbo": rational_str(spec.thresholds.max_avg_cbo),
        }
    if spec.pattern is not None:
        out["pattern"] = pattern_to_dict(spec.pattern)
    return out


def solution_from_dict(data: dict[str, Any]) -> SolutionSpec:
    kind = SolutionKind(data["kind"])
    thresholds = None
    pattern = None
    if "thresholds" in data:
        raw = data["thresholds"]
        thresholds = Thresholds(
            min_design_cohesion=parse_rational(
                raw["min_design_cohesion"], "thresholds.min_design_cohesion"
            ),
            max_avg_cbo=parse_rational(raw["max_avg_cbo"], "thresholds.max_avg_cbo"),
        )
    if "pattern" in data:
        pattern = pattern_from_dict(data["pattern"])
    return SolutionSpec(
        kind=kind,
        weights=weights_from_dict(data["weights"]),
        thresholds=thresholds,
        pattern=pattern,
    )


def puzzle_to_dict(puzzle: PuzzleDef) -> dict[str, Any]:
    out: dict[str, Any] = {
        "id": puzzle.id,
        "title": puzzle.title,
        "assignment": list(puzzle.assignment),
        "principles": sorted(puzzle.principles),
        "initial": design_to_dict(puzzle.initial),
        "allowed_moves": sorted(k.value for k in puzzle.allowed_moves),
        "class_creation_allowed": puzzle.class_creation_allowed,
        "cbo_warning_threshold": puzzle.cbo_warning_threshold,
        "solver": {
            "max_states": puzzle.solver_caps.max_states,
            "max_depth": puzzle.solver_caps.max_depth,
        },
        "min_solutions": puzzle.min_solutions,
        "min_score_spread": puzzle.min_score_spread,
        "solutions": [solution_to_dict(s) for s in puzzle.solutions],
    }
    if puzzle.max_classes is not None:
        out["max_classes"] = puzzle.max_classes
    return out


def puzzle_from_dict(data: dict[str, Any]) -> PuzzleDef:
    solver = data.get("solver", {})
    caps = SolverCaps(
        max_states=int(solver.get("max_states", SolverCaps().max_states)),
        max_depth=int(solver.get("max_depth", SolverCaps().max_depth)),
    )
    return PuzzleDef(
        id=data["id"],
        title=data["title"],
        assignment=tuple(data["assignment"]),
        principles=frozenset(data.get("principles", ())),
        initial=design_from_dict(data["initial"]),
        allowed_moves=frozenset(MoveKind(k) for k in data["allowed_moves"]),
        solutions=tuple(solution_from_dict(s) for s in data["solutions"]),
        class_creation_allowed=bool(data.get("class_creation_allowed", False)),
        cbo_warning_threshold=int(data.get("cbo_warning_threshold", 4)),
        max_classes=data.get("max_classes"),
        solver_caps=caps,
        min_solutions=int(data.get("min_solutions", 1)),
        min_score_spread=int(data.get("min_score_spread", 0)),
    )


# -- reports and feedback -----------------------------------------------------


def warning_to_dict(warning: ScoreWarning) -> dict[str, str]:
    return {"class_id": warning.class_id, "code": warning.code, "message": warning.message}


def report_to_dict(report: ScoreReport) -> dict[str, Any]:
    return {
        "accepted": report.accepted,
        "composite": report.composite,
        "avg_cbo": float(report.avg_cbo),
        "design_cohesion": float(report.design_cohesion),
        "pattern_score": float(report.pattern_score),
        "coupling_term": float(report.coupling_term),
        "per_class_cbo": dict(sorted(report.per_class_cbo.items())),
        "per_class_cohesion": {
            cid: float(value) for cid, value in sorted(report.per_class_cohesion.items())
        },
        "spec_kind": report.spec_kind.value,
        "spec_index": report.spec_index,
        "unplaced_count": report.unplaced_count,
        "warnings": [warning_to_dict(w) for w in report.warnings],
        "exact": {
            "avg_cbo": rational_str(report.avg_cbo),
            "design_cohesion": rational_str(report.design_cohesion),
            "pattern_score": rational_str(report.pattern_score),
            "coupling_term": rational_str(report.coupling_term),
            "per_class_cohesion": {
                cid: rational_str(value)
                for cid, value in sorted(report.per_class_cohesion.items())
            },
        },
    }


def flow_node_to_dict(node: FlowNode) -> dict[str, str]:
    return {"class_id": node.class_id, "member_id": node.member_id}


def flow_edge_to_dict(edge: FlowEdge) -> dict[str, Any]:
    return {
        "src": flow_node_to_dict(edge.src),
        "dst": flow_node_to_dict(edge.dst),
        "kind": edge.kind.value,
        "same_class": edge.same_class,
    }


def unresolved_to_dict(ref: UnresolvedRef) -> dict[str, str]:
    return {
        "src": f"{ref.src.class_id}.{ref.src.member_id}",
        "kind": ref.kind.value,
        "name": ref.name,
    }


def _edge_sort_key(edge: FlowEdge):
    return (edge.src.label(), edge.dst.label(), edge.kind.value)


def flow_graph_to_dict(graph: FlowGraph) -> dict[str, Any]:
    return {
        "nodes": [
            flow_node_to_dict(n)
            for n in sorted(graph.nodes, key=lambda n: (n.class_id, n.member_id))
        ],
        "control_edges": [
            flow_edge_to_dict(e) for e in sorted(graph.control_edges, key=_edge_sort_key)
        ],
        "data_edges": [
            flow_edge_to_dict(e) for e in sorted(graph.data_edges, key=_edge_sort_key)
        ],
        "unresolved": [
            unresolved_to_dict(u)
            for u in sorted(graph.unresolved, key=lambda u: (u.src.label(), u.kind.value, u.name))
        ],
    }


def flow_delta_to_dict(delta: FlowDelta) -> dict[str, Any]:
    return {
        "added_edges": [
            flow_edge_to_dict(e) for e in sorted(delta.added_edges, key=_edge_sort_key)
        ],
        "removed_edges": [
            flow_edge_to_dict(e) for e in sorted(delta.removed_edges, key=_edge_sort_key)
        ],
        "added_unresolved": [
            unresolved_to_dict(u)
            for u in sorted(delta.added_unresolved, key=lambda u: (u.src.label(), u.kind.value, u.name))
        ],
        "removed_unresolved": [
            unresolved_to_dict(u)
            for u in sorted(delta.removed_unresolved, key=lambda u: (u.src.label(), u.kind.value, u.name))
        ],
    }


def feedback_to_dict(event: FeedbackEvent) -> dict[str, Any]:
    out: dict[str, Any] = {
        "report": report_to_dict(event.report),
        "progress": float(event.progress),
        "progress_exact": rational_str(event.progress),
        "score_delta": event.score_delta,
        "sound_cue": event.sound_cue.value if event.sound_cue else None,
        "warnings": [warning_to_dict(w) for w in event.warnings],
        "flow_delta": flow_delta_to_dict(event.flow_delta) if event.flow_delta else None,
        "message": event.message,
    }
    if event.assignment is not None:
        out["assignment"] = list(event.assignment)
    return out


def session_to_dict(session: Session) -> dict[str, Any]:
    """Snapshot used for the persisted in-progress session."""
    return {
        "puzzle_id": session.puzzle.id,
        "moves": [move_to_dict(m) for m in session.move_log],
        "finished": session.finished,
    }


def dumps_canonical(payload: Any) -> str:
    """Stable JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
