"""Data/control-flow derivation from declared method behavior.

Flows come from resolving each method's symbolic call/read/write names
against the members currently placed on the board: calls resolve to placed
methods (control edges), reads and writes to placed attributes (data edges).
A name that matches several placed members produces one edge per match, so
ambiguity stays visible. Unmatched names are reported as unresolved, not
errors. Board positions never matter; placement matters only through the
intra-class / inter-class tag.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .model import Design, MemberKind


class FlowKind(enum.Enum):
    CALL = "call"
    READ = "read"
    WRITE = "write"


@dataclass(frozen=True)
class FlowNode:
    class_id: str
    member_id: str

    def label(self) -> str:
        return f"{self.class_id}.{self.member_id}"


@dataclass(frozen=True)
class FlowEdge:
    src: FlowNode
    dst: FlowNode
    kind: FlowKind

    @property
    def same_class(self) -> bool:
        return self.src.class_id == self.dst.class_id

    @property
    def is_control(self) -> bool:
        return self.kind is FlowKind.CALL


@dataclass(frozen=True)
class UnresolvedRef:
    """A declared reference whose target is not placed (or does not exist)."""

    src: FlowNode
    kind: FlowKind
    name: str


@dataclass(frozen=True)
class FlowGraph:
    nodes: frozenset[FlowNode]
    edges: frozenset[FlowEdge]
    unresolved: frozenset[UnresolvedRef]

    @property
    def control_edges(self) -> frozenset[FlowEdge]:
        return frozenset(e for e in self.edges if e.kind is FlowKind.CALL)

    @property
    def data_edges(self) -> frozenset[FlowEdge]:
        return frozenset(e for e in self.edges if e.kind is not FlowKind.CALL)

    @property
    def unresolved_calls(self) -> frozenset[UnresolvedRef]:
        return frozenset(u for u in self.unresolved if u.kind is FlowKind.CALL)


def derive_flows(design: Design) -> FlowGraph:
    """Resolve every placed method's behavior against current placement."""
    placed = design.placed_members()
    nodes = frozenset(FlowNode(box.id, member.id) for box, member in placed)

    methods_by_name: dict[str, list[FlowNode]] = {}
    attrs_by_name: dict[str, list[FlowNode]] = {}
    for box, member in placed:
        index = methods_by_name if member.kind is MemberKind.METHOD else attrs_by_name
        index.setdefault(member.name, []).append(FlowNode(box.id, member.id))

    edges: set[FlowEdge] = set()
    unresolved: set[UnresolvedRef] = set()
    for box, member in placed:
        if member.kind is not MemberKind.METHOD:
            continue
        src = FlowNode(box.id, member.id)
        for kind, names, index in (
            (FlowKind.CALL, member.behavior.calls, methods_by_name),
            (FlowKind.READ, member.behavior.reads, attrs_by_name),
            (FlowKind.WRITE, member.behavior.writes, attrs_by_name),
        ):
            for name in names:
                targets = index.get(name)
                if not targets:
                    unresolved.add(UnresolvedRef(src, kind, name))
                else:
                    for dst in targets:
                        edges.add(FlowEdge(src, dst, kind))

    return FlowGraph(nodes=nodes, edges=frozenset(edges), unresolved=frozenset(unresolved))


@dataclass(frozen=True)
class FlowDelta:
    added_edges: frozenset[FlowEdge]
    removed_edges: frozenset[FlowEdge]
    added_unresolved: frozenset[UnresolvedRef]
    removed_unresolved: frozenset[UnresolvedRef]

    @property
    def empty(self) -> bool:
        return not (
            self.added_edges
            or self.removed_edges
            or self.added_unresolved
            or self.removed_unresolved
        )


def flow_delta(before: FlowGraph, after: FlowGraph) -> FlowDelta:
    """Edge and unresolved-set differences between two flow graphs."""
    return FlowDelta(
        added_edges=after.edges - before.edges,
        removed_edges=before.edges - after.edges,
        added_unresolved=after.unresolved - before.unresolved,
        removed_unresolved=before.unresolved - after.unresolved,
    )


def to_dot(graph: FlowGraph, design: Design) -> str:
    """Render the flow graph as deterministic DOT text.

    Members cluster inside their class; control edges are solid, data edges
    dashed (writes get a distinct arrowhead so the tag survives rendering).
    """
    lines = ["digraph flows {", "  rankdir=LR;", "  node [shape=box];"]
    for box in design.classes:
        lines.append(f'  subgraph "cluster_{box.id}" {{')
        lines.append(f'    label="{box.name}";')
        for member in box.members:
            node = FlowNode(box.id, member.id)
            lines.append(f'    "{node.label()}" [label="{member.name}"];')
        lines.append("  }")
    for edge in sorted(
        graph.edges, key=lambda e: (e.src.label(), e.dst.label(), e.kind.value)
    ):
        attrs = ['style=solid'] if edge.is_control else ['style=dashed']
        attrs.append(f'kind="{edge.kind.value}"')
        if edge.kind is FlowKind.WRITE:
            attrs.append("arrowhead=diamond")
        lines.append(
            f'  "{edge.src.label()}" -> "{edge.dst.label()}" [{", ".join(attrs)}];'
        )
    for ref in sorted(graph.unresolved, key=lambda u: (u.src.label(), u.kind.value, u.name)):
        ghost = f"unresolved:{ref.name}"
        lines.append(f'  "{ghost}" [label="{ref.name}?", style=dotted];')
        lines.append(
            f'  "{ref.src.label()}" -> "{ghost}" [style=dotted, kind="{ref.kind.value}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
