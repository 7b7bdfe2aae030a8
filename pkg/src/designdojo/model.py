"""Domain model: class boxes, members, associations, designs, moves.

Everything here is an immutable value. Structural edits return new designs,
so sessions can be replayed and compared by plain equality. Board positions
are carried along for the UI but never feed into metrics or solution checks.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

from .errors import (
    DuplicatePlacementError,
    IllegalMoveError,
    IllegalSelfAssociationError,
    UnknownIdError,
)


def make_keywords(words: Iterable[str]) -> frozenset[str]:
    """Normalize an iterable of keywords into a canonical keyword set.

    Keywords are case-folded to lowercase; duplicates collapse. Empty or
    whitespace-containing tokens are rejected.
    """
    out = set()
    for word in words:
        if not isinstance(word, str) or not word:
            raise ValueError(f"keyword must be a non-empty string, got {word!r}")
        folded = word.lower()
        if any(ch.isspace() for ch in folded):
            raise ValueError(f"keyword may not contain whitespace: {word!r}")
        out.add(folded)
    return frozenset(out)


class MemberKind(enum.Enum):
    ATTRIBUTE = "attribute"
    METHOD = "method"


def _dedupe(names: Iterable[str]) -> tuple[str, ...]:
    seen: list[str] = []
    for n in names:
        if n not in seen:
            seen.append(n)
    return tuple(seen)


@dataclass(frozen=True)
class BehaviorSpec:
    """Symbolic behavior of a method: names it calls, reads and writes.

    References are resolved by name against the current design when flows are
    derived, so they are independent of where anything is placed. Repeated
    references collapse to one.
    """

    calls: tuple[str, ...] = ()
    reads: tuple[str, ...] = ()
    writes: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "calls", _dedupe(self.calls))
        object.__setattr__(self, "reads", _dedupe(self.reads))
        object.__setattr__(self, "writes", _dedupe(self.writes))

    @property
    def empty(self) -> bool:
        return not (self.calls or self.reads or self.writes)


EMPTY_BEHAVIOR = BehaviorSpec()


@dataclass(frozen=True)
class Member:
    """An attribute or method. Identity is the opaque id, not the name."""

    id: str
    kind: MemberKind
    name: str
    keywords: frozenset[str] = frozenset()
    behavior: BehaviorSpec = EMPTY_BEHAVIOR

    def __post_init__(self):
        if self.kind is MemberKind.ATTRIBUTE and not self.behavior.empty:
            raise ValueError(f"attribute {self.id!r} must have empty behavior")


@dataclass(frozen=True)
class ClassBox:
    """A class on the board: header keywords plus an ordered member list."""

    id: str
    name: str
    keywords: frozenset[str] = frozenset()
    members: tuple[Member, ...] = ()
    position: tuple[int, int] = (0, 0)

    def member_ids(self) -> tuple[str, ...]:
        return tuple(m.id for m in self.members)


@dataclass(frozen=True)
class Association:
    """Undirected, simple edge between two classes.

    Endpoints are canonically ordered so (a, b) == (b, a); a self-edge is
    rejected at construction.
    """

    a: str
    b: str

    def __post_init__(self):
        if self.a == self.b:
            raise IllegalSelfAssociationError(self.a)
        if self.b < self.a:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)

    def touches(self, class_id: str) -> bool:
        return class_id == self.a or class_id == self.b

    def other(self, class_id: str) -> str:
        return self.b if class_id == self.a else self.a


@dataclass(frozen=True)
class Design:
    """A full board state: placed classes, associations and the toolbox.

    Classes and unplaced members are stored sorted by id so two designs with
    the same content compare equal regardless of construction order.
    """

    classes: tuple[ClassBox, ...] = ()
    associations: frozenset[Association] = frozenset()
    unplaced: tuple[Member, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "classes", tuple(sorted(self.classes, key=lambda c: c.id))
        )
        object.__setattr__(
            self, "unplaced", tuple(sorted(self.unplaced, key=lambda m: m.id))
        )
        if not isinstance(self.associations, frozenset):
            object.__setattr__(self, "associations", frozenset(self.associations))

    # -- lookups ---------------------------------------------------------

    def class_by_id(self, class_id: str) -> ClassBox:
        for c in self.classes:
            if c.id == class_id:
                return c
        raise UnknownIdError("class", class_id)

    def has_class(self, class_id: str) -> bool:
        return any(c.id == class_id for c in self.classes)

    def find_member(self, member_id: str) -> tuple[Optional[str], Member]:
        """Return (class id or None if unplaced, member)."""
        for c in self.classes:
            for m in c.members:
                if m.id == member_id:
                    return c.id, m
        for m in self.unplaced:
            if m.id == member_id:
                return None, m
        raise UnknownIdError("member", member_id)

    def placed_members(self) -> list[tuple[ClassBox, Member]]:
        return [(c, m) for c in self.classes for m in c.members]

    def all_members(self) -> list[Member]:
        return [m for _, m in self.placed_members()] + list(self.unplaced)

    def placement_map(self) -> dict[str, Optional[str]]:
        """member id -> class id (None for toolbox members)."""
        out: dict[str, Optional[str]] = {}
        for c in self.classes:
            for m in c.members:
                out[m.id] = c.id
        for m in self.unplaced:
            out[m.id] = None
        return out

    def adjacent(self, class_id: str) -> frozenset[str]:
        return frozenset(
            assoc.other(class_id) for assoc in self.associations if assoc.touches(class_id)
        )


@dataclass(frozen=True)
class Violation:
    """One structural problem found in a design, naming the offending id."""

    code: str
    subject_id: str
    message: str


def validate_design(design: Design) -> list[Violation]:
    """Check all structural invariants; an empty list means well-formed."""
    violations: list[Violation] = []
    class_ids: set[str] = set()
    for c in design.classes:
        if c.id in class_ids:
            violations.append(
                Violation("duplicate_class_id", c.id, f"class id {c.id!r} appears twice")
            )
        class_ids.add(c.id)

    seen_members: dict[str, str] = {}
    for c in design.classes:
        for m in c.members:
            where = f"class {c.id!r}"
            if m.id in seen_members:
                violations.append(
                    Violation(
                        "duplicate_placement",
                        m.id,
                        f"member {m.id!r} in {where} and in {seen_members[m.id]}",
                    )
                )
            else:
                seen_members[m.id] = where
    for m in design.unplaced:
        if m.id in seen_members:
            violations.append(
                Violation(
                    "duplicate_placement",
                    m.id,
                    f"member {m.id!r} unplaced and in {seen_members[m.id]}",
                )
            )
        else:
            seen_members[m.id] = "toolbox"

    for assoc in design.associations:
        for endpoint in (assoc.a, assoc.b):
            if endpoint not in class_ids:
                violations.append(
                    Violation(
                        "dangling_association",
                        endpoint,
                        f"association ({assoc.a!r}, {assoc.b!r}) references "
                        f"missing class {endpoint!r}",
                    )
                )
    return violations


# -- moves ---------------------------------------------------------------


class MoveKind(enum.Enum):
    PLACE_MEMBER = "place_member"
    REMOVE_MEMBER = "remove_member"
    CONNECT = "connect"
    DISCONNECT = "disconnect"
    CREATE_CLASS = "create_class"
    DELETE_CLASS = "delete_class"


@dataclass(frozen=True)
class Move:
    """One player action. Only the fields relevant to the kind are set."""

    kind: MoveKind
    member_id: Optional[str] = None
    class_id: Optional[str] = None
    other_class_id: Optional[str] = None
    name: Optional[str] = None
    keywords: frozenset[str] = frozenset()

    @staticmethod
    def place(member_id: str, class_id: str) -> "Move":
        return Move(MoveKind.PLACE_MEMBER, member_id=member_id, class_id=class_id)

    @staticmethod
    def remove(member_id: str) -> "Move":
        return Move(MoveKind.REMOVE_MEMBER, member_id=member_id)

    @staticmethod
    def connect(a: str, b: str) -> "Move":
        return Move(MoveKind.CONNECT, class_id=a, other_class_id=b)

    @staticmethod
    def disconnect(a: str, b: str) -> "Move":
        return Move(MoveKind.DISCONNECT, class_id=a, other_class_id=b)

    @staticmethod
    def create_class(name: str, keywords: Iterable[str] = ()) -> "Move":
        return Move(MoveKind.CREATE_CLASS, name=name, keywords=make_keywords(keywords))

    @staticmethod
    def delete_class(class_id: str) -> "Move":
        return Move(MoveKind.DELETE_CLASS, class_id=class_id)


def fresh_class_id(design: Design, prefix: str = "new") -> str:
    """Deterministic id for a player-created class (replay safety)."""
    taken = {c.id for c in design.classes}
    n = 1
    while f"{prefix}{n}" in taken:
        n += 1
    return f"{prefix}{n}"


def apply_structural_edit(design: Design, move: Move) -> Design:
    """Apply one move to a well-formed design, returning the edited design.

    Raises UnknownIdError / IllegalSelfAssociationError /
    DuplicatePlacementError / IllegalMoveError on inapplicable moves; the
    input design is never modified. Connecting an already-connected pair and
    disconnecting a non-existent association are no-ops (associations are a
    deduplicated set).
    """
    kind = move.kind
    if kind is MoveKind.PLACE_MEMBER:
        assert move.member_id is not None and move.class_id is not None
        target = design.class_by_id(move.class_id)
        location, member = design.find_member(move.member_id)
        if location is not None:
            raise DuplicatePlacementError(move.member_id, f"already in class {location!r}")
        new_unplaced = tuple(m for m in design.unplaced if m.id != member.id)
        new_target = replace(target, members=target.members + (member,))
        new_classes = tuple(new_target if c.id == target.id else c for c in design.classes)
        return replace(design, classes=new_classes, unplaced=new_unplaced)

    if kind is MoveKind.REMOVE_MEMBER:
        assert move.member_id is not None
        location, member = design.find_member(move.member_id)
        if location is None:
            raise IllegalMoveError(f"member {move.member_id!r} is not placed in any class")
        holder = design.class_by_id(location)
        new_holder = replace(
            holder, members=tuple(m for m in holder.members if m.id != member.id)
        )
        new_classes = tuple(new_holder if c.id == holder.id else c for c in design.classes)
        return replace(design, classes=new_classes, unplaced=design.unplaced + (member,))

    if kind is MoveKind.CONNECT:
        assert move.class_id is not None and move.other_class_id is not None
        if move.class_id == move.other_class_id:
            raise IllegalSelfAssociationError(move.class_id)
        design.class_by_id(move.class_id)
        design.class_by_id(move.other_class_id)
        assoc = Association(move.class_id, move.other_class_id)
        return replace(design, associations=design.associations | {assoc})

    if kind is MoveKind.DISCONNECT:
        assert move.class_id is not None and move.other_class_id is not None
        if move.class_id == move.other_class_id:
            raise IllegalSelfAssociationError(move.class_id)
        design.class_by_id(move.class_id)
        design.class_by_id(move.other_class_id)
        assoc = Association(move.class_id, move.other_class_id)
        return replace(design, associations=design.associations - {assoc})

    if kind is MoveKind.CREATE_CLASS:
        assert move.name is not None
        new_id = fresh_class_id(design)
        box = ClassBox(id=new_id, name=move.name, keywords=move.keywords)
        return replace(design, classes=design.classes + (box,))

    if kind is MoveKind.DELETE_CLASS:
        assert move.class_id is not None
        box = design.class_by_id(move.class_id)
        new_classes = tuple(c for c in design.classes if c.id != box.id)
        new_assocs = frozenset(a for a in design.associations if not a.touches(box.id))
        return replace(
            design,
            classes=new_classes,
            associations=new_assocs,
            unplaced=design.unplaced + box.members,
        )

    raise IllegalMoveError(f"unsupported move kind: {kind!r}")
