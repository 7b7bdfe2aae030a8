"""Exception types shared across the engine, metrics and pack loading."""

from __future__ import annotations


class DesignDojoError(Exception):
    """Base class for all domain errors."""

    code = "error"


class UnknownIdError(DesignDojoError):
    """A referenced class or member id does not exist in the design."""

    code = "unknown_id"

    def __init__(self, kind: str, ident: str):
        super().__init__(f"unknown {kind} id: {ident!r}")
        self.kind = kind
        self.ident = ident


class IllegalSelfAssociationError(DesignDojoError):
    """An association was requested between a class and itself."""

    code = "illegal_self_association"

    def __init__(self, class_id: str):
        super().__init__(f"class {class_id!r} cannot be associated with itself")
        self.class_id = class_id


class DuplicatePlacementError(DesignDojoError):
    """A member would end up placed in two locations at once."""

    code = "duplicate_placement"

    def __init__(self, member_id: str, detail: str = ""):
        msg = f"member {member_id!r} is already placed"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.member_id = member_id


class EmptyDesignError(DesignDojoError):
    """A metric over classes was requested on a design with no classes."""

    code = "empty_design"

    def __init__(self, what: str = "metric"):
        super().__init__(f"{what} is undefined for a design with no classes")


class MissingKeywordsError(DesignDojoError):
    """Cohesion scoring hit an element with an empty keyword set."""

    code = "missing_keywords"

    def __init__(self, class_id: str, element_id: str):
        super().__init__(
            f"element {element_id!r} of class {class_id!r} has no keywords; "
            "cohesion cannot be scored"
        )
        self.class_id = class_id
        self.element_id = element_id


class IllegalMoveError(DesignDojoError):
    """A move is not applicable to the current design or puzzle rules.

    The engine converts these into in-band error feedback; they only escape
    when the structural-edit API is called directly.
    """

    code = "illegal_move"


class LockedPuzzleError(DesignDojoError):
    """The puzzle's prerequisites are not completed yet."""

    code = "locked_puzzle"

    def __init__(self, puzzle_id: str, missing: tuple[str, ...] = ()):
        msg = f"puzzle {puzzle_id!r} is locked"
        if missing:
            msg += f"; missing prerequisites: {', '.join(missing)}"
        super().__init__(msg)
        self.puzzle_id = puzzle_id
        self.missing = missing


class NotAcceptedError(DesignDojoError):
    """finish() was called on a design no solution spec accepts."""

    code = "not_accepted"

    def __init__(self, progress, failures: tuple[str, ...]):
        super().__init__(
            "design is not accepted by any solution spec: " + "; ".join(failures)
        )
        self.progress = progress
        self.failures = failures


class InvalidPuzzleError(DesignDojoError):
    """A puzzle definition violates its own invariants."""

    code = "invalid_puzzle"


class PackError(DesignDojoError):
    """Base class for pack loading failures."""

    code = "pack_error"


class ParseError(PackError):
    """The pack file is not well-formed JSON."""

    code = "parse_error"

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class SchemaError(PackError):
    """The pack JSON does not match the declared schema."""

    code = "schema_error"

    def __init__(self, message: str, path: str = ""):
        if path:
            message = f"{path}: {message}"
        super().__init__(message)
        self.path = path


class InvariantError(PackError):
    """The pack parsed but violates a semantic invariant."""

    code = "invariant_error"


class UnknownPlayerError(DesignDojoError):
    code = "unknown_player"

    def __init__(self, name: str):
        super().__init__(f"unknown player: {name!r}")
        self.name = name


class UnknownSessionError(DesignDojoError):
    code = "unknown_session"

    def __init__(self, token: str):
        super().__init__("unknown or expired session token")
        self.token = token
