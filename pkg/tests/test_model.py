import random

import pytest
from hypothesis import given, strategies as st

from designdojo.errors import (
    DuplicatePlacementError,
    IllegalSelfAssociationError,
    UnknownIdError,
)
from designdojo.model import (
    Association,
    BehaviorSpec,
    ClassBox,
    Design,
    Member,
    MemberKind,
    Move,
    MoveKind,
    apply_structural_edit,
    fresh_class_id,
    make_keywords,
    validate_design,
)

A = MemberKind.ATTRIBUTE
M = MemberKind.METHOD


def two_box_design(**kw) -> Design:
    return Design(
        classes=(
            ClassBox(id="a", name="A", keywords=make_keywords(["alpha"])),
            ClassBox(id="b", name="B", keywords=make_keywords(["beta"])),
        ),
        unplaced=(
            Member(id="m1", kind=A, name="x", keywords=make_keywords(["alpha"])),
            Member(id="m2", kind=M, name="y", keywords=make_keywords(["beta"])),
        ),
        **kw,
    )


def test_keywords_fold_case_and_dedup():
    assert make_keywords(["Wheel", "wheel", "CAR"]) == frozenset({"wheel", "car"})


@pytest.mark.parametrize("bad", ["", "  ", "two words", "tab\tword"])
def test_keywords_reject_empty_or_whitespace(bad):
    with pytest.raises(ValueError):
        make_keywords([bad])


def test_attribute_with_behavior_rejected():
    with pytest.raises(ValueError):
        Member(id="m", kind=A, name="m", behavior=BehaviorSpec(calls=("f",)))


def test_association_is_canonical_and_rejects_self_loop():
    assert Association("b", "a") == Association("a", "b")
    assert len({Association("a", "b"), Association("b", "a")}) == 1
    with pytest.raises(IllegalSelfAssociationError):
        Association("a", "a")


def test_design_orders_canonically():
    d1 = two_box_design()
    d2 = Design(classes=tuple(reversed(d1.classes)), unplaced=tuple(reversed(d1.unplaced)))
    assert [c.id for c in d2.classes] == ["a", "b"]
    assert d1.classes == d2.classes


def test_validate_design_flags_dangling_association():
    d = two_box_design(associations=frozenset({Association("a", "ghost")}))
    violations = validate_design(d)
    assert len(violations) == 1
    assert violations[0].code == "dangling_association"
    assert "ghost" in violations[0].message


def test_validate_design_flags_duplicate_placement():
    dup = Member(id="m1", kind=A, name="x", keywords=make_keywords(["alpha"]))
    d = Design(
        classes=(ClassBox(id="a", name="A", members=(dup,)),),
        unplaced=(dup,),
    )
    codes = {v.code for v in validate_design(d)}
    assert "duplicate_placement" in codes


def test_place_then_remove_round_trips():
    d = two_box_design()
    placed = apply_structural_edit(d, Move.place("m1", "a"))
    assert placed.class_by_id("a").members[0].id == "m1"
    assert all(m.id != "m1" for m in placed.unplaced)
    back = apply_structural_edit(placed, Move.remove("m1"))
    assert back == d


def test_place_unknown_ids_raise():
    d = two_box_design()
    with pytest.raises(UnknownIdError):
        apply_structural_edit(d, Move.place("nope", "a"))
    with pytest.raises(UnknownIdError):
        apply_structural_edit(d, Move.place("m1", "nope"))


def test_place_already_placed_member_raises():
    d = apply_structural_edit(two_box_design(), Move.place("m1", "a"))
    with pytest.raises(DuplicatePlacementError):
        apply_structural_edit(d, Move.place("m1", "b"))


def test_connect_twice_is_single_edge():
    d = two_box_design()
    d = apply_structural_edit(d, Move.connect("a", "b"))
    d = apply_structural_edit(d, Move.connect("b", "a"))
    assert d.associations == frozenset({Association("a", "b")})


def test_disconnect_missing_edge_is_noop():
    d = two_box_design()
    assert apply_structural_edit(d, Move.disconnect("a", "b")) == d


def test_connect_self_raises():
    with pytest.raises(IllegalSelfAssociationError):
        apply_structural_edit(two_box_design(), Move.connect("a", "a"))


def test_create_class_uses_fresh_id():
    d = two_box_design()
    assert fresh_class_id(d) == "new1"
    d2 = apply_structural_edit(d, Move.create_class("Helper", make_keywords(["alpha"])))
    assert d2.has_class("new1")
    assert fresh_class_id(d2) == "new2"


def test_delete_class_returns_members_and_drops_edges():
    d = two_box_design()
    d = apply_structural_edit(d, Move.place("m1", "a"))
    d = apply_structural_edit(d, Move.connect("a", "b"))
    d = apply_structural_edit(d, Move.delete_class("a"))
    assert not d.has_class("a")
    assert d.associations == frozenset()
    assert {m.id for m in d.unplaced} == {"m1", "m2"}


def test_position_is_metric_inert():
    from designdojo.metrics import score
    from designdojo.puzzle import ScoreWeights, SolutionKind, SolutionSpec, Thresholds
    from fractions import Fraction

    spec = SolutionSpec(
        kind=SolutionKind.THRESHOLDS,
        weights=ScoreWeights(Fraction(1, 2), Fraction(1, 2), Fraction(0)),
        thresholds=Thresholds(Fraction(1, 2), Fraction(2)),
    )
    d = two_box_design()
    d = apply_structural_edit(d, Move.place("m1", "a"))
    d = apply_structural_edit(d, Move.place("m2", "b"))
    moved = Design(
        classes=tuple(
            ClassBox(c.id, c.name, c.keywords, c.members, position=(999, -5))
            for c in d.classes
        ),
        associations=d.associations,
        unplaced=d.unplaced,
    )
    assert score(d, spec) == score(moved, spec)


# random edit sequences keep designs well-formed
@given(st.integers(0, 2**32 - 1), st.integers(1, 40))
def test_random_edits_preserve_wellformedness(seed, steps):
    from designdojo.engine import legal_moves  # move generator only

    rng = random.Random(seed)
    d = two_box_design()
    from designdojo.puzzle import PuzzleDef, ScoreWeights, SolutionKind, SolutionSpec, Thresholds
    from fractions import Fraction

    puzzle = PuzzleDef(
        id="t", title="T", assignment=("go",), principles=frozenset({"cohesion"}),
        initial=d,
        allowed_moves=frozenset(MoveKind),
        class_creation_allowed=True,
        max_classes=4,
        solutions=(SolutionSpec(
            kind=SolutionKind.THRESHOLDS,
            weights=ScoreWeights(Fraction(1, 2), Fraction(1, 2), Fraction(0)),
            thresholds=Thresholds(Fraction(0), Fraction(3)),
        ),),
    )
    for _ in range(steps):
        options = legal_moves(puzzle, d)
        if not options:
            break
        d = apply_structural_edit(d, rng.choice(options))
        assert validate_design(d) == []
