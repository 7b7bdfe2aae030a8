import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from designdojo.errors import EmptyDesignError, MissingKeywordsError
from designdojo.metrics import (
    avg_cbo,
    cbo_per_class,
    class_cohesion,
    coupling_warnings,
    design_cohesion,
    evaluate,
    pattern_match,
    progress,
    round_half_up,
    score,
)
from designdojo.model import (
    Association,
    ClassBox,
    Design,
    Member,
    MemberKind,
    MoveKind,
    make_keywords,
)
from designdojo.puzzle import (
    PatternSlot,
    PatternTemplate,
    PuzzleDef,
    ScoreWeights,
    SolutionKind,
    SolutionSpec,
    Thresholds,
)

from conftest import random_class, random_graph_design
from oracles import cbo_oracle, cohesion_oracle, round_half_up_oracle

A = MemberKind.ATTRIBUTE
M = MemberKind.METHOD
kw = make_keywords


def box(class_id, class_words, member_words, names=None):
    members = tuple(
        Member(id=f"{class_id}{i}", kind=A, name=(names[i] if names else f"{class_id}{i}"),
               keywords=kw(words))
        for i, words in enumerate(member_words)
    )
    return ClassBox(id=class_id, name=class_id.upper(), keywords=kw(class_words), members=members)


def chain_design(*ids):
    classes = tuple(ClassBox(id=i, name=i.upper()) for i in ids)
    edges = frozenset(Association(a, b) for a, b in zip(ids, ids[1:]))
    return Design(classes=classes, associations=edges)


# -- coupling -----------------------------------------------------------------

def test_cbo_isolated_class_is_zero():
    d = Design(classes=(ClassBox(id="a", name="A"),))
    assert cbo_per_class(d, "a") == 0


def test_cbo_chain_degrees():
    d = chain_design("a", "b", "c")
    assert (cbo_per_class(d, "a"), cbo_per_class(d, "b"), cbo_per_class(d, "c")) == (1, 2, 1)


def test_avg_cbo_chain_is_four_thirds():
    assert avg_cbo(chain_design("a", "b", "c")) == Fraction(4, 3)


def test_avg_cbo_triangle_is_two():
    ids = ("a", "b", "c")
    d = Design(
        classes=tuple(ClassBox(id=i, name=i.upper()) for i in ids),
        associations=frozenset({Association("a", "b"), Association("b", "c"), Association("a", "c")}),
    )
    assert avg_cbo(d) == 2


def test_avg_cbo_empty_design_raises():
    with pytest.raises(EmptyDesignError):
        avg_cbo(Design(classes=()))


def test_coupling_warnings_star_and_threshold_zero():
    ids = ["hub"] + [f"s{i}" for i in range(5)]
    d = Design(
        classes=tuple(ClassBox(id=i, name=i) for i in ids),
        associations=frozenset(Association("hub", s) for s in ids[1:]),
    )
    assert coupling_warnings(d, 4) == [("hub", 5)]
    assert coupling_warnings(chain_design("a", "b", "c"), 4) == []
    hits = coupling_warnings(d, 0)
    assert len(hits) == 6 and hits[0] == ("hub", 5)


def test_cbo_matches_adjacency_oracle_on_random_graphs():
    rng = random.Random(11)
    for _ in range(200):
        d = random_graph_design(rng)
        ids = [c.id for c in d.classes]
        per, avg = cbo_oracle(ids, [(e.a, e.b) for e in d.associations])
        assert {cid: cbo_per_class(d, cid) for cid in ids} == per
        assert avg_cbo(d) == avg


# -- cohesion -----------------------------------------------------------------

def test_cohesion_identical_sets_is_one():
    b = box("c", ["wheel"], [["wheel"], ["wheel"]])
    assert class_cohesion(Design(classes=(b,)), "c") == 1


def test_cohesion_vehicle_wheel_example_is_one_third():
    b = box("c", ["vehicle"], [["wheel"], ["vehicle", "wheel"]])
    assert class_cohesion(Design(classes=(b,)), "c") == Fraction(1, 3)


def test_cohesion_lone_header_is_one():
    b = box("c", ["engine"], [])
    assert class_cohesion(Design(classes=(b,)), "c") == 1


def test_cohesion_missing_keywords_names_element():
    b = ClassBox(id="c", name="C", keywords=kw(["x"]),
                 members=(Member(id="bare", kind=A, name="bare"),))
    with pytest.raises(MissingKeywordsError) as exc:
        class_cohesion(Design(classes=(b,)), "c")
    assert exc.value.element_id == "bare"


def test_design_cohesion_is_mean_of_classes():
    one = box("c1", ["wheel"], [["wheel"]])
    third = box("c2", ["vehicle"], [["wheel"], ["vehicle", "wheel"]])
    d = Design(classes=(one, third))
    assert design_cohesion(d) == Fraction(2, 3)


def test_cohesion_invariant_under_member_order_and_names():
    rng = random.Random(5)
    for _ in range(50):
        b = random_class(rng)
        if not b.members:
            continue
        shuffled = list(b.members)
        rng.shuffle(shuffled)
        renamed = tuple(
            Member(id=m.id, kind=m.kind, name=f"renamed{i}", keywords=m.keywords)
            for i, m in enumerate(shuffled)
        )
        b2 = ClassBox(id=b.id, name="OTHER", keywords=b.keywords, members=renamed)
        d1, d2 = Design(classes=(b,)), Design(classes=(b2,))
        assert class_cohesion(d1, b.id) == class_cohesion(d2, b.id)


def test_cohesion_matches_pair_oracle_on_random_classes():
    rng = random.Random(7)
    for _ in range(300):
        b = random_class(rng)
        d = Design(classes=(b,))
        elements = [b.keywords] + [m.keywords for m in b.members]
        assert class_cohesion(d, b.id) == cohesion_oracle(elements)


def test_removing_keyword_mismatch_never_decreases_cohesion():
    # drop a keyword from a member that does not share it with the header
    before = box("c", ["alpha"], [["alpha", "beta"]])
    after = box("c", ["alpha"], [["alpha"]])
    assert class_cohesion(Design(classes=(after,)), "c") >= class_cohesion(
        Design(classes=(before,)), "c"
    )


# -- pattern matching ---------------------------------------------------------

def slot(slot_id, members=(), words=()):
    return PatternSlot(slot_id=slot_id, required_members=tuple(members),
                       required_keywords=kw(words))


def test_pattern_identity_match_is_one():
    template = PatternTemplate(
        slots=(slot("s1", [(A, "x")], ["left"]), slot("s2", [(M, "y")], ["right"])),
        slot_associations=(("s1", "s2"),),
    )
    d = Design(
        classes=(
            ClassBox(id="a", name="A", keywords=kw(["left"]),
                     members=(Member(id="x", kind=A, name="x", keywords=kw(["left"])),)),
            ClassBox(id="b", name="B", keywords=kw(["right"]),
                     members=(Member(id="y", kind=M, name="y", keywords=kw(["right"])),)),
        ),
        associations=frozenset({Association("a", "b")}),
    )
    assert pattern_match(d, template) == 1


def test_pattern_wrong_class_gives_four_fifths():
    template = PatternTemplate(
        slots=(slot("s1", [(A, "a1"), (A, "a2")]), slot("s2", [(A, "b1"), (A, "b2")])),
        slot_associations=(("s1", "s2"),),
    )
    d = Design(
        classes=(
            ClassBox(id="c1", name="C1", members=(
                Member(id="a1", kind=A, name="a1"),
                Member(id="a2", kind=A, name="a2"),
                Member(id="b2", kind=A, name="b2"),
            )),
            ClassBox(id="c2", name="C2", members=(Member(id="b1", kind=A, name="b1"),)),
        ),
        associations=frozenset({Association("c1", "c2")}),
    )
    assert pattern_match(d, template) == Fraction(4, 5)


def test_pattern_empty_design_is_zero():
    template = PatternTemplate(slots=(slot("s1", [(A, "x")]),))
    assert pattern_match(Design(classes=()), template) == 0


def test_pattern_is_relabeling_invariant():
    template = PatternTemplate(
        slots=(slot("s1", [(A, "x")]), slot("s2", [(M, "y")])),
        slot_associations=(("s1", "s2"),),
    )

    def build(id1, id2):
        return Design(
            classes=(
                ClassBox(id=id1, name="A", members=(Member(id="x", kind=A, name="x"),)),
                ClassBox(id=id2, name="B", members=(Member(id="y", kind=M, name="y"),)),
            ),
            associations=frozenset({Association(id1, id2)}),
        )

    assert pattern_match(build("a", "b"), template) == 1
    assert pattern_match(build("zz", "aa"), template) == 1


# -- score and progress ---------------------------------------------------------

def weights(c, b, p):
    return ScoreWeights(Fraction(c), Fraction(b), Fraction(p))


def test_round_half_up_matches_decimal_oracle():
    rng = random.Random(3)
    for _ in range(500):
        value = Fraction(rng.randint(0, 10_000), rng.randint(1, 100))
        assert round_half_up(value) == round_half_up_oracle(value)
    assert round_half_up(Fraction(135, 2)) == 68


def test_score_boundary_thresholds_inclusive():
    # cohesion exactly at min, avg_cbo exactly at max, toolbox empty
    d = Design(
        classes=(
            box("c1", ["wheel"], [["wheel"]]),
            box("c2", ["vehicle"], [["wheel"], ["vehicle", "wheel"]]),
        ),
        associations=frozenset({Association("c1", "c2")}),
    )
    spec = SolutionSpec(
        kind=SolutionKind.THRESHOLDS,
        weights=weights("1/2", "1/2", 0),
        thresholds=Thresholds(Fraction(2, 3), Fraction(1)),
    )
    report = score(d, spec)
    assert report.design_cohesion == Fraction(2, 3)
    assert report.avg_cbo == 1
    assert report.accepted


def test_score_thresholds_reject_unplaced_toolbox():
    d = Design(
        classes=(box("c1", ["wheel"], [["wheel"]]),),
        unplaced=(Member(id="loose", kind=A, name="loose", keywords=kw(["wheel"])),),
    )
    spec = SolutionSpec(
        kind=SolutionKind.THRESHOLDS,
        weights=weights("1/2", "1/2", 0),
        thresholds=Thresholds(Fraction(0), Fraction(1)),
    )
    report = score(d, spec)
    assert not report.accepted
    assert report.unplaced_count == 1
    assert any("unplaced" in r for r in report.failure_reasons(spec))


def test_score_composite_formula_and_rounding():
    d = Design(
        classes=(
            box("c1", ["wheel"], [["wheel"]]),
            box("c2", ["vehicle"], [["wheel"], ["vehicle", "wheel"]]),
        ),
        associations=frozenset({Association("c1", "c2")}),
    )
    spec = SolutionSpec(
        kind=SolutionKind.THRESHOLDS,
        weights=weights("3/4", "1/4", 0),
        thresholds=Thresholds(Fraction(0), Fraction(2)),
    )
    report = score(d, spec)
    # coupling term: 1 - 1/max(1, n-1) = 0; cohesion 2/3 -> 100*(3/4*2/3) = 50
    assert report.coupling_term == 0
    assert report.composite == 50


def test_score_missing_keywords_raises_only_when_cohesion_scored():
    bare = Design(classes=(ClassBox(id="a", name="A"),))
    scored = SolutionSpec(
        kind=SolutionKind.THRESHOLDS,
        weights=weights("1/2", "1/2", 0),
        thresholds=Thresholds(Fraction(1, 2), Fraction(1)),
    )
    unscored = SolutionSpec(
        kind=SolutionKind.THRESHOLDS,
        weights=weights(0, 1, 0),
        thresholds=Thresholds(Fraction(0), Fraction(1)),
    )
    with pytest.raises(MissingKeywordsError):
        score(bare, scored)
    report = score(bare, scored, strict_cohesion=False)
    assert report.design_cohesion == 0
    assert any(w.code == "missing_keywords" for w in report.warnings)
    report = score(bare, unscored)  # keyword-free puzzle: fine and warning-free
    assert report.accepted
    assert not any(w.code == "missing_keywords" for w in report.warnings)


def test_progress_formula_half_case():
    # 2 of 4 members placed, pattern_score 1/2 -> (1/2)(2/4) + (1/2)(1/2) = 1/2
    template = PatternTemplate(
        slots=(slot("s1", [(A, "x"), (A, "y")]), slot("s2", [(A, "u"), (A, "v")])),
    )
    d = Design(
        classes=(
            ClassBox(id="a", name="A", members=(
                Member(id="x", kind=A, name="x"), Member(id="y", kind=A, name="y"))),
            ClassBox(id="b", name="B"),
        ),
        unplaced=(Member(id="u", kind=A, name="u"), Member(id="v", kind=A, name="v")),
    )
    puzzle = PuzzleDef(
        id="t", title="T", assignment=("go",), principles=frozenset({"modularity"}),
        initial=Design(
            classes=(ClassBox(id="a", name="A"), ClassBox(id="b", name="B")),
            unplaced=d.unplaced + tuple(d.class_by_id("a").members),
        ),
        allowed_moves=frozenset({MoveKind.PLACE_MEMBER}),
        solutions=(SolutionSpec(
            kind=SolutionKind.PATTERN, weights=weights("1/4", "1/4", "1/2"), pattern=template,
        ),),
    )
    assert pattern_match(d, template) == Fraction(1, 2)
    assert progress(d, puzzle) == Fraction(1, 2)


def test_progress_is_one_iff_accepted(garage):
    from designdojo.solver import enumerate_solutions

    res = enumerate_solutions(garage)
    for found in res.solutions:
        assert progress(found.design, garage) == 1
    assert progress(garage.initial, garage) == Fraction(1, 2)
    assert not evaluate(garage.initial, garage).accepted


def test_evaluate_prefers_accepted_then_composite(garage):
    report = evaluate(garage.initial, garage)
    assert report.spec_index == 0


@given(st.integers(0, 2**32 - 1))
def test_adding_association_never_decreases_cbo(seed):
    rng = random.Random(seed)
    d = random_graph_design(rng, max_classes=6)
    if len(d.classes) < 2:
        return
    ids = [c.id for c in d.classes]
    a, b = rng.sample(ids, 2)
    before = {cid: cbo_per_class(d, cid) for cid in ids}
    d2 = Design(classes=d.classes, associations=d.associations | {Association(a, b)})
    for cid in ids:
        assert cbo_per_class(d2, cid) >= before[cid]
