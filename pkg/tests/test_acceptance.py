"""Acceptance gate: one test per shipped guarantee.

Each test here is a self-contained check of one headline property; running
``pytest -v tests/test_acceptance.py`` prints one pass/fail line per
guarantee. Everything runs against the installed package and the bundled
pack only — no UI, no network.
"""

import random
import time
from fractions import Fraction

import pytest
from fastapi.testclient import TestClient

from designdojo.engine import finish, legal_moves, play_move, replay, start_session
from designdojo.errors import (
    IllegalSelfAssociationError,
    InvariantError,
    LockedPuzzleError,
)
from designdojo.flows import derive_flows, flow_delta
from designdojo.metrics import avg_cbo, cbo_per_class, class_cohesion, progress
from designdojo.model import (
    Association,
    ClassBox,
    Design,
    Member,
    MemberKind,
    MoveKind,
    apply_structural_edit,
)
from designdojo.packio import (
    certify_pack,
    dump_pack,
    load_pack,
    load_pack_text,
    pack_from_dict,
    pack_to_dict,
)
from designdojo.progression import (
    PuzzleTree,
    SaveGame,
    SaveStore,
    complete,
    tree_problems,
    unlocked,
)
from designdojo.serialize import move_from_dict, move_to_dict
from designdojo.service import create_app
from designdojo.solver import enumerate_solutions

from conftest import random_class, random_graph_design
from oracles import cbo_oracle, cohesion_oracle
from test_progression import random_dag, report

CLOCK = lambda: 1_700_000_000.0  # noqa: E731


def test_cohesion_oracle_equivalence_1000_random_classes():
    """class_cohesion agrees exactly with an independent pair-enumeration
    oracle on 1000 random classes, in under 5 seconds."""
    rng = random.Random(101)
    started = time.perf_counter()
    for _ in range(1000):
        box = random_class(rng)
        design = Design(classes=(box,))
        elements = [box.keywords] + [m.keywords for m in box.members]
        assert class_cohesion(design, box.id) == cohesion_oracle(elements)
    assert time.perf_counter() - started < 5.0


def test_coupling_oracle_equivalence_1000_random_graphs():
    """per-class CBO and avg_cbo agree exactly with an adjacency-matrix
    degree oracle on 1000 random graphs (<= 8 classes), in under 5 seconds;
    parallel edges collapse and self edges are rejected."""
    rng = random.Random(102)
    started = time.perf_counter()
    for _ in range(1000):
        design = random_graph_design(rng)
        ids = [c.id for c in design.classes]
        per, avg = cbo_oracle(ids, [(e.a, e.b) for e in design.associations])
        assert {cid: cbo_per_class(design, cid) for cid in ids} == per
        assert avg_cbo(design) == avg
    assert time.perf_counter() - started < 5.0

    # parallel edges: both orientations collapse to one association
    boxes = (ClassBox(id="a", name="A"), ClassBox(id="b", name="B"))
    doubled = Design(
        classes=boxes,
        associations=frozenset({Association("a", "b"), Association("b", "a")}),
    )
    assert len(doubled.associations) == 1
    assert cbo_per_class(doubled, "a") == 1
    with pytest.raises(IllegalSelfAssociationError):
        Association("a", "a")


def test_two_distinct_solutions_for_the_cohesion_puzzle(core_pack):
    """Exhaustive search on the bundled cohesion puzzle finds at least two
    distinct accepted designs with unequal composites, both of which pass
    finish(); all in under 30 seconds."""
    started = time.perf_counter()
    garage = core_pack.puzzle_by_id("sort-the-garage")
    search = enumerate_solutions(garage)
    assert search.exhausted
    assert len(search.solutions) >= 2
    designs = {s.design for s in search.solutions}
    assert len(designs) == len(search.solutions)  # genuinely distinct
    composites = [s.report.composite for s in search.solutions]
    assert len(set(composites)) >= 2  # unequal scores
    for found in search.solutions:
        session = replay(garage, found.moves)
        done, event = finish(session)
        assert done.finished and event.report.accepted
    assert time.perf_counter() - started < 30.0


def test_unlock_semantics_on_random_dags():
    """Over random prerequisite DAGs (<= 20 nodes): unlocked() grows
    monotonically, every completion attempt on a locked puzzle raises, and
    cyclic trees are rejected at load."""
    rng = random.Random(103)
    for _ in range(120):
        tree = random_dag(rng, rng.randint(1, 20))
        assert tree_problems(tree) == []
        save = SaveGame("p")
        open_before = unlocked(tree, save)
        assert open_before == set(tree.roots())
        while True:
            locked = [p for p in tree.puzzle_ids if p not in unlocked(tree, save)]
            for pid in locked[:3]:
                with pytest.raises(LockedPuzzleError):
                    complete(tree, save, pid, report())
            todo = [p for p in unlocked(tree, save) if p not in save.completed]
            if not todo:
                break
            save = complete(tree, save, rng.choice(todo), report(), now=0.0)
            open_after = unlocked(tree, save)
            assert open_before <= open_after
            open_before = open_after
        assert set(save.completed) == set(tree.puzzle_ids)

    # cycle rejection at load time
    cyclic = PuzzleTree(("p1", "p2"), {"p1": frozenset({"p2"}), "p2": frozenset({"p1"})})
    assert any("cycle" in p for p in tree_problems(cyclic))
    with pytest.raises(InvariantError):
        load_pack("tests/fixtures/cycle.json")


def test_worked_metric_values_are_exact(core_pack):
    """The three hand-derived values hold exactly: the vehicle/wheel cohesion
    case is 1/3, the three-class chain averages CBO 4/3, and the bundled
    cohesion puzzle opens at progress 1/2."""
    kw = lambda *w: frozenset(w)  # noqa: E731
    box = ClassBox(
        id="c", name="C", keywords=kw("vehicle"),
        members=(
            Member(id="m1", kind=MemberKind.ATTRIBUTE, name="m1", keywords=kw("wheel")),
            Member(id="m2", kind=MemberKind.ATTRIBUTE, name="m2",
                   keywords=kw("vehicle", "wheel")),
        ),
    )
    assert class_cohesion(Design(classes=(box,)), "c") == Fraction(1, 3)

    chain = Design(
        classes=(ClassBox(id="a", name="A"), ClassBox(id="b", name="B"),
                 ClassBox(id="c", name="C")),
        associations=frozenset({Association("a", "b"), Association("b", "c")}),
    )
    assert avg_cbo(chain) == Fraction(4, 3)

    garage = core_pack.puzzle_by_id("sort-the-garage")
    assert progress(garage.initial, garage) == Fraction(1, 2)


def test_replay_determinism_200_sequences_per_puzzle(core_pack):
    """200 random move sequences per bundled puzzle replay to identical
    designs and identical composite traces; rejected moves leave the session
    object untouched."""
    rng = random.Random(104)
    for puzzle in core_pack.puzzles:
        for _ in range(200):
            session, _ = start_session(puzzle)
            trace = [session.last_report.composite]
            for _ in range(rng.randint(0, 7)):
                options = legal_moves(puzzle, session.design)
                if not options:
                    break
                session, event = play_move(session, rng.choice(options))
                trace.append(event.report.composite)

            # an illegal move must be a no-op on the session
            before = session
            after, event = play_move(session, move_from_dict(
                {"kind": "place_member", "member_id": "no-such-member", "class_id": "nope"}))
            assert after is before and event.rejected

            rebuilt, _ = start_session(puzzle)
            replay_trace = [rebuilt.last_report.composite]
            for move in session.move_log:
                rebuilt, event = play_move(rebuilt, move)
                replay_trace.append(event.report.composite)
            assert rebuilt.design == session.design
            assert replay_trace == trace


def test_flow_conservation_across_bundled_puzzles(core_pack):
    """In every reachable state touched (bundled puzzles, 500+ random
    placements): each placed method's declared calls appear as exactly one
    control edge or one unresolved call; a single-member move only changes
    edges incident to that member."""
    def check_conservation(design):
        graph = derive_flows(design)
        declared = 0
        for _box, member in design.placed_members():
            if member.kind is MemberKind.METHOD:
                declared += len(member.behavior.calls)
        assert declared == len(graph.control_edges) + len(graph.unresolved_calls)

    rng = random.Random(105)
    placements = 0
    while placements < 500:
        for puzzle in core_pack.puzzles:
            design = puzzle.initial
            check_conservation(design)
            for _ in range(10):
                options = legal_moves(puzzle, design)
                if not options:
                    break
                move = rng.choice(options)
                nxt = apply_structural_edit(design, move)
                check_conservation(nxt)
                if move.kind in (MoveKind.PLACE_MEMBER, MoveKind.REMOVE_MEMBER):
                    placements += 1
                    delta = flow_delta(derive_flows(design), derive_flows(nxt))
                    for edge in delta.added_edges | delta.removed_edges:
                        assert move.member_id in (edge.src.member_id, edge.dst.member_id)
                design = nxt


def test_pack_round_trip_and_fixture_errors(core_pack):
    """dump/load is idempotent on the bundled pack and the loadable fixture;
    each broken fixture produces its named error."""
    assert load_pack_text(dump_pack(core_pack)) == core_pack
    assert pack_from_dict(pack_to_dict(core_pack)) == core_pack

    mini = load_pack("tests/fixtures/mini_ok.json")
    assert load_pack_text(dump_pack(mini)) == mini

    with pytest.raises(InvariantError) as exc:
        load_pack("tests/fixtures/cycle.json")
    assert "prerequisite cycle" in str(exc.value)

    with pytest.raises(InvariantError) as exc:
        load_pack("tests/fixtures/dangling.json")
    assert "unknown puzzle 'ghost'" in str(exc.value)

    unsolvable = load_pack("tests/fixtures/unsolvable.json")
    problems = certify_pack(unsolvable)
    assert any("found 0 accepted designs" in p for p in problems)


def test_service_transparency_and_restart(tmp_path, core_pack):
    """A scripted HTTP session (create player, solve the root puzzle, finish)
    leaves a save file byte-identical to one produced by direct library
    calls, and the completed state survives a process restart."""
    garage = core_pack.puzzle_by_id("sort-the-garage")
    best = max(enumerate_solutions(garage).solutions, key=lambda s: s.report.composite)
    payloads = [move_to_dict(m) for m in best.moves]

    http_dir = tmp_path / "http"
    with TestClient(create_app(data_dir=http_dir, clock=CLOCK)) as client:
        client.post("/players", json={"name": "ada"})
        token = client.post(
            "/players/ada/sessions", json={"puzzle_id": garage.id}
        ).json()["token"]
        for payload in payloads:
            assert client.post(
                f"/sessions/{token}/moves", json=payload
            ).json()["sound_cue"] != "error"
        result = client.post(f"/sessions/{token}/finish").json()
        assert result["newly_unlocked"] == ["hide-the-dial"]

    lib_dir = tmp_path / "lib"
    store = SaveStore(lib_dir)
    store.store(SaveGame("ada"))
    session, _ = start_session(garage)
    for payload in payloads:
        session, event = play_move(session, move_from_dict(payload))
        assert not event.rejected
    session, _ = finish(session)
    store.store(complete(core_pack.tree, SaveGame("ada"), garage.id,
                         session.last_report, now=CLOCK()))

    assert (http_dir / "ada.json").read_bytes() == (lib_dir / "ada.json").read_bytes()

    # restart: a new process over the same save directory sees the unlock
    with TestClient(create_app(data_dir=http_dir, clock=CLOCK)) as client:
        tree = client.get("/players/ada/tree").json()
        rows = {r["id"]: r for r in tree["puzzles"]}
        assert rows[garage.id]["status"] == "completed"
        assert rows["hide-the-dial"]["status"] == "unlocked"
        resumed = client.post(
            "/players/ada/sessions", json={"puzzle_id": "hide-the-dial"}
        )
        assert resumed.status_code == 200
