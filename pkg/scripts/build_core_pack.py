#!/usr/bin/env python3
"""Author the bundled "core" pack and certify it with the solver.

The pack is committed as JSON (src/designdojo/packs/core.json); this script
is the authoring source of truth.  Re-run it after editing and commit the
regenerated file -- it refuses to write a pack that fails certification.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from designdojo.model import (
    Association,
    BehaviorSpec,
    ClassBox,
    Design,
    Member,
    MemberKind,
    MoveKind,
    make_keywords,
)
from designdojo.packio import FlowNote, PuzzlePack, dump_pack, load_pack_text, validate_pack
from designdojo.progression import PuzzleTree
from designdojo.puzzle import (
    PatternSlot,
    PatternTemplate,
    PuzzleDef,
    ScoreWeights,
    SolutionKind,
    SolutionSpec,
    Thresholds,
)
from designdojo.solver import enumerate_solutions

A = MemberKind.ATTRIBUTE
M = MemberKind.METHOD
kw = make_keywords


def attr(mid: str, name: str, words=(), **beh) -> Member:
    return Member(id=mid, kind=A, name=name, keywords=kw(words))


def meth(mid: str, name: str, words=(), calls=(), reads=(), writes=()) -> Member:
    return Member(
        id=mid, kind=M, name=name, keywords=kw(words),
        behavior=BehaviorSpec(calls=tuple(calls), reads=tuple(reads), writes=tuple(writes)),
    )


def thresholds_spec(w_coh, w_coup, min_coh, max_cbo) -> SolutionSpec:
    return SolutionSpec(
        kind=SolutionKind.THRESHOLDS,
        weights=ScoreWeights(
            cohesion=Fraction(w_coh), coupling=Fraction(w_coup), pattern=Fraction(0)
        ),
        thresholds=Thresholds(
            min_design_cohesion=Fraction(min_coh), max_avg_cbo=Fraction(max_cbo)
        ),
    )


def pattern_spec(template: PatternTemplate) -> SolutionSpec:
    return SolutionSpec(
        kind=SolutionKind.PATTERN,
        weights=ScoreWeights(
            cohesion=Fraction(1, 4), coupling=Fraction(1, 4), pattern=Fraction(1, 2)
        ),
        pattern=template,
    )


# -- 1. cohesion root --------------------------------------------------------

def sort_the_garage() -> PuzzleDef:
    initial = Design(
        classes=(
            ClassBox(id="car", name="Car", keywords=kw(["car"]), position=(140, 180)),
            ClassBox(id="garage", name="Garage", keywords=kw(["garage"]), position=(460, 180)),
        ),
        unplaced=(
            attr("engine", "engine", ["car"]),
            attr("wheel", "wheel", ["car"]),
            meth("drive", "drive", ["car"], reads=["engine"], writes=["wheel"]),
            attr("door", "door", ["garage"]),
            meth("open_door", "open_door", ["garage"], writes=["door"]),
            meth("park", "park", ["car", "garage"], calls=["open_door", "drive"]),
        ),
    )
    return PuzzleDef(
        id="sort-the-garage",
        title="Sort the Garage",
        assignment=(
            "The garage is a mess. Parts and chores for the car and\n"
            "for the building itself are piled into one big toolbox.",
            "A cohesive class keeps items that share a purpose together.\n"
            "The keywords on every item hint at where it belongs.",
            "Drag every attribute and method into the class it fits best.\n"
            "One item fits in two places; pick the split you can defend.",
        ),
        principles=frozenset({"cohesion"}),
        initial=initial,
        allowed_moves=frozenset({MoveKind.PLACE_MEMBER, MoveKind.REMOVE_MEMBER}),
        solutions=(thresholds_spec("3/4", "1/4", "7/8", 1),),
        min_solutions=2,
        min_score_spread=1,
    )


# -- 2. coupling root --------------------------------------------------------

def untangle_the_services() -> PuzzleDef:
    classes = (
        ClassBox(id="orders", name="Orders", position=(140, 120), members=(
            meth("place_order", "place_order",
                 calls=["reserve_stock", "charge_card"]),
        )),
        ClassBox(id="inventory", name="Inventory", position=(460, 120), members=(
            attr("stock", "stock"),
            meth("reserve_stock", "reserve_stock", reads=["stock"], writes=["stock"]),
        )),
        ClassBox(id="billing", name="Billing", position=(140, 320), members=(
            attr("price", "price"),
            meth("charge_card", "charge_card", reads=["price"]),
        )),
        ClassBox(id="shipping", name="Shipping", position=(460, 320), members=(
            attr("address", "address"),
            meth("ship_order", "ship_order", reads=["address"]),
        )),
    )
    ids = [c.id for c in classes]
    everything = frozenset(
        Association(a, b) for i, a in enumerate(ids) for b in ids[i + 1:]
    )
    return PuzzleDef(
        id="untangle-the-services",
        title="Untangle the Services",
        assignment=(
            "Four services grew wires to everyone else. Every class\n"
            "now depends on every other class in the system.",
            "Coupling counts how many other classes a class touches.\n"
            "The average over all classes is the number to push down.",
            "Cut associations until the average coupling is at most 1.5.\n"
            "Keep any wiring you can justify; less is usually more.",
        ),
        principles=frozenset({"coupling"}),
        initial=Design(classes=classes, associations=everything),
        allowed_moves=frozenset({MoveKind.CONNECT, MoveKind.DISCONNECT}),
        solutions=(thresholds_spec(0, 1, 0, "3/2"),),
        cbo_warning_threshold=2,
        min_solutions=2,
        min_score_spread=1,
    )


# -- 3. information hiding ---------------------------------------------------

def hide_the_dial() -> PuzzleDef:
    template = PatternTemplate(
        slots=(
            PatternSlot(
                slot_id="client",
                required_members=((M, "tune_station"),),
                required_keywords=kw(["radio"]),
            ),
            PatternSlot(
                slot_id="keeper",
                required_members=((A, "frequency"), (M, "get_frequency"), (M, "set_frequency")),
                required_keywords=kw(["tuner"]),
            ),
        ),
        slot_associations=(("client", "keeper"),),
    )
    initial = Design(
        classes=(
            ClassBox(id="radio", name="Radio", keywords=kw(["radio"]), position=(140, 180)),
            ClassBox(id="tuner", name="Tuner", keywords=kw(["tuner"]), position=(460, 180)),
        ),
        unplaced=(
            meth("tune_station", "tune_station", ["radio"],
                 calls=["get_frequency", "set_frequency"]),
            attr("frequency", "frequency", ["tuner"]),
            meth("get_frequency", "get_frequency", ["tuner"], reads=["frequency"]),
            meth("set_frequency", "set_frequency", ["tuner"], writes=["frequency"]),
        ),
    )
    return PuzzleDef(
        id="hide-the-dial",
        title="Hide the Dial",
        assignment=(
            "The radio needs a tuner, but the frequency dial is fragile:\n"
            "whoever owns it must guard it behind methods.",
            "Information hiding means the data sits in one class and is\n"
            "only reached through that class's own methods.",
            "Place the frequency with its two accessors in the keeper\n"
            "class, the caller in the client, and connect the two.",
        ),
        principles=frozenset({"information-hiding"}),
        initial=initial,
        allowed_moves=frozenset({
            MoveKind.PLACE_MEMBER, MoveKind.REMOVE_MEMBER,
            MoveKind.CONNECT, MoveKind.DISCONNECT,
        }),
        solutions=(pattern_spec(template),),
    )


# -- 4. modularity -----------------------------------------------------------

def split_the_player() -> PuzzleDef:
    template = PatternTemplate(
        slots=(
            PatternSlot(
                slot_id="front",
                required_members=((M, "play_button"),),
                required_keywords=kw(["interface"]),
            ),
            PatternSlot(
                slot_id="core",
                required_members=((M, "start_playback"), (A, "volume")),
                required_keywords=kw(["playback"]),
            ),
            PatternSlot(
                slot_id="store",
                required_members=((M, "load_track"), (A, "track_list")),
                required_keywords=kw(["storage"]),
            ),
        ),
        slot_associations=(("front", "core"), ("core", "store")),
    )
    initial = Design(
        classes=(
            ClassBox(id="ui", name="PlayerUI", keywords=kw(["interface"]), position=(140, 120)),
            ClassBox(id="playback", name="Playback", keywords=kw(["playback"]), position=(300, 320)),
            ClassBox(id="library", name="Library", keywords=kw(["storage"]), position=(460, 120)),
        ),
        unplaced=(
            meth("play_button", "play_button", ["interface"], calls=["start_playback"]),
            meth("start_playback", "start_playback", ["playback"],
                 reads=["volume"], calls=["load_track"]),
            attr("volume", "volume", ["playback"]),
            meth("load_track", "load_track", ["storage"], reads=["track_list"]),
            attr("track_list", "track_list", ["storage"]),
        ),
    )
    return PuzzleDef(
        id="split-the-player",
        title="Split the Player",
        assignment=(
            "A media player is being carved into modules: the screen,\n"
            "the playback core, and the track library.",
            "A module owns one concern and talks only to the modules\n"
            "next to it in the chain.",
            "Sort the members into the three modules and wire only the\n"
            "links the pattern needs. Spare wires cost coupling points.",
        ),
        principles=frozenset({"modularity"}),
        initial=initial,
        allowed_moves=frozenset({
            MoveKind.PLACE_MEMBER, MoveKind.REMOVE_MEMBER,
            MoveKind.CONNECT, MoveKind.DISCONNECT,
        }),
        solutions=(pattern_spec(template),),
        min_solutions=2,
        min_score_spread=1,
    )


# -- 5. combined principles --------------------------------------------------

def stock_the_shop() -> PuzzleDef:
    initial = Design(
        classes=(
            ClassBox(id="catalog", name="Catalog", keywords=kw(["catalog"]), position=(140, 120)),
            ClassBox(id="cart", name="Cart", keywords=kw(["cart"]), position=(300, 320)),
            ClassBox(id="billing", name="Billing", keywords=kw(["billing"]), position=(460, 120)),
        ),
        associations=frozenset({Association("catalog", "billing")}),
        unplaced=(
            attr("item_list", "item_list", ["catalog"]),
            meth("search_item", "search_item", ["catalog"], reads=["item_list"]),
            attr("cart_items", "cart_items", ["cart"]),
            meth("add_to_cart", "add_to_cart", ["cart"],
                 writes=["cart_items"], calls=["search_item"]),
            meth("charge_total", "charge_total", ["billing", "cart"],
                 reads=["cart_items"]),
        ),
    )
    return PuzzleDef(
        id="stock-the-shop",
        title="Stock the Shop",
        assignment=(
            "The web shop has a catalog, a cart and a billing desk --\n"
            "and someone wired the catalog straight to billing.",
            "This one scores cohesion and coupling together: sorted\n"
            "members and a lean wiring both count.",
            "Place every member where its keywords point, keep average\n"
            "coupling at 4/3 or less, and lose the wire nobody needs.",
        ),
        principles=frozenset({"cohesion", "coupling"}),
        initial=initial,
        allowed_moves=frozenset({
            MoveKind.PLACE_MEMBER, MoveKind.REMOVE_MEMBER,
            MoveKind.CONNECT, MoveKind.DISCONNECT,
        }),
        solutions=(thresholds_spec("1/2", "1/2", "5/6", "4/3"),),
        min_solutions=2,
        min_score_spread=1,
    )


# -- 6. class creation -------------------------------------------------------

def forge_the_logger() -> PuzzleDef:
    template = PatternTemplate(
        slots=(
            PatternSlot(
                slot_id="host",
                required_members=((M, "run"),),
                required_keywords=kw(["app"]),
            ),
            PatternSlot(
                slot_id="scribe",
                required_members=((M, "log_message"), (A, "log_file")),
                required_keywords=kw(["logging"]),
            ),
        ),
        slot_associations=(("host", "scribe"),),
    )
    initial = Design(
        classes=(
            ClassBox(id="app", name="App", keywords=kw(["app"]), position=(140, 180), members=(
                meth("run", "run", ["app"], calls=["log_message"]),
            )),
        ),
        unplaced=(
            meth("log_message", "log_message", ["logging"], writes=["log_file"]),
            attr("log_file", "log_file", ["logging"]),
        ),
    )
    return PuzzleDef(
        id="forge-the-logger",
        title="Forge the Logger",
        assignment=(
            "The app writes its own diary today. Logging deserves a\n"
            "home of its own -- but no such class exists yet.",
            "This board lets you create classes. A new class needs a\n"
            "name and keywords; delete it again if you change course.",
            "Forge a logging class, move both logging members into it,\n"
            "and connect it to the app.",
        ),
        principles=frozenset({"modularity", "information-hiding"}),
        initial=initial,
        allowed_moves=frozenset({
            MoveKind.PLACE_MEMBER, MoveKind.REMOVE_MEMBER,
            MoveKind.CONNECT, MoveKind.DISCONNECT,
            MoveKind.CREATE_CLASS, MoveKind.DELETE_CLASS,
        }),
        class_creation_allowed=True,
        max_classes=3,
        solutions=(pattern_spec(template),),
    )


def build_pack() -> PuzzlePack:
    puzzles = (
        sort_the_garage(),
        untangle_the_services(),
        hide_the_dial(),
        split_the_player(),
        stock_the_shop(),
        forge_the_logger(),
    )
    tree = PuzzleTree(
        puzzle_ids=tuple(p.id for p in puzzles),
        prerequisites={
            "hide-the-dial": frozenset({"sort-the-garage"}),
            "split-the-player": frozenset({"untangle-the-services"}),
            "stock-the-shop": frozenset({"hide-the-dial", "split-the-player"}),
            "forge-the-logger": frozenset({"stock-the-shop"}),
        },
    )
    notes = (
        FlowNote("sort-the-garage", "car.park", "garage.open_door",
                 "parking reaches across classes to work the door"),
        FlowNote("hide-the-dial", "tuner.get_frequency", "tuner.frequency",
                 "the dial is only read through its own accessor"),
        FlowNote("split-the-player", "playback.start_playback", "library.load_track",
                 "the core asks the library for tracks; the UI never does"),
    )
    return PuzzlePack(
        id="core",
        title="Core Principles",
        version="1.0.0",
        puzzles=puzzles,
        tree=tree,
        flow_notes=notes,
        metadata={
            "description": (
                "Six reconstruction puzzles covering cohesion, coupling, "
                "information hiding, modularity, their combination, and "
                "free class creation."
            ),
        },
    )


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out",
        type=Path,
        default=Path(__file__).resolve().parent.parent / "src/designdojo/packs/core.json",
    )
    parser.add_argument("--skip-certify", action="store_true")
    args = parser.parse_args()

    pack = build_pack()
    problems = validate_pack(pack, certify=not args.skip_certify)
    if problems:
        for p in problems:
            print(f"FAIL {p}", file=sys.stderr)
        return 1

    if not args.skip_certify:
        for p in pack.puzzles:
            res = enumerate_solutions(p)
            print(
                f"{p.id}: {len(res.solutions)} solution(s), "
                f"composites {res.composites[:6]}{'...' if len(res.composites) > 6 else ''}, "
                f"{res.states_visited} states, exhausted={res.exhausted}"
            )

    text = dump_pack(pack)
    load_pack_text(text)  # round-trip guard
    args.out.write_text(text, encoding="utf-8")
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
