"""Command-line front end: validate packs, score designs, enumerate
solutions, export flow graphs, and run the HTTP service.

Exit codes: 0 success/accepted, 1 usage error, 2 load or validation error,
3 design valid but not accepted, 4 solver cap exceeded.  stdout carries
canonical JSON (or DOT for ``flows --format dot``); human notes go to
stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path
from typing import Optional

from .errors import DesignDojoError, InvariantError, ParseError, SchemaError
from .flows import derive_flows, to_dot
from .metrics import evaluate
from .model import Design, validate_design
from .packio import PuzzlePack, certify_pack, load_bundled_pack, load_pack, validate_pack
from .puzzle import PuzzleDef, SolverCaps
from .serialize import (
    design_from_dict,
    dumps_canonical,
    flow_graph_to_dict,
    move_to_dict,
    report_to_dict,
)
from .service import create_app
from .solver import enumerate_solutions

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_LOAD = 2
EXIT_NOT_ACCEPTED = 3
EXIT_CAP = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse default exits 2; we reserve that
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load_pack_arg(path: Optional[str]) -> PuzzlePack:
    """A pack path, or the literal "bundled" for the packaged core pack."""
    if path is None or path == "bundled":
        return load_bundled_pack()
    return load_pack(path)


def _load_design_file(path: str) -> Design:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc), line=exc.lineno, column=exc.colno) from exc
    design = design_from_dict(data)
    violations = validate_design(design)
    if violations:
        raise InvariantError("; ".join(v.message for v in violations))
    return design


def _puzzle(pack: PuzzlePack, puzzle_id: str) -> PuzzleDef:
    if not pack.has_puzzle(puzzle_id):
        raise InvariantError(
            f"pack {pack.id!r} has no puzzle {puzzle_id!r}; "
            f"available: {', '.join(p.id for p in pack.puzzles)}"
        )
    return pack.puzzle_by_id(puzzle_id)


def _caps_override(puzzle: PuzzleDef, max_states: Optional[int], max_depth: Optional[int]) -> PuzzleDef:
    caps = puzzle.solver_caps
    if max_states is not None:
        caps = replace(caps, max_states=max_states)
    if max_depth is not None:
        caps = replace(caps, max_depth=max_depth)
    return replace(puzzle, solver_caps=caps)


def cmd_validate(args) -> int:
    pack = _load_pack_arg(args.pack)
    if args.max_states is not None:
        pack = replace(
            pack,
            puzzles=tuple(_caps_override(p, args.max_states, None) for p in pack.puzzles),
        )
    problems = validate_pack(pack)
    rows = []
    if args.certify and not problems:
        problems.extend(certify_pack(pack))
        for p in pack.puzzles:
            res = enumerate_solutions(p)
            rows.append({
                "id": p.id,
                "solutions": len(res.solutions),
                "composites": res.composites,
                "score_spread": res.score_spread,
                "states_visited": res.states_visited,
                "exhausted": res.exhausted,
            })
    payload = {
        "pack": pack.id,
        "version": pack.version,
        "puzzle_count": len(pack.puzzles),
        "ok": not problems,
        "problems": problems,
        "certified": bool(args.certify),
    }
    if rows:
        payload["puzzles"] = rows
    sys.stdout.write(dumps_canonical(payload))
    if problems:
        for msg in problems:
            print(f"problem: {msg}", file=sys.stderr)
        return EXIT_LOAD
    return EXIT_OK


def cmd_score(args) -> int:
    pack = _load_pack_arg(args.pack)
    puzzle = _puzzle(pack, args.puzzle_id)
    design = _load_design_file(args.design)
    report = evaluate(design, puzzle, strict_cohesion=False)
    sys.stdout.write(dumps_canonical(report_to_dict(report)))
    if not report.accepted:
        print("design is not accepted by any solution spec", file=sys.stderr)
        return EXIT_NOT_ACCEPTED
    return EXIT_OK


def cmd_solve(args) -> int:
    pack = _load_pack_arg(args.pack)
    puzzle = _caps_override(_puzzle(pack, args.puzzle_id), args.max_states, args.max_depth)
    res = enumerate_solutions(puzzle)
    payload = {
        "puzzle": puzzle.id,
        "states_visited": res.states_visited,
        "exhausted": res.exhausted,
        "cap_hit": res.cap_hit,
        "solutions": [
            {
                "composite": s.report.composite,
                "report": report_to_dict(s.report),
                "moves": [move_to_dict(m) for m in s.moves],
            }
            for s in res.solutions
        ],
    }
    sys.stdout.write(dumps_canonical(payload))
    if not res.exhausted:
        print(
            f"search hit the {res.cap_hit} cap after {res.states_visited} states; "
            "results are partial",
            file=sys.stderr,
        )
        return EXIT_CAP
    print(
        f"{len(res.solutions)} solution(s) over {res.states_visited} states",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_flows(args) -> int:
    pack = _load_pack_arg(args.pack)
    _puzzle(pack, args.puzzle_id)  # existence check; flows need only the design
    design = _load_design_file(args.design)
    graph = derive_flows(design)
    if args.format == "dot":
        sys.stdout.write(to_dot(graph, design))
    else:
        sys.stdout.write(dumps_canonical(flow_graph_to_dict(graph)))
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    pack = _load_pack_arg(args.pack)
    app = create_app(
        pack=pack,
        data_dir=args.data_dir,
        cbo_warning_threshold=args.cbo_warn,
        static_dir=args.static_dir,
    )
    print(
        f"serving pack {pack.id!r} on port {args.port} (saves in {args.data_dir})",
        file=sys.stderr,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="designdojo", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a pack file (optionally certify solvability)")
    p.add_argument("pack", help="pack path, or 'bundled' for the packaged pack")
    p.add_argument("--certify", action="store_true")
    p.add_argument("--max-states", type=int, default=None)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("score", help="score a design file against a puzzle")
    p.add_argument("pack", help="pack path, or 'bundled' for the packaged pack")
    p.add_argument("puzzle_id")
    p.add_argument("design")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("solve", help="enumerate accepted designs for a puzzle")
    p.add_argument("pack", help="pack path, or 'bundled' for the packaged pack")
    p.add_argument("puzzle_id")
    p.add_argument("--max-states", type=int, default=None)
    p.add_argument("--max-depth", type=int, default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("flows", help="derive the data/control-flow graph of a design")
    p.add_argument("pack", help="pack path, or 'bundled' for the packaged pack")
    p.add_argument("puzzle_id")
    p.add_argument("design")
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.set_defaults(func=cmd_flows)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--pack", default=None)
    p.add_argument("--data-dir", default="./data")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8632)
    p.add_argument("--cbo-warn", type=int, default=None)
    p.add_argument("--static-dir", default=None)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: no such file: {exc.filename}", file=sys.stderr)
        return EXIT_LOAD
    except (ParseError, SchemaError, InvariantError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LOAD
    except DesignDojoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LOAD


if __name__ == "__main__":
    sys.exit(main())
