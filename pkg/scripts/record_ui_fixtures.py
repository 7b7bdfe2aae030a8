"""Record a real service walkthrough into frontend test fixtures.

Drives the bundled cohesion puzzle end to end over the HTTP app (fixed
clock) and writes every request/response pair, in order, to
frontend/test/fixtures/walkthrough.json. The frontend's stub server
replays these payloads, so its tests exercise the exact bytes the Python
service emits without needing it running under npm.

Usage: python3 scripts/record_ui_fixtures.py
"""
from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from designdojo import __version__
from designdojo.packio import load_bundled_pack
from designdojo.serialize import move_to_dict
from designdojo.service import create_app
from designdojo.solver import enumerate_solutions

OUT = Path(__file__).resolve().parent.parent / "frontend" / "test" / "fixtures"
PLAYER = "ada"
PUZZLE = "sort-the-garage"


def main() -> int:
    pack = load_bundled_pack()
    garage = pack.puzzle_by_id(PUZZLE)
    best = max(enumerate_solutions(garage).solutions, key=lambda s: s.report.composite)

    steps = []
    with tempfile.TemporaryDirectory() as tmp:
        app = create_app(data_dir=tmp, clock=lambda: 1_700_000_000.0)
        with TestClient(app) as client:
            def rec(method: str, path: str, body=None):
                resp = (client.post(path, json=body) if method == "POST"
                        else client.get(path))
                steps.append({
                    "method": method,
                    "path": path,
                    "body": body,
                    "status": resp.status_code,
                    "response": resp.json(),
                })
                return resp.json()

            rec("GET", "/packs/current")
            rec("POST", "/players", {"name": PLAYER})
            rec("GET", f"/players/{PLAYER}/tree")
            # clicking a locked puzzle must never reach the server; this 409
            # is recorded only so the client's error mapping has a real shape
            rec("POST", f"/players/{PLAYER}/sessions", {"puzzle_id": "stock-the-shop"})
            started = rec("POST", f"/players/{PLAYER}/sessions", {"puzzle_id": PUZZLE})
            token = started["token"]
            steps[-1]["token_alias"] = "TOKEN"  # frontend swaps in its own
            rec("GET", f"/sessions/{token}")
            rec("GET", f"/sessions/{token}/flows")
            for move in best.moves:
                rec("POST", f"/sessions/{token}/moves", move_to_dict(move))
            # one rejected move: re-placing a placed member, aimed at the
            # *other* class — the gesture the UI can actually produce
            first = move_to_dict(best.moves[0])
            other = next(c.id for c in garage.initial.classes
                         if c.id != first["class_id"])
            rec("POST", f"/sessions/{token}/moves", {**first, "class_id": other})
            rec("GET", f"/sessions/{token}/flows")
            rec("POST", f"/sessions/{token}/finish")
            rec("GET", f"/players/{PLAYER}/tree")

    # tokens are random per run: normalize so the stub can match paths
    for step in steps:
        step["path"] = step["path"].replace(token, "TOKEN")
        if isinstance(step["response"], dict) and step["response"].get("token") == token:
            step["response"]["token"] = "TOKEN"

    OUT.mkdir(parents=True, exist_ok=True)
    payload = {
        "recorded_with": f"designdojo {__version__}",
        "player": PLAYER,
        "puzzle": PUZZLE,
        "steps": steps,
    }
    out_file = OUT / "walkthrough.json"
    out_file.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                        encoding="utf-8")
    print(f"wrote {out_file} ({len(steps)} steps)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
