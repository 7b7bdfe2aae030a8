"""HTTP facade over the engine and progression modules.

The service is a thin adapter: every request maps onto the same library
calls a headless client would make, and save files on disk are
byte-identical either way.  Session tokens live in memory; an interrupted
session is recoverable because each accepted move persists a snapshot in
the player's save file.
"""
from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Callable, Optional, Union

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import __version__
from .engine import Session as EngineSession
from .engine import finish as engine_finish
from .engine import play_move, replay, snapshot_event, start_session
from .errors import (
    DesignDojoError,
    DuplicatePlacementError,
    LockedPuzzleError,
    NotAcceptedError,
    UnknownIdError,
    UnknownPlayerError,
    UnknownSessionError,
)
from .flows import derive_flows
from .packio import PuzzlePack, load_bundled_pack
from .progression import SaveGame, SaveStore, complete, resume_point, unlocked
from .puzzle import PuzzleDef
from .serialize import (
    design_to_dict,
    feedback_to_dict,
    flow_graph_to_dict,
    move_from_dict,
    report_to_dict,
    session_to_dict,
)

Clock = Callable[[], float]


@dataclass
class ApiSession:
    token: str
    player_name: str
    puzzle_id: str
    session: EngineSession


class GameService:
    """Pack + save store + live sessions behind a small method surface.

    Mutations touching one player's save (and any session of theirs) are
    serialized by a per-player lock; the session/lock tables share one
    registry lock.  The HTTP layer is a 1:1 adapter over these methods.
    """

    def __init__(
        self,
        pack: PuzzlePack,
        data_dir: Union[str, Path],
        clock: Clock = time.time,
        cbo_warning_threshold: Optional[int] = None,
    ):
        if cbo_warning_threshold is not None:
            pack = replace(
                pack,
                puzzles=tuple(
                    replace(p, cbo_warning_threshold=cbo_warning_threshold)
                    for p in pack.puzzles
                ),
            )
        self.pack = pack
        self.store = SaveStore(data_dir)
        self.clock = clock
        self._registry = threading.Lock()
        self._player_locks: dict[str, threading.RLock] = {}
        self._sessions: dict[str, ApiSession] = {}
        self._token_by_play: dict[tuple[str, str], str] = {}

    # -- internals ----------------------------------------------------------

    def _lock_for(self, player_name: str) -> threading.RLock:
        with self._registry:
            return self._player_locks.setdefault(player_name, threading.RLock())

    def _load_save(self, player_name: str) -> SaveGame:
        save = self.store.load(player_name)
        if save is None:
            raise UnknownPlayerError(player_name)
        return save

    def _puzzle(self, puzzle_id: str) -> PuzzleDef:
        if not self.pack.has_puzzle(puzzle_id):
            raise UnknownIdError("puzzle", puzzle_id)
        return self.pack.puzzle_by_id(puzzle_id)

    def _api_session(self, token: str) -> ApiSession:
        with self._registry:
            api = self._sessions.get(token)
        if api is None:
            raise UnknownSessionError(token)
        return api

    def _tree_payload(self, save: SaveGame) -> dict[str, Any]:
        open_ids = unlocked(self.pack.tree, save)
        rows = []
        for puzzle in self.pack.puzzles:
            record = save.completed.get(puzzle.id)
            if record is not None:
                status = "completed"
            elif puzzle.id in open_ids:
                status = "unlocked"
            else:
                status = "locked"
            rows.append({
                "id": puzzle.id,
                "title": puzzle.title,
                "principles": sorted(puzzle.principles),
                "prerequisites": sorted(self.pack.tree.prerequisites[puzzle.id]),
                "status": status,
                "best_score": record.best_composite if record else None,
                "completed_at": record.completed_at if record else None,
            })
        return {
            "player": save.player_name,
            "puzzles": rows,
            "resume_point": resume_point(self.pack.tree, save),
        }

    # -- player/tree ----------------------------------------------------------

    def create_player(self, name: str) -> dict[str, Any]:
        """Create the save if it does not exist; either way return the tree."""
        lock = self._lock_for(name)
        with lock:
            save = self.store.load(name)
            created = save is None
            if save is None:
                save = SaveGame(player_name=name)
                self.store.store(save)
            payload = self._tree_payload(save)
            payload["created"] = created
            return payload

    def tree(self, player_name: str) -> dict[str, Any]:
        with self._lock_for(player_name):
            return self._tree_payload(self._load_save(player_name))

    # -- sessions -------------------------------------------------------------

    def start(self, player_name: str, puzzle_id: str, fresh: bool = False) -> dict[str, Any]:
        """Open (or resume) a session on an unlocked puzzle."""
        puzzle = self._puzzle(puzzle_id)
        lock = self._lock_for(player_name)
        with lock:
            save = self._load_save(player_name)
            if puzzle_id not in unlocked(self.pack.tree, save):
                missing = tuple(sorted(
                    self.pack.tree.prerequisites[puzzle_id] - set(save.completed)
                ))
                raise LockedPuzzleError(puzzle_id, missing)

            snapshot = save.active_session
            resumable = (
                not fresh
                and snapshot is not None
                and snapshot.get("puzzle_id") == puzzle_id
                and not snapshot.get("finished")
            )
            if resumable:
                moves = [move_from_dict(m) for m in snapshot.get("moves", ())]
                session = replay(puzzle, moves)
                event = snapshot_event(session)
            else:
                session, event = start_session(puzzle)

            token = secrets.token_urlsafe(16)
            api = ApiSession(token, player_name, puzzle_id, session)
            with self._registry:
                old = self._token_by_play.pop((player_name, puzzle_id), None)
                if old:
                    self._sessions.pop(old, None)
                self._sessions[token] = api
                self._token_by_play[(player_name, puzzle_id)] = token

            save = replace(save, active_session=session_to_dict(session))
            self.store.store(save)
            return {
                "token": token,
                "puzzle_id": puzzle_id,
                "assignment": list(puzzle.assignment),
                "resumed": bool(resumable),
                "design": design_to_dict(session.design),
                "feedback": feedback_to_dict(event),
            }

    def move(self, token: str, move_payload: dict[str, Any]) -> dict[str, Any]:
        api = self._api_session(token)
        move = move_from_dict(move_payload)
        with self._lock_for(api.player_name):
            session, event = play_move(api.session, move)
            if session is not api.session:  # accepted move: persist snapshot
                api.session = session
                save = self._load_save(api.player_name)
                save = replace(save, active_session=session_to_dict(session))
                self.store.store(save)
            out = feedback_to_dict(event)
            # board state rides beside the feedback so clients render server
            # truth (created classes get their ids from here)
            out["design"] = design_to_dict(session.design)
            return out

    def session_state(self, token: str) -> dict[str, Any]:
        api = self._api_session(token)
        with self._lock_for(api.player_name):
            session = api.session
            return {
                "token": token,
                "puzzle_id": api.puzzle_id,
                "assignment": list(session.puzzle.assignment),
                "finished": session.finished,
                "design": design_to_dict(session.design),
                "feedback": feedback_to_dict(snapshot_event(session)),
            }

    def flows(self, token: str) -> dict[str, Any]:
        api = self._api_session(token)
        with self._lock_for(api.player_name):
            graph = derive_flows(api.session.design)
        payload = flow_graph_to_dict(graph)
        payload["notes"] = [
            {"src": n.src, "dst": n.dst, "note": n.note}
            for n in self.pack.flow_notes
            if n.puzzle == api.puzzle_id
        ]
        return payload

    def finish(self, token: str) -> dict[str, Any]:
        api = self._api_session(token)
        with self._lock_for(api.player_name):
            already_done = api.session.finished
            session, event = engine_finish(api.session)
            api.session = session
            save = self._load_save(api.player_name)
            before = unlocked(self.pack.tree, save)
            if not already_done:  # finishing twice must not re-record
                save = complete(
                    self.pack.tree, save, api.puzzle_id, session.last_report,
                    now=self.clock(),
                )
                self.store.store(save)
            after = unlocked(self.pack.tree, save)
            return {
                "report": report_to_dict(session.last_report),
                "feedback": feedback_to_dict(event),
                "best_score": save.best_score(api.puzzle_id),
                "newly_unlocked": sorted(after - before),
                "resume_point": resume_point(self.pack.tree, save),
            }

    # -- pack -----------------------------------------------------------------

    def pack_meta(self) -> dict[str, Any]:
        return {
            "id": self.pack.id,
            "title": self.pack.title,
            "version": self.pack.version,
            "metadata": self.pack.metadata,
            "puzzle_count": len(self.pack.puzzles),
            "roots": list(self.pack.tree.roots()),
        }


_STATUS_BY_ERROR: list[tuple[type, int]] = [
    (UnknownPlayerError, 404),
    (UnknownSessionError, 404),
    (UnknownIdError, 404),
    (LockedPuzzleError, 409),
    (NotAcceptedError, 409),
    (DuplicatePlacementError, 409),
    (DesignDojoError, 400),
]


def _error_detail(exc: DesignDojoError) -> Optional[dict[str, Any]]:
    if isinstance(exc, NotAcceptedError):
        return {
            "progress": float(exc.progress) if exc.progress is not None else None,
            "failures": list(exc.failures),
        }
    if isinstance(exc, LockedPuzzleError):
        return {"puzzle_id": exc.puzzle_id, "missing": list(exc.missing)}
    if isinstance(exc, UnknownIdError):
        return {"kind": exc.kind, "ident": exc.ident}
    return None


def create_app(
    pack: Optional[PuzzlePack] = None,
    data_dir: Union[str, Path] = "./data",
    clock: Clock = time.time,
    cbo_warning_threshold: Optional[int] = None,
    static_dir: Optional[Union[str, Path]] = None,
) -> FastAPI:
    service = GameService(
        pack if pack is not None else load_bundled_pack(),
        data_dir,
        clock=clock,
        cbo_warning_threshold=cbo_warning_threshold,
    )
    app = FastAPI(title="designdojo", version=__version__)
    app.state.service = service

    @app.exception_handler(DesignDojoError)
    async def on_domain_error(request: Request, exc: DesignDojoError):
        status = next(s for klass, s in _STATUS_BY_ERROR if isinstance(exc, klass))
        return JSONResponse(
            status_code=status,
            content={"code": exc.code, "message": str(exc), "detail": _error_detail(exc)},
        )

    @app.exception_handler(ValueError)
    async def on_value_error(request: Request, exc: ValueError):
        return JSONResponse(
            status_code=400,
            content={"code": "invalid_request", "message": str(exc), "detail": None},
        )

    @app.post("/players")
    def create_player(body: dict):
        name = body.get("name")
        if not isinstance(name, str):
            raise ValueError("body must carry a string 'name'")
        return service.create_player(name)

    @app.get("/players/{name}/tree")
    def get_tree(name: str):
        return service.tree(name)

    @app.post("/players/{name}/sessions")
    def start_session_route(name: str, body: dict):
        puzzle_id = body.get("puzzle_id")
        if not isinstance(puzzle_id, str):
            raise ValueError("body must carry a string 'puzzle_id'")
        return service.start(name, puzzle_id, fresh=bool(body.get("fresh", False)))

    @app.post("/sessions/{token}/moves")
    def post_move(token: str, body: dict):
        return service.move(token, body)

    @app.get("/sessions/{token}")
    def get_session(token: str):
        return service.session_state(token)

    @app.get("/sessions/{token}/flows")
    def get_flows(token: str):
        return service.flows(token)

    @app.post("/sessions/{token}/finish")
    def post_finish(token: str):
        return service.finish(token)

    @app.get("/packs/current")
    def get_pack():
        return service.pack_meta()

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
