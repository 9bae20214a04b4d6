"""HTTP facade for live play and position analysis.

Sessions live in memory; every mutation flows through the validated
engine transition, so engine invariants hold for every stored session.
Optional snapshot persistence writes one JSON file per session and
restores on boot by replaying the recorded history.

Environment: SLS_PORT, SLS_STATE_DIR, SLS_SOLVE_MAX_CHIPS.
"""

from __future__ import annotations

import json
import logging
import os
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .classify import BoardError, analyze
from .engine import (
    Action,
    IllegalActionError,
    TerminalStateError,
    TransitionRecord,
    apply_action,
    decision_actor,
    legal_actions,
)
from .model import BLUE, Color, GameState, RED
from .serial import (
    SchemaError,
    action_from_dict,
    action_to_dict,
    state_from_dict,
    state_to_dict,
)
from .solver import solve
from .strategy import Policy, StrategyS, make_policy

log = logging.getLogger("sls.service")

DEFAULT_SOLVE_MAX_CHIPS = 8
DEFAULT_SOLVE_MAX_PILES = 4


class ServiceError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status
        self.message = message


@dataclass
class Session:
    session_id: str
    human: Color
    engine_policy_spec: str
    policy: Policy
    initial_state: GameState
    state: GameState
    history: List[Tuple[Color, Action]] = field(default_factory=list)
    created: str = ""
    updated: str = ""
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _human_actions(state: GameState, human: Color) -> List[Dict[str, Any]]:
    if state.winner is not None:
        return []
    if decision_actor(state) is not human:
        return []
    return [action_to_dict(action) for _, action in legal_actions(state)]


class Analyzer:
    """Stateless analysis with a bounded exact-solve add-on."""

    def __init__(self, solve_max_chips: int, solve_max_piles: int):
        self.solve_max_chips = solve_max_chips
        self.solve_max_piles = solve_max_piles

    def report(self, state: GameState) -> Optional[Dict[str, Any]]:
        try:
            info = analyze(state)
        except BoardError:
            return None  # mid-capture boards have no round-boundary summary
        total_chips = state.pile_total + state.blue.total + state.red.total
        solver_block = None
        provenance = "predicate (proved optimal)"
        if (
            state.winner is None
            and total_chips <= self.solve_max_chips
            and len(state.board) <= self.solve_max_piles
        ):
            result = solve(state, want_pv=False)
            solver_block = {"winner": result.winner.value, "nodes": result.nodes}
            provenance = "solver-verified"
        return {
            "summary": {
                "empty_piles": info.summary.empty_piles,
                "red_singletons": info.summary.red_singletons,
                "blue_singletons": info.summary.blue_singletons,
                "long_red": list(info.summary.long_red),
                "long_blue": list(info.summary.long_blue),
            },
            "board_type": info.board_type.value,
            "active": info.active.value,
            "active_wins": info.active_wins,
            "nu": info.nu,
            "mu": info.mu,
            "solver": solver_block,
            "provenance": provenance,
        }


class SessionStore:
    def __init__(self, state_dir: Optional[str], analyzer: Analyzer):
        self.sessions: Dict[str, Session] = {}
        self.analyzer = analyzer
        self.state_dir = Path(state_dir) if state_dir else None
        self._registry_lock = threading.Lock()
        if self.state_dir:
            self.state_dir.mkdir(parents=True, exist_ok=True)
            self._restore_all()

    # -- persistence -------------------------------------------------------

    def _snapshot_path(self, session_id: str) -> Path:
        assert self.state_dir is not None
        return self.state_dir / f"{session_id}.json"

    def snapshot(self, session: Session) -> None:
        if not self.state_dir:
            return
        payload = {
            "session_id": session.session_id,
            "human": session.human.value,
            "engine_policy": session.engine_policy_spec,
            "initial_state": state_to_dict(session.initial_state),
            "history": [
                {"actor": actor.value, "action": action_to_dict(action)}
                for actor, action in session.history
            ],
            "created": session.created,
            "updated": session.updated,
        }
        path = self._snapshot_path(session.session_id)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, sort_keys=True), encoding="utf-8")
        tmp.replace(path)

    def _restore_all(self) -> None:
        assert self.state_dir is not None
        for path in sorted(self.state_dir.glob("*.json")):
            try:
                session = self._restore_one(path)
            except Exception as exc:
                log.error("integrity error in snapshot %s: %s; session skipped", path, exc)
                continue
            self.sessions[session.session_id] = session

    def _restore_one(self, path: Path) -> Session:
        payload = json.loads(path.read_text(encoding="utf-8"))
        human = Color(payload["human"])
        policy = make_policy(payload["engine_policy"])
        initial = state_from_dict(payload["initial_state"])
        state = initial
        history: List[Tuple[Color, Action]] = []
        # Replay validates every recorded move and, for engine moves,
        # re-derives the policy choice so seeded generators resume exactly.
        for item in payload["history"]:
            actor = Color(item["actor"])
            action = action_from_dict(item["action"])
            if actor is not human:
                pairs = legal_actions(state)
                expected = policy.choose(state, actor, [a for _, a in pairs])
                if expected != action:
                    raise ValueError(
                        f"engine move mismatch during replay: {action!r} != {expected!r}"
                    )
            state = apply_action(state, actor, action).state
        history = [
            (Color(item["actor"]), action_from_dict(item["action"]))
            for item in payload["history"]
        ]
        return Session(
            session_id=payload["session_id"],
            human=human,
            engine_policy_spec=payload["engine_policy"],
            policy=policy,
            initial_state=initial,
            state=state,
            history=history,
            created=payload.get("created", _now()),
            updated=payload.get("updated", _now()),
        )

    # -- session operations ------------------------------------------------

    def create(self, state: GameState, human: Color, policy_spec: str) -> Tuple[Session, List[TransitionRecord]]:
        if state.winner is not None:
            raise ServiceError(400, "initial state is already decided")
        try:
            policy = make_policy(policy_spec)
        except ValueError as exc:
            raise ServiceError(400, str(exc))
        session = Session(
            session_id=uuid.uuid4().hex,
            human=human,
            engine_policy_spec=policy_spec,
            policy=policy,
            initial_state=state,
            state=state,
            created=_now(),
            updated=_now(),
        )
        transitions = self._advance_engine(session)
        with self._registry_lock:
            self.sessions[session.session_id] = session
        self.snapshot(session)
        return session, transitions

    def get(self, session_id: str) -> Session:
        session = self.sessions.get(session_id)
        if session is None:
            raise ServiceError(404, f"unknown session {session_id}")
        return session

    def _advance_engine(self, session: Session) -> List[TransitionRecord]:
        """Apply engine decisions up to the next human decision point."""
        out: List[TransitionRecord] = []
        while session.state.winner is None:
            actor = decision_actor(session.state)
            if actor is session.human:
                break
            pairs = legal_actions(session.state)
            action = session.policy.choose(session.state, actor, [a for _, a in pairs])
            record = apply_action(session.state, actor, action)
            session.history.append((actor, action))
            session.state = record.state
            out.append(record)
        session.updated = _now()
        return out

    def act(self, session: Session, action: Action) -> List[TransitionRecord]:
        with session.lock:
            state = session.state
            if state.winner is not None:
                raise ServiceError(409, "game is already over")
            if decision_actor(state) is not session.human:
                raise ServiceError(409, "it is not the human player's decision")
            try:
                record = apply_action(state, session.human, action)
            except IllegalActionError as exc:
                raise ServiceError(409, str(exc))
            session.history.append((session.human, action))
            session.state = record.state
            transitions = [record] + self._advance_engine(session)
            self.snapshot(session)
            return transitions


def _session_view(store: SessionStore, session: Session) -> Dict[str, Any]:
    return {
        "session_id": session.session_id,
        "human": session.human.value,
        "engine_policy": session.engine_policy_spec,
        "state": state_to_dict(session.state),
        "legal_actions": _human_actions(session.state, session.human),
        "analysis": store.analyzer.report(session.state),
        "created": session.created,
        "updated": session.updated,
    }


def _transition_dicts(records: List[TransitionRecord]) -> List[Dict[str, Any]]:
    return [
        {
            "actor": record.actor.value,
            "action": action_to_dict(record.action),
            "state": state_to_dict(record.state),
            "capture": record.capture,
            "round_ended": record.round_ended,
        }
        for record in records
    ]


def _color_from_payload(raw: Any, where: str) -> Color:
    if raw == "b":
        return BLUE
    if raw == "r":
        return RED
    raise ServiceError(400, f"{where}: expected 'b' or 'r'")


def create_app(
    state_dir: Optional[str] = None,
    solve_max_chips: Optional[int] = None,
    solve_max_piles: int = DEFAULT_SOLVE_MAX_PILES,
) -> FastAPI:
    if state_dir is None:
        state_dir = os.environ.get("SLS_STATE_DIR") or None
    if solve_max_chips is None:
        solve_max_chips = int(os.environ.get("SLS_SOLVE_MAX_CHIPS", DEFAULT_SOLVE_MAX_CHIPS))
    analyzer = Analyzer(solve_max_chips, solve_max_piles)
    store = SessionStore(state_dir, analyzer)
    app = FastAPI(title="sls endgame service")
    app.state.store = store

    @app.exception_handler(ServiceError)
    async def _service_error(_request: Request, exc: ServiceError):
        return JSONResponse(status_code=exc.status, content={"error": exc.message})

    async def _json_body(request: Request) -> Any:
        try:
            return await request.json()
        except Exception:
            raise ServiceError(400, "request body is not valid JSON")

    @app.post("/sessions")
    async def create_session(request: Request):
        payload = await _json_body(request)
        if not isinstance(payload, dict):
            raise ServiceError(400, "expected a JSON object")
        try:
            state = state_from_dict(payload.get("state"))
        except SchemaError as exc:
            raise ServiceError(400, str(exc))
        human = _color_from_payload(payload.get("human"), "human")
        policy_spec = payload.get("engine_policy", "s")
        if not isinstance(policy_spec, str):
            raise ServiceError(400, "engine_policy: expected a string")
        session, transitions = store.create(state, human, policy_spec)
        view = _session_view(store, session)
        view["transitions"] = _transition_dicts(transitions)
        return JSONResponse(status_code=201, content=view)

    @app.get("/sessions/{session_id}")
    async def get_session(session_id: str):
        session = store.get(session_id)
        return _session_view(store, session)

    @app.post("/sessions/{session_id}/actions")
    async def post_action(session_id: str, request: Request):
        session = store.get(session_id)
        payload = await _json_body(request)
        if not isinstance(payload, dict):
            raise ServiceError(400, "expected a JSON object")
        try:
            action = action_from_dict(payload.get("action"))
        except SchemaError as exc:
            raise ServiceError(400, str(exc))
        transitions = store.act(session, action)
        view = _session_view(store, session)
        view["transitions"] = _transition_dicts(transitions)
        return view

    @app.get("/sessions/{session_id}/hint")
    async def hint(session_id: str):
        session = store.get(session_id)
        state = session.state
        if state.winner is not None:
            return {"action": None, "reason": "game over"}
        if decision_actor(state) is not session.human:
            return {"action": None, "reason": "not the human player's decision"}
        pairs = legal_actions(state)
        action = StrategyS().choose(state, session.human, [a for _, a in pairs])
        return {"action": action_to_dict(action), "reason": None}

    @app.get("/analyze")
    async def analyze_endpoint(state: str):
        try:
            parsed = state_from_dict(json.loads(state))
        except (json.JSONDecodeError, SchemaError) as exc:
            raise ServiceError(400, f"state: {exc}")
        report = store.analyzer.report(parsed)
        if report is None:
            raise ServiceError(400, "state is not analyzable (pending capture)")
        return report

    return app
