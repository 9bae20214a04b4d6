"""Wire and text codecs shared by the CLI, the service, and snapshots.

JSON state schema:
    {"board": ["_"|"<b/r letters bottom-to-top>", ...],
     "blue": {"guards": int, "prisoners": int},
     "red": {"guards": int, "prisoners": int},
     "active": "b"|"r",
     "phase": {"kind": ..., "pile": int?, "color": "b"|"r"?},
     "winner": "b"|"r"|null}

JSON action schema:
    {"type": "place"|"capture_discard"|"discard_prisoner"|"donate_prisoner"|"rescue",
     "pile": int?, "color": "b"|"r"?, "donate": bool?}
"""

from __future__ import annotations

from typing import Any, Dict, Optional

from .engine import (
    Action,
    CaptureDiscard,
    DiscardPrisoner,
    DonatePrisoner,
    Place,
    RescueDecision,
)
from .model import (
    AWAIT_RESCUE,
    AwaitCaptureDiscard,
    AwaitRescueDonation,
    Color,
    GameState,
    Hand,
    IN_ROUND,
    InRound,
    NotationError,
    Phase,
    TURN_START,
    TurnStart,
    format_board,
    format_pile,
    parse_board,
    parse_pile,
)


class SchemaError(ValueError):
    """Raised for malformed wire payloads."""


def _color_from(text: Any, where: str) -> Color:
    if text == "b":
        return Color.BLUE
    if text == "r":
        return Color.RED
    raise SchemaError(f"{where}: expected 'b' or 'r', got {text!r}")


def _count_from(value: Any, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise SchemaError(f"{where}: expected a non-negative integer, got {value!r}")
    return value


def hand_to_dict(hand: Hand) -> Dict[str, int]:
    return {"guards": hand.guards, "prisoners": hand.prisoners}


def hand_from_dict(raw: Any, where: str) -> Hand:
    if not isinstance(raw, dict):
        raise SchemaError(f"{where}: expected an object")
    return Hand(
        _count_from(raw.get("guards"), f"{where}.guards"),
        _count_from(raw.get("prisoners"), f"{where}.prisoners"),
    )


def phase_to_dict(phase: Phase) -> Dict[str, Any]:
    if isinstance(phase, TurnStart):
        return {"kind": "turn_start"}
    if isinstance(phase, InRound):
        return {"kind": "in_round"}
    if isinstance(phase, AwaitRescueDonation):
        return {"kind": "await_rescue_donation"}
    return {
        "kind": "await_capture_discard",
        "pile": phase.pile,
        "color": phase.color.value,
    }


def phase_from_dict(raw: Any) -> Phase:
    if not isinstance(raw, dict):
        raise SchemaError("phase: expected an object")
    kind = raw.get("kind")
    if kind == "turn_start":
        return TURN_START
    if kind == "in_round":
        return IN_ROUND
    if kind == "await_rescue_donation":
        return AWAIT_RESCUE
    if kind == "await_capture_discard":
        return AwaitCaptureDiscard(
            _count_from(raw.get("pile"), "phase.pile"),
            _color_from(raw.get("color"), "phase.color"),
        )
    raise SchemaError(f"phase.kind: unknown kind {kind!r}")


def state_to_dict(state: GameState) -> Dict[str, Any]:
    return {
        "board": [format_pile(p) for p in state.board],
        "blue": hand_to_dict(state.blue),
        "red": hand_to_dict(state.red),
        "active": state.active.value,
        "phase": phase_to_dict(state.phase),
        "winner": None if state.winner is None else state.winner.value,
    }


def state_from_dict(raw: Any) -> GameState:
    if not isinstance(raw, dict):
        raise SchemaError("state: expected an object")
    board_raw = raw.get("board")
    if not isinstance(board_raw, list) or not board_raw:
        raise SchemaError("state.board: expected a non-empty list of pile strings")
    try:
        board = tuple(parse_pile(p) for p in board_raw)
    except (NotationError, TypeError) as exc:
        raise SchemaError(f"state.board: {exc}") from exc
    winner_raw = raw.get("winner")
    try:
        return GameState(
            board=board,
            blue=hand_from_dict(raw.get("blue"), "state.blue"),
            red=hand_from_dict(raw.get("red"), "state.red"),
            active=_color_from(raw.get("active"), "state.active"),
            phase=phase_from_dict(raw.get("phase", {"kind": "turn_start"})),
            winner=None if winner_raw is None else _color_from(winner_raw, "state.winner"),
        )
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def action_to_dict(action: Action) -> Dict[str, Any]:
    if isinstance(action, Place):
        return {"type": "place", "pile": action.pile, "color": action.color.value}
    if isinstance(action, CaptureDiscard):
        return {"type": "capture_discard", "color": action.color.value}
    if isinstance(action, DiscardPrisoner):
        return {"type": "discard_prisoner"}
    if isinstance(action, DonatePrisoner):
        return {"type": "donate_prisoner"}
    if isinstance(action, RescueDecision):
        return {"type": "rescue", "donate": action.donate}
    raise SchemaError(f"unknown action {action!r}")


def action_from_dict(raw: Any) -> Action:
    if not isinstance(raw, dict):
        raise SchemaError("action: expected an object")
    kind = raw.get("type")
    if kind == "place":
        return Place(
            _count_from(raw.get("pile"), "action.pile"),
            _color_from(raw.get("color"), "action.color"),
        )
    if kind == "capture_discard":
        return CaptureDiscard(_color_from(raw.get("color"), "action.color"))
    if kind == "discard_prisoner":
        return DiscardPrisoner()
    if kind == "donate_prisoner":
        return DonatePrisoner()
    if kind == "rescue":
        donate = raw.get("donate")
        if not isinstance(donate, bool):
            raise SchemaError("action.donate: expected a boolean")
        return RescueDecision(donate)
    raise SchemaError(f"action.type: unknown type {kind!r}")


_PHASE_TEXT = {
    "turn_start": TURN_START,
    "in_round": IN_ROUND,
    "await_rescue_donation": AWAIT_RESCUE,
}


def format_state_text(state: GameState) -> str:
    """One-line state form used by CLI output; round-trips via parse_state_text."""
    phase = phase_to_dict(state.phase)
    parts = [
        f"board={format_board(state.board)}",
        f"blue={state.blue.guards},{state.blue.prisoners}",
        f"red={state.red.guards},{state.red.prisoners}",
        f"active={state.active.value}",
    ]
    if phase["kind"] == "await_capture_discard":
        parts.append(f"phase=await_capture_discard:{phase['pile']}:{phase['color']}")
    else:
        parts.append(f"phase={phase['kind']}")
    if state.winner is not None:
        parts.append(f"winner={state.winner.value}")
    return ";".join(parts)


def parse_state_text(text: str) -> GameState:
    fields: Dict[str, str] = {}
    for part in text.strip().split(";"):
        if "=" not in part:
            raise NotationError(f"bad state field {part!r}")
        key, value = part.split("=", 1)
        fields[key] = value
    try:
        board = parse_board(fields["board"])
        bg, bp = (int(x) for x in fields["blue"].split(","))
        rg, rp = (int(x) for x in fields["red"].split(","))
        active = _color_from(fields["active"], "active")
    except KeyError as exc:
        raise NotationError(f"missing state field {exc}") from exc
    phase_text = fields.get("phase", "turn_start")
    if phase_text.startswith("await_capture_discard:"):
        _, pile, color = phase_text.split(":")
        phase: Phase = AwaitCaptureDiscard(int(pile), _color_from(color, "phase"))
    elif phase_text in _PHASE_TEXT:
        phase = _PHASE_TEXT[phase_text]
    else:
        raise NotationError(f"unknown phase {phase_text!r}")
    winner = fields.get("winner")
    return GameState(
        board=board,
        blue=Hand(bg, bp),
        red=Hand(rg, rp),
        active=active,
        phase=phase,
        winner=None if winner is None else _color_from(winner, "winner"),
    )


def format_action_text(actor: Color, action: Action) -> str:
    raw = action_to_dict(action)
    kind = raw.pop("type")
    extras = " ".join(str(v) for v in raw.values())
    return f"{actor.value} {kind} {extras}".strip()
