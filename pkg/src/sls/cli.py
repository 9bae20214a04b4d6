"""Command-line entry point.

Subcommands: ``eval`` (position analysis), ``solve`` (exact winner plus
principal variation), ``verify`` (theorem sweeps), ``play`` (policy
playouts with a streamed transition log), ``serve`` (HTTP service).

Exit statuses are stable: 0 ok, 2 input error, 3 verification failure.
Hands are written ``guards,prisoners`` per player.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from .classify import analyze
from .engine import playout
from .model import (
    BLUE,
    Color,
    GameState,
    Hand,
    NotationError,
    RED,
    parse_board,
)
from .serial import (
    action_to_dict,
    format_action_text,
    format_state_text,
    state_to_dict,
)
from .solver import Bounds, solve
from .verify import DEFAULT_SEED, THEOREM_IDS, verify_theorem

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VERIFY = 3


class InputError(Exception):
    pass


def _parse_hand(text: str, flag: str) -> Hand:
    try:
        guards, prisoners = (int(part) for part in text.split(","))
        return Hand(guards, prisoners)
    except ValueError as exc:
        raise InputError(f"--{flag}: expected 'guards,prisoners', got {text!r} ({exc})")


def _parse_color(text: str) -> Color:
    if text == "b":
        return BLUE
    if text == "r":
        return RED
    raise InputError(f"--active: expected 'b' or 'r', got {text!r}")


def _state_from_args(args: argparse.Namespace) -> GameState:
    try:
        board = parse_board(args.board)
    except NotationError as exc:
        raise InputError(f"--board: {exc}")
    return GameState(
        board=board,
        blue=_parse_hand(args.blue, "blue"),
        red=_parse_hand(args.red, "red"),
        active=_parse_color(args.active),
    )


def _add_state_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--board", required=True, help="piles comma-separated, `_` empty")
    parser.add_argument(
        "--blue", default="0,0", help="blue hand as guards,prisoners (default 0,0)"
    )
    parser.add_argument(
        "--red", default="0,0", help="red hand as guards,prisoners (default 0,0)"
    )
    parser.add_argument("--active", required=True, choices=("b", "r"))


def _add_format_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=("text", "records"),
        default="text",
        help="records = line-delimited JSON",
    )


def _analysis_dict(state: GameState) -> dict:
    report = analyze(state)
    return {
        "state": state_to_dict(state),
        "summary": {
            "empty_piles": report.summary.empty_piles,
            "red_singletons": report.summary.red_singletons,
            "blue_singletons": report.summary.blue_singletons,
            "long_red": list(report.summary.long_red),
            "long_blue": list(report.summary.long_blue),
        },
        "board_type": report.board_type.value,
        "active": report.active.value,
        "active_wins": report.active_wins,
        "nu": report.nu,
        "mu": report.mu,
    }


def _cmd_eval(args: argparse.Namespace) -> int:
    state = _state_from_args(args)
    try:
        info = _analysis_dict(state)
    except ValueError as exc:
        raise InputError(str(exc))
    if args.format == "records":
        print(json.dumps(info, sort_keys=True))
        return EXIT_OK
    summary = info["summary"]
    print(f"state: {format_state_text(state)}")
    print(
        "summary: empty={empty_piles} red_singletons={red_singletons} "
        "blue_singletons={blue_singletons} long_red={long_red} "
        "long_blue={long_blue}".format(**summary)
    )
    print(f"type: {info['board_type']}")
    verdict = "win" if info["active_wins"] else "loss"
    print(f"predicate: {verdict} for active player {info['active']}")
    print(f"nu: {info['nu']}")
    print(f"mu: {info['mu']}")
    return EXIT_OK


def _cmd_solve(args: argparse.Namespace) -> int:
    state = _state_from_args(args)
    result = solve(state)
    if args.format == "records":
        print(
            json.dumps(
                {
                    "state": state_to_dict(state),
                    "winner": result.winner.value,
                    "principal_variation": [
                        {"actor": actor.value, "action": action_to_dict(action)}
                        for actor, action in result.principal_variation
                    ],
                    "nodes": result.nodes,
                    "memo_hits": result.memo_hits,
                },
                sort_keys=True,
            )
        )
        return EXIT_OK
    print(f"state: {format_state_text(state)}")
    print(f"winner: {result.winner.value}")
    print(f"nodes: {result.nodes}")
    print(f"memo_hits: {result.memo_hits}")
    for actor, action in result.principal_variation:
        print(f"pv: {format_action_text(actor, action)}")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    try:
        bounds = Bounds(args.piles, args.max_pile_len, args.max_hand)
    except ValueError as exc:
        raise InputError(str(exc))
    report = verify_theorem(
        args.theorem,
        bounds,
        workers=args.workers,
        playouts=args.playouts,
        seed=args.seed,
    )
    if args.format == "records":
        print(
            json.dumps(
                {
                    "check": report.check,
                    "states": report.states,
                    "agreements": report.agreements,
                    "disagreements": report.disagreements,
                    "by_type": report.by_type,
                    "seed": report.seed,
                    "wall_time": report.wall_time,
                    "ok": report.ok,
                },
                sort_keys=True,
            )
        )
    else:
        for line in report.lines():
            print(line)
    return EXIT_OK if report.ok else EXIT_VERIFY


def _cmd_play(args: argparse.Namespace) -> int:
    state = _state_from_args(args)
    try:
        winner, records = playout(state, args.blue_policy, args.red_policy, seed=args.seed)
    except ValueError as exc:
        raise InputError(str(exc))
    for record in records:
        if args.format == "records":
            print(
                json.dumps(
                    {
                        "actor": record.actor.value,
                        "action": action_to_dict(record.action),
                        "state": state_to_dict(record.state),
                        "capture": record.capture,
                        "round_ended": record.round_ended,
                    },
                    sort_keys=True,
                )
            )
        else:
            print(
                f"move: {format_action_text(record.actor, record.action)} -> "
                f"{format_state_text(record.state)}"
            )
    if args.format != "records":
        print(f"winner: {winner.value}")
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    state_dir = args.state_dir or os.environ.get("SLS_STATE_DIR")
    app = create_app(state_dir=state_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sls",
        description="Two-player, two-color endgame engine, solver, and verifier.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="closed-form analysis of one position")
    _add_state_flags(p_eval)
    _add_format_flag(p_eval)
    p_eval.set_defaults(func=_cmd_eval)

    p_solve = sub.add_parser("solve", help="exact winner with principal variation")
    _add_state_flags(p_solve)
    _add_format_flag(p_solve)
    p_solve.set_defaults(func=_cmd_solve)

    p_verify = sub.add_parser("verify", help="exhaustive theorem sweeps")
    p_verify.add_argument("--theorem", required=True, choices=THEOREM_IDS)
    p_verify.add_argument("--piles", type=int, required=True)
    p_verify.add_argument("--max-pile-len", type=int, required=True)
    p_verify.add_argument("--max-hand", type=int, required=True)
    p_verify.add_argument("--workers", type=int, default=1)
    p_verify.add_argument("--playouts", type=int, default=10_000)
    p_verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    _add_format_flag(p_verify)
    p_verify.set_defaults(func=_cmd_verify)

    p_play = sub.add_parser("play", help="run two policies to termination")
    _add_state_flags(p_play)
    p_play.add_argument(
        "--blue-policy",
        "--blue-p",
        dest="blue_policy",
        default="s",
        help="s | random[:seed] | adversarial | scripted:<file>",
    )
    p_play.add_argument("--red-policy", dest="red_policy", default="s")
    p_play.add_argument("--seed", type=int, default=0)
    _add_format_flag(p_play)
    p_play.set_defaults(func=_cmd_play)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--port", type=int, default=int(os.environ.get("SLS_PORT", "8000")))
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--state-dir", default=None)
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
