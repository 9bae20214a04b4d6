"""Move-selection policies.

The sweep-and-place strategy (``StrategyS``) captures every own-topped
pile, discards all prisoners, then places a guard on the tallest
opponent-topped pile or an empty one. It never donates. Baselines:
uniform random, adversarially optimal, scripted replay, and a
deterministic fallback for a guardless player.
"""

from __future__ import annotations

import random
from typing import List, Optional, Sequence, Tuple

from .engine import (
    Action,
    CaptureDiscard,
    DiscardPrisoner,
    IllegalActionError,
    Place,
    PolicyError,
    RescueDecision,
    TransitionRecord,
    _apply,
    legal_actions,
)
from .model import (
    AwaitCaptureDiscard,
    Color,
    GameState,
    InRound,
    Pile,
    TurnStart,
    pile_count,
)


def capture_discard_choice(pile: Pile, own: Color) -> Color:
    """Which chip to discard when capturing ``pile``: opponent color if present."""
    return own.opponent if pile_count(pile, own.opponent) >= 1 else own


def fallback_action(state: GameState, actor: Color) -> Action:
    """Deterministic losing-side move for a guardless player with prisoners.

    Prefers an empty pile, then the shortest opponent-topped pile, then
    the shortest own-topped pile. Never donates.
    """
    hand = state.hand(actor)
    if hand.guards > 0 or hand.prisoners < 1:
        raise IllegalActionError("fallback applies only with zero guards and a prisoner")
    board = state.board
    empties = [i for i, p in enumerate(board) if not p]
    if empties:
        return Place(empties[0], actor.opponent)
    opp_tops = [i for i, p in enumerate(board) if p and p[-1] is actor.opponent]
    if opp_tops:
        best = min(opp_tops, key=lambda i: (len(board[i]), i))
        return Place(best, actor.opponent)
    own_tops = [i for i, p in enumerate(board) if p and p[-1] is actor]
    best = min(own_tops, key=lambda i: (len(board[i]), i))
    return Place(best, actor.opponent)


class Policy:
    """Base decision policy: one action per decision node."""

    # True when the choice is a pure function of the state, which lets the
    # solver memoize policy-constrained searches on canonical keys.
    deterministic = False

    def choose(self, state: GameState, actor: Color, actions: Sequence[Action]) -> Action:
        raise NotImplementedError


class StrategyS(Policy):
    """Decision-wise form of the sweep-and-place strategy.

    Well-defined whenever the actor holds a guard at their round start;
    otherwise falls back to ``fallback_action``.
    """

    deterministic = True

    def choose(self, state: GameState, actor: Color, actions: Sequence[Action]) -> Action:
        phase = state.phase
        if isinstance(phase, AwaitCaptureDiscard):
            return CaptureDiscard(capture_discard_choice(state.board[phase.pile], actor))
        if actor is not state.active:
            # rescue node: never donate
            return RescueDecision(False)
        hand = state.hand(actor)
        board = state.board
        if hand.guards < 1:
            return fallback_action(state, actor)
        own_tops = [i for i, p in enumerate(board) if p and p[-1] is actor]
        if own_tops:
            # capture sweep, tallest pile first (ties: lowest index)
            best = max(own_tops, key=lambda i: (len(board[i]), -i))
            return Place(best, actor)
        if hand.prisoners >= 1:
            return DiscardPrisoner()
        opp_tops = [i for i, p in enumerate(board) if p and p[-1] is actor.opponent]
        if opp_tops:
            best = max(opp_tops, key=lambda i: (len(board[i]), -i))
            return Place(best, actor)
        empties = [i for i, p in enumerate(board) if not p]
        return Place(empties[0], actor)


class UniformRandom(Policy):
    """Uniform choice over the legal actions, with a private seeded generator."""

    def __init__(self, seed: int = 0):
        self.seed = seed
        self._rng = random.Random(seed)

    def choose(self, state: GameState, actor: Color, actions: Sequence[Action]) -> Action:
        return self._rng.choice(list(actions))


class Adversarial(Policy):
    """Optimal play backed by the exhaustive solver (no depth limit)."""

    deterministic = True

    def choose(self, state: GameState, actor: Color, actions: Sequence[Action]) -> Action:
        from .solver import solve  # local import to avoid a cycle

        for action in actions:
            child = _apply(state, actor, action).state
            if child.winner is actor or (
                child.winner is None and solve(child).winner is actor
            ):
                return action
        return actions[0]


class Scripted(Policy):
    """Replays a fixed action list in order."""

    def __init__(self, actions: Sequence[Action]):
        self._script = list(actions)
        self._pos = 0

    def choose(self, state: GameState, actor: Color, actions: Sequence[Action]) -> Action:
        if self._pos >= len(self._script):
            raise PolicyError("scripted policy ran out of actions")
        action = self._script[self._pos]
        self._pos += 1
        return action


def make_policy(spec: str, seed: Optional[int] = None) -> Policy:
    """Build a policy from its CLI/service name.

    Names: ``s``, ``random`` or ``random:<seed>``, ``adversarial``,
    ``scripted:<file>`` (JSON list in the wire action schema).
    """
    if spec == "s":
        return StrategyS()
    if spec == "adversarial":
        return Adversarial()
    if spec == "random" or spec.startswith("random:"):
        if ":" in spec:
            seed = int(spec.split(":", 1)[1])
        return UniformRandom(seed if seed is not None else 0)
    if spec.startswith("scripted:"):
        import json

        from .serial import action_from_dict

        path = spec.split(":", 1)[1]
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        return Scripted([action_from_dict(item) for item in raw])
    raise ValueError(f"unknown policy spec {spec!r}")


def strategy_s_round(state: GameState) -> List[Action]:
    """The full ordered action list of one sweep-and-place round.

    Requires the active player at a round boundary holding at least one
    guard. The emitted sequence is legal throughout and ends with the
    opponent active.
    """
    if state.winner is not None:
        raise IllegalActionError("game already decided")
    if not isinstance(state.phase, (TurnStart, InRound)):
        raise IllegalActionError("round must start at a round boundary")
    owner = state.active
    if state.hand(owner).guards < 1:
        raise IllegalActionError("strategy requires at least one guard at round start")
    policy = StrategyS()
    out: List[Action] = []
    while state.winner is None:
        pairs = legal_actions(state)
        actor = pairs[0][0]
        if actor is not owner:
            raise IllegalActionError("round owner lost the decision before round end")
        action = policy.choose(state, actor, [a for _, a in pairs])
        record = _apply(state, actor, action)
        out.append(action)
        state = record.state
        if record.round_ended:
            break
    return out
