"""Legal-action generation and state transitions.

Implements the Capture, Next Player, Donation, and Discarding rules for
the two-player, two-color endgame, including elimination and winner
detection. "Any moment" donations and discards are serialized: the round
owner may interleave them with placements at their own decision points,
and the non-active player acts only at the rescue-donation node.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from .model import (
    AWAIT_RESCUE,
    AwaitCaptureDiscard,
    AwaitRescueDonation,
    BLUE,
    Color,
    GameState,
    Hand,
    IN_ROUND,
    InRound,
    RED,
    TURN_START,
    TurnStart,
    pile_count,
)


class RulesError(Exception):
    """Base class for rule violations."""


class IllegalActionError(RulesError):
    """An action that the rules do not permit in the given state."""


class TerminalStateError(RulesError):
    """Actions were requested for a finished game."""


class PolicyError(RulesError):
    """A policy returned an illegal action during a playout."""


@dataclass(frozen=True)
class Place:
    """Active player puts one held chip of ``color`` on pile ``pile``."""

    pile: int
    color: Color


@dataclass(frozen=True)
class CaptureDiscard:
    """Capturing player discards one chip of ``color`` from the captured pile."""

    color: Color


@dataclass(frozen=True)
class DiscardPrisoner:
    """Acting player throws one prisoner into the dead box."""


@dataclass(frozen=True)
class DonatePrisoner:
    """Acting player hands one prisoner to the opponent (becoming a guard there)."""


@dataclass(frozen=True)
class RescueDecision:
    """Opponent's choice when the active player starts a turn chipless."""

    donate: bool


Action = Union[Place, CaptureDiscard, DiscardPrisoner, DonatePrisoner, RescueDecision]


@dataclass(frozen=True)
class TransitionRecord:
    actor: Color
    action: Action
    state: GameState
    capture: bool
    round_ended: bool


def is_terminal(state: GameState) -> Optional[Color]:
    """Winner color if one player has been eliminated, else None."""
    return state.winner


def next_active_player(mover: Color, placed: Color, prior_top: Optional[Color]) -> Color:
    """Who acts after ``mover`` places a ``placed`` chip on a pile topped ``prior_top``.

    Covers all six placement cases; in the capture cases the returned
    player is the capturer, who also becomes active once the capture
    resolves.
    """
    if prior_top is None:
        # empty pile: the player whose color is absent gets the turn
        return mover if placed is not mover else mover.opponent
    if prior_top is placed:
        # capture by the owner of the doubled color
        return placed
    # no capture, both colors now present: lowest chip decides
    return mover if prior_top is mover else mover.opponent


def _rescue_actions(state: GameState) -> Tuple[Tuple[Color, Action], ...]:
    opp = state.active.opponent
    acts: List[Tuple[Color, Action]] = []
    if state.hand(opp).prisoners >= 1:
        acts.append((opp, RescueDecision(True)))
    acts.append((opp, RescueDecision(False)))
    return tuple(acts)


def legal_actions(state: GameState) -> Tuple[Tuple[Color, Action], ...]:
    """All (acting player, action) pairs available in ``state``.

    Every decision node belongs to exactly one player, so all returned
    pairs share the same actor. Never empty for a non-terminal state.
    """
    if state.winner is not None:
        raise TerminalStateError("no actions in a finished game")
    phase = state.phase
    if isinstance(phase, AwaitCaptureDiscard):
        pile = state.board[phase.pile]
        actor = phase.color
        return tuple(
            (actor, CaptureDiscard(color))
            for color in (BLUE, RED)
            if pile_count(pile, color) >= 1
        )
    mover = state.active
    hand = state.hand(mover)
    if isinstance(phase, AwaitRescueDonation) or hand.total == 0:
        return _rescue_actions(state)
    acts: List[Tuple[Color, Action]] = []
    if hand.guards >= 1:
        acts.extend((mover, Place(i, mover)) for i in range(len(state.board)))
    if hand.prisoners >= 1:
        acts.extend((mover, Place(i, mover.opponent)) for i in range(len(state.board)))
        acts.append((mover, DiscardPrisoner()))
        acts.append((mover, DonatePrisoner()))
    return tuple(acts)


def decision_actor(state: GameState) -> Color:
    """The single player who owns the current decision node."""
    if state.winner is not None:
        raise TerminalStateError("no decisions in a finished game")
    phase = state.phase
    if isinstance(phase, AwaitCaptureDiscard):
        return phase.color
    if isinstance(phase, AwaitRescueDonation) or state.hand(state.active).total == 0:
        return state.active.opponent
    return state.active


def _remove_chip(hand: Hand, own: bool) -> Hand:
    if own:
        return Hand(hand.guards - 1, hand.prisoners)
    return Hand(hand.guards, hand.prisoners - 1)


def _apply(state: GameState, actor: Color, action: Action) -> TransitionRecord:
    """Transition without legality validation; callers must pre-check."""
    prev_active = state.active

    if isinstance(action, Place):
        pile = state.board[action.pile]
        own = action.color is actor
        hand = _remove_chip(state.hand(actor), own)
        new_pile = pile + (action.color,)
        board = state.board[: action.pile] + (new_pile,) + state.board[action.pile + 1 :]
        captures = len(new_pile) >= 2 and new_pile[-1] is new_pile[-2]
        if captures:
            new = replace(
                state.with_hand(actor, hand),
                board=board,
                phase=AwaitCaptureDiscard(action.pile, new_pile[-1]),
            )
            return TransitionRecord(actor, action, new, True, False)
        nxt = next_active_player(actor, action.color, pile[-1] if pile else None)
        if nxt is actor:
            new = replace(state.with_hand(actor, hand), board=board, phase=IN_ROUND)
            return TransitionRecord(actor, action, new, False, False)
        new = replace(
            state.with_hand(actor, hand), board=board, active=nxt, phase=TURN_START
        )
        return TransitionRecord(actor, action, new, False, True)

    if isinstance(action, CaptureDiscard):
        assert isinstance(state.phase, AwaitCaptureDiscard)
        idx = state.phase.pile
        pile = list(state.board[idx])
        pile.remove(action.color)  # one chip of the chosen color goes to the dead box
        gained_guards = sum(1 for c in pile if c is actor)
        gained_prisoners = len(pile) - gained_guards
        hand = state.hand(actor)
        hand = Hand(hand.guards + gained_guards, hand.prisoners + gained_prisoners)
        board = state.board[:idx] + ((),) + state.board[idx + 1 :]
        new = replace(
            state.with_hand(actor, hand),
            board=board,
            active=actor,
            phase=TURN_START,
        )
        return TransitionRecord(actor, action, new, True, actor is not prev_active)

    if isinstance(action, DiscardPrisoner):
        hand = state.hand(actor)
        new = state.with_hand(actor, Hand(hand.guards, hand.prisoners - 1))
        return TransitionRecord(actor, action, new, False, False)

    if isinstance(action, DonatePrisoner):
        hand = state.hand(actor)
        opp = actor.opponent
        opp_hand = state.hand(opp)
        new = state.with_hand(actor, Hand(hand.guards, hand.prisoners - 1))
        new = new.with_hand(opp, Hand(opp_hand.guards + 1, opp_hand.prisoners))
        return TransitionRecord(actor, action, new, False, False)

    if isinstance(action, RescueDecision):
        rescued = state.active
        if action.donate:
            donor_hand = state.hand(actor)
            rescued_hand = state.hand(rescued)
            new = state.with_hand(actor, Hand(donor_hand.guards, donor_hand.prisoners - 1))
            new = new.with_hand(rescued, Hand(rescued_hand.guards + 1, rescued_hand.prisoners))
            new = replace(new, phase=TURN_START)
            return TransitionRecord(actor, action, new, False, False)
        new = replace(state, winner=actor)
        return TransitionRecord(actor, action, new, False, True)

    raise IllegalActionError(f"unknown action {action!r}")


def apply_action(state: GameState, actor: Color, action: Action) -> TransitionRecord:
    """Validated transition: rejects illegal (actor, action) pairs, no state change."""
    if (actor, action) not in legal_actions(state):
        raise IllegalActionError(
            f"{actor.value} may not play {action!r} in state "
            f"(phase={state.phase!r}, active={state.active.value})"
        )
    return _apply(state, actor, action)


def start_round(state: GameState) -> GameState:
    """Resolve the round boundary into the next decision phase.

    A chipless active player faces the rescue-donation node, or immediate
    elimination when the opponent holds no prisoners (a guard cannot be
    donated, so the decline is forced and applied automatically).
    """
    if state.winner is not None:
        raise TerminalStateError("cannot start a round in a finished game")
    if not isinstance(state.phase, TurnStart):
        raise IllegalActionError("start_round requires a round boundary")
    if state.hand(state.active).total > 0:
        return replace(state, phase=IN_ROUND)
    opp = state.active.opponent
    if state.hand(opp).prisoners >= 1:
        return replace(state, phase=AWAIT_RESCUE)
    return replace(state, winner=opp)


def playout(
    state: GameState,
    policy_blue,
    policy_red,
    seed: int = 0,
    max_steps: Optional[int] = None,
) -> Tuple[Color, List[TransitionRecord]]:
    """Run both policies to termination; deterministic given the seed.

    ``policy_blue``/``policy_red`` may be policy objects (anything with a
    ``choose(state, actor, actions)`` method) or policy spec strings.
    """
    from .strategy import make_policy  # local import to avoid a cycle

    blue_p = make_policy(policy_blue, seed=seed) if isinstance(policy_blue, str) else policy_blue
    red_p = make_policy(policy_red, seed=seed + 1) if isinstance(policy_red, str) else policy_red
    records: List[TransitionRecord] = []
    steps = 0
    while state.winner is None:
        pairs = legal_actions(state)
        actor = pairs[0][0]
        policy = blue_p if actor is BLUE else red_p
        action = policy.choose(state, actor, [a for _, a in pairs])
        if (actor, action) not in pairs:
            raise PolicyError(
                f"policy for {actor.value} returned illegal {action!r}; "
                f"legal: {[a for _, a in pairs]!r}"
            )
        record = _apply(state, actor, action)
        records.append(record)
        state = record.state
        steps += 1
        if max_steps is not None and steps > max_steps:
            raise PolicyError(f"playout exceeded {max_steps} steps")
    return state.winner, records
