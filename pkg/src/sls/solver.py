"""Exhaustive memoized game-tree evaluation under optimal play.

Outcomes are win/lose, so the search is a boolean AND/OR tree over the
acyclic state graph (the termination potential decreases on every
transition). States are memoized under a canonical key that forgets pile
order and compresses alternating piles to (top color, length).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb
from typing import Dict, Iterator, List, Optional, Tuple

from .engine import TransitionRecord, _apply, legal_actions
from .model import (
    AwaitCaptureDiscard,
    BLUE,
    Color,
    GameState,
    Hand,
    RED,
    TURN_START,
    alternating_pile,
)
from .strategy import Policy

# Depth is bounded by the termination potential, not by the default
# interpreter limit; raise it once so deep sweeps never trip it.
if sys.getrecursionlimit() < 100_000:
    sys.setrecursionlimit(100_000)


@dataclass(frozen=True)
class Bounds:
    """Finite enumeration bounds for round-boundary states."""

    piles: int
    max_pile_len: int
    max_hand: int

    def __post_init__(self) -> None:
        if self.piles < 1:
            raise ValueError("a board needs at least one pile")
        if self.max_pile_len < 0 or self.max_hand < 0:
            raise ValueError("bounds must be non-negative")


@dataclass(frozen=True)
class SolveResult:
    winner: Color
    principal_variation: Tuple[Tuple[Color, object], ...]
    nodes: int
    memo_hits: int


CanonicalKey = Tuple


def canonicalize(state: GameState) -> CanonicalKey:
    """Pile-permutation-invariant key with identical game value.

    Alternating piles collapse to (top color, length); a pending-capture
    pile is carried in the phase component together with the capturing
    color. Round-boundary and mid-round play nodes share one phase marker
    because their action sets and values coincide.
    """
    phase = state.phase
    pend_idx = -1
    if isinstance(phase, AwaitCaptureDiscard):
        pend_idx = phase.pile
        pile = state.board[pend_idx]
        phase_key = ("capture", pile[-1].value, len(pile), phase.color.value)
    else:
        phase_key = ("play",)
    empties = 0
    piles: List[Tuple[str, int]] = []
    for i, pile in enumerate(state.board):
        if i == pend_idx:
            continue
        if pile:
            piles.append((pile[-1].value, len(pile)))
        else:
            empties += 1
    return (
        tuple(sorted(piles)),
        empties,
        state.blue.guards,
        state.blue.prisoners,
        state.red.guards,
        state.red.prisoners,
        state.active.value,
        phase_key,
        None if state.winner is None else state.winner.value,
    )


def pack_key(key: CanonicalKey) -> int:
    """Compact integer form of a canonical key, used for memo storage."""
    piles, empties, bg, bp, rg, rp, active, phase_key, _winner = key
    val = 1
    for color, length in piles:
        val = (val << 9) | (length << 1) | (1 if color == "r" else 0)
    val = (val << 6) | empties
    for n in (bg, bp, rg, rp):
        val = (val << 7) | n
    val = (val << 1) | (1 if active == "r" else 0)
    if phase_key[0] == "capture":
        _, top, length, capturer = phase_key
        val = (val << 1) | 1
        val = (val << 10) | (length << 2) | ((1 if top == "r" else 0) << 1) | (
            1 if capturer == "r" else 0
        )
    else:
        val = val << 1
    return val


class _Stats:
    __slots__ = ("nodes", "hits")

    def __init__(self) -> None:
        self.nodes = 0
        self.hits = 0


def _winner_under_optimal(state: GameState, memo: Dict[int, Color], stats: _Stats) -> Color:
    if state.winner is not None:
        return state.winner
    key = pack_key(canonicalize(state))
    cached = memo.get(key)
    if cached is not None:
        stats.hits += 1
        return cached
    stats.nodes += 1
    pairs = legal_actions(state)
    actor = pairs[0][0]
    result = actor.opponent
    for pair_actor, action in pairs:
        child = _apply(state, pair_actor, action).state
        if _winner_under_optimal(child, memo, stats) is actor:
            result = actor
            break
    memo[key] = result
    return result


def _principal_variation(
    state: GameState, memo: Dict[int, Color], stats: _Stats
) -> Tuple[Tuple[Color, object], ...]:
    # second greedy descent; interior nodes store only the winner
    pv: List[Tuple[Color, object]] = []
    target = _winner_under_optimal(state, memo, stats)
    while state.winner is None:
        for actor, action in legal_actions(state):
            child = _apply(state, actor, action).state
            if _winner_under_optimal(child, memo, stats) is target:
                pv.append((actor, action))
                state = child
                break
        else:  # pragma: no cover - would contradict the backed-up value
            raise AssertionError("no line preserves the solved winner")
    return tuple(pv)


def solve(
    state: GameState,
    memo: Optional[Dict[int, Color]] = None,
    want_pv: bool = True,
) -> SolveResult:
    """Exact winner under optimal play by both sides.

    A shared ``memo`` may be passed across many solves (sweeps); values
    for a key are unique, so concurrent or repeated idempotent inserts
    are harmless.
    """
    if state.winner is not None:
        raise ValueError("state is already terminal")
    if memo is None:
        memo = {}
    stats = _Stats()
    winner = _winner_under_optimal(state, memo, stats)
    pv = _principal_variation(state, memo, stats) if want_pv else ()
    return SolveResult(winner, pv, stats.nodes, stats.hits)


def _winner_with_policy(
    state: GameState,
    fixed: Color,
    policy: Policy,
    memo: Optional[Dict[int, Color]],
    stats: _Stats,
) -> Color:
    if state.winner is not None:
        return state.winner
    key = pack_key(canonicalize(state)) if memo is not None else None
    if memo is not None:
        cached = memo.get(key)
        if cached is not None:
            stats.hits += 1
            return cached
    stats.nodes += 1
    pairs = legal_actions(state)
    actor = pairs[0][0]
    if actor is fixed:
        action = policy.choose(state, actor, [a for _, a in pairs])
        if (actor, action) not in pairs:
            raise ValueError(f"fixed policy returned illegal action {action!r}")
        child = _apply(state, actor, action).state
        result = _winner_with_policy(child, fixed, policy, memo, stats)
    else:
        result = actor.opponent
        for pair_actor, action in pairs:
            child = _apply(state, pair_actor, action).state
            if _winner_with_policy(child, fixed, policy, memo, stats) is actor:
                result = actor
                break
    if memo is not None:
        memo[key] = result
    return result


def solve_with_policy(
    state: GameState,
    fixed: Tuple[Color, Policy],
    memo: Optional[Dict[int, Color]] = None,
) -> SolveResult:
    """One side plays the fixed policy; the other is adversarially optimal.

    Memoization on canonical keys applies only to policies whose choice
    is a pure function of the state.
    """
    if state.winner is not None:
        raise ValueError("state is already terminal")
    fixed_color, policy = fixed
    if not policy.deterministic:
        memo = None
    elif memo is None:
        memo = {}
    stats = _Stats()
    winner = _winner_with_policy(state, fixed_color, policy, memo, stats)
    return SolveResult(winner, (), stats.nodes, stats.hits)


def _hand_splits(max_total: int) -> List[Hand]:
    return [
        Hand(guards, prisoners)
        for total in range(max_total + 1)
        for guards in range(total + 1)
        for prisoners in [total - guards]
    ]


def enumerate_states(bounds: Bounds) -> Iterator[GameState]:
    """Every canonical round-boundary state within bounds, exactly once.

    Boards are multisets of alternating piles (lengths up to the bound),
    hands all splits with per-player totals up to the bound, both active
    colors. Order is deterministic.
    """
    pile_specs: List[Optional[Tuple[Color, int]]] = [None]
    for color in (BLUE, RED):
        pile_specs.extend((color, n) for n in range(1, bounds.max_pile_len + 1))
    indices = range(len(pile_specs))
    hands = _hand_splits(bounds.max_hand)
    for combo in combinations_with_replacement(indices, bounds.piles):
        board = tuple(
            alternating_pile(*pile_specs[i]) if pile_specs[i] else ()
            for i in combo
        )
        for blue_hand in hands:
            for red_hand in hands:
                for active in (BLUE, RED):
                    yield GameState(
                        board=board,
                        blue=blue_hand,
                        red=red_hand,
                        active=active,
                        phase=TURN_START,
                    )


def count_round_boundary_states(bounds: Bounds) -> int:
    """Closed-form size of ``enumerate_states``, for sweep cross-checks."""
    pile_types = 2 * bounds.max_pile_len + 1
    boards = comb(pile_types + bounds.piles - 1, bounds.piles)
    hands = (bounds.max_hand + 1) * (bounds.max_hand + 2) // 2
    return boards * hands * hands * 2
