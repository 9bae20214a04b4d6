"""Core data model for the two-player, two-color So Long Sucker endgame.

Everything here is structural: colors, piles, hands, and the immutable
game state. No rule logic lives in this module.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Optional, Tuple, Union


class Color(enum.Enum):
    BLUE = "b"
    RED = "r"

    @property
    def opponent(self) -> "Color":
        return Color.RED if self is Color.BLUE else Color.BLUE

    def __repr__(self) -> str:  # keeps solver keys and logs compact
        return self.value


BLUE = Color.BLUE
RED = Color.RED

# A pile is an ordered chip sequence, bottom to top. A board is a fixed
# number of piles; pile order is preserved for UI fidelity even though the
# rules never distinguish piles by position.
Pile = Tuple[Color, ...]
Board = Tuple[Pile, ...]


class NotationError(ValueError):
    """Raised when board/state text cannot be parsed."""


@dataclass(frozen=True)
class Hand:
    """Chips one player holds: guards are own-color, prisoners opponent-color."""

    guards: int = 0
    prisoners: int = 0

    def __post_init__(self) -> None:
        if self.guards < 0 or self.prisoners < 0:
            raise ValueError(f"negative chip count in hand: {self}")

    @property
    def total(self) -> int:
        return self.guards + self.prisoners


@dataclass(frozen=True)
class TurnStart:
    """Round boundary: the active player is about to act."""


@dataclass(frozen=True)
class InRound:
    """The active player has already acted this round and retains the turn."""


@dataclass(frozen=True)
class AwaitCaptureDiscard:
    """A placement left two same-colored chips on top of ``pile``.

    The player owning ``color`` must choose which chip color to discard
    from the captured pile.
    """

    pile: int
    color: Color


@dataclass(frozen=True)
class AwaitRescueDonation:
    """The active player is chipless; the opponent decides whether to donate."""


Phase = Union[TurnStart, InRound, AwaitCaptureDiscard, AwaitRescueDonation]

TURN_START = TurnStart()
IN_ROUND = InRound()
AWAIT_RESCUE = AwaitRescueDonation()


@dataclass(frozen=True)
class GameState:
    """Full position: board piles, both hands, whose round it is, phase.

    Immutable; transitions produce new states, so values are safe to share
    between threads or processes without synchronization.
    """

    board: Board
    blue: Hand
    red: Hand
    active: Color
    phase: Phase = TURN_START
    winner: Optional[Color] = None

    def __post_init__(self) -> None:
        if len(self.board) < 1:
            raise ValueError("a board needs at least one pile")
        if isinstance(self.phase, AwaitCaptureDiscard):
            i = self.phase.pile
            if not 0 <= i < len(self.board):
                raise ValueError(f"pending capture references pile {i} out of range")
            pile = self.board[i]
            if len(pile) < 2 or pile[-1] is not pile[-2] or pile[-1] is not self.phase.color:
                raise ValueError("pending capture pile must have two same-colored chips on top")

    def hand(self, color: Color) -> Hand:
        return self.blue if color is BLUE else self.red

    def with_hand(self, color: Color, hand: Hand) -> "GameState":
        if color is BLUE:
            return replace(self, blue=hand)
        return replace(self, red=hand)

    @property
    def pile_total(self) -> int:
        return sum(len(p) for p in self.board)


def pile_count(pile: Pile, color: Color) -> int:
    """Number of chips of ``color`` in ``pile``."""
    return sum(1 for chip in pile if chip is color)


def total_potential(state: GameState) -> Tuple[int, int, int]:
    """Lexicographic termination potential.

    Components: chips anywhere, chips in both hands, prisoners in both
    hands. Every legal transition strictly decreases this triple, which
    guarantees termination of any playout.
    """
    hand_chips = state.blue.total + state.red.total
    prisoners = state.blue.prisoners + state.red.prisoners
    return (state.pile_total + hand_chips, hand_chips, prisoners)


def alternates(pile: Pile) -> bool:
    """True when no two consecutive chips share a color."""
    return all(pile[i] is not pile[i + 1] for i in range(len(pile) - 1))


def alternating_pile(top: Color, length: int) -> Pile:
    """The unique alternating pile of ``length`` chips ending in ``top``."""
    if length < 0:
        raise ValueError("pile length must be non-negative")
    if length == 0:
        return ()
    colors = [top if (length - i) % 2 == 1 else top.opponent for i in range(length)]
    return tuple(colors)


def mirror(state: GameState) -> GameState:
    """Color-swapped view of a state. An involution.

    Used for role symmetry: queries defined from Blue's perspective answer
    Red-active questions on the mirrored state.
    """
    swap = {BLUE: RED, RED: BLUE}
    board = tuple(tuple(swap[c] for c in pile) for pile in state.board)
    phase = state.phase
    if isinstance(phase, AwaitCaptureDiscard):
        phase = AwaitCaptureDiscard(phase.pile, swap[phase.color])
    return GameState(
        board=board,
        blue=state.red,
        red=state.blue,
        active=swap[state.active],
        phase=phase,
        winner=None if state.winner is None else swap[state.winner],
    )


def parse_pile(text: str) -> Pile:
    if text == "_":
        return ()
    chips = []
    for pos, ch in enumerate(text):
        if ch == "b":
            chips.append(BLUE)
        elif ch == "r":
            chips.append(RED)
        else:
            raise NotationError(f"bad chip letter {ch!r} at position {pos} in pile {text!r}")
    return tuple(chips)


def parse_board(text: str) -> Board:
    """Parse board notation: piles comma-separated, `_` empty, letters bottom to top."""
    if not text:
        raise NotationError("empty board notation")
    return tuple(parse_pile(part) for part in text.split(","))


def format_pile(pile: Pile) -> str:
    return "".join(c.value for c in pile) if pile else "_"


def format_board(board: Board) -> str:
    return ",".join(format_pile(p) for p in board)
