"""Board summaries, the board taxonomy, and the closed-form winning test.

The winning predicate is evaluated for the active player at a round
boundary; queries for a red-active state are answered by color-swapping
the state and reusing the same formula.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .model import BLUE, Board, Color, GameState, RED, alternates, mirror


class BoardError(ValueError):
    """Raised for boards that are not in round-boundary form."""


def _top_count(length: int) -> int:
    # chips of the top color in an alternating pile
    return (length + 1) // 2


@dataclass(frozen=True)
class BoardSummary:
    """Shape of a round-boundary board.

    Long-pile length lists are sorted descending so summaries compare
    deterministically. Under alternation a pile is fully determined by its
    top color and length, so the summary loses no strategic information.
    """

    empty_piles: int
    red_singletons: int
    blue_singletons: int
    long_red: Tuple[int, ...]
    long_blue: Tuple[int, ...]

    @property
    def long_red_count(self) -> int:
        return len(self.long_red)

    @property
    def long_blue_count(self) -> int:
        return len(self.long_blue)

    @property
    def piles(self) -> int:
        return (
            self.empty_piles
            + self.red_singletons
            + self.blue_singletons
            + len(self.long_red)
            + len(self.long_blue)
        )

    @property
    def long_red_top_chips(self) -> int:
        """Red chips across all long red-topped piles."""
        return sum(_top_count(n) for n in self.long_red)

    @property
    def long_blue_top_chips(self) -> int:
        """Blue chips across all long blue-topped piles."""
        return sum(_top_count(n) for n in self.long_blue)

    @property
    def tallest_red_top_chips(self) -> int:
        """Red chips in the tallest long red-topped pile; 0 when none exist."""
        return _top_count(max(self.long_red)) if self.long_red else 0


class BoardType(enum.Enum):
    TYPE_I = "type I"
    GENERALIZED_TYPE_I = "generalized type I"
    TYPE_II = "type II"
    GENERALIZED_TYPE_II = "generalized type II"
    GENERAL = "general"


def summarize_board(board: Board) -> BoardSummary:
    """Counts of empty piles, singletons, and long piles by top color."""
    empty = red_s = blue_s = 0
    long_red = []
    long_blue = []
    for pile in board:
        if not alternates(pile):
            raise BoardError(
                "pile does not alternate; resolve pending captures before summarizing"
            )
        if not pile:
            empty += 1
        elif len(pile) == 1:
            if pile[0] is RED:
                red_s += 1
            else:
                blue_s += 1
        elif pile[-1] is RED:
            long_red.append(len(pile))
        else:
            long_blue.append(len(pile))
    return BoardSummary(
        empty_piles=empty,
        red_singletons=red_s,
        blue_singletons=blue_s,
        long_red=tuple(sorted(long_red, reverse=True)),
        long_blue=tuple(sorted(long_blue, reverse=True)),
    )


def classify(summary: BoardSummary) -> BoardType:
    """Most specific taxonomy label for a board shape."""
    long_r = summary.long_red_count
    long_b = summary.long_blue_count
    if long_b == 0:
        return BoardType.TYPE_I if long_r <= 1 else BoardType.GENERALIZED_TYPE_I
    if long_r == 1:
        return BoardType.TYPE_II if long_b == 1 else BoardType.GENERALIZED_TYPE_II
    return BoardType.GENERAL


def winning_predicate(summary: BoardSummary, attacker_guards: int, defender_guards: int) -> bool:
    """Exact winning test for the active player at a round boundary.

    ``attacker_guards`` counts the active player's own-color chips,
    ``defender_guards`` the opponent's. ``summary`` must be oriented so
    the attacker's color is blue (mirror the state first otherwise).
    Prisoner counts are deliberately absent: the outcome is independent
    of them.
    """
    if attacker_guards <= 0:
        return False
    if defender_guards == 0:
        return True
    lhs = attacker_guards + summary.long_blue_top_chips
    rhs = defender_guards + summary.long_red_top_chips - summary.tallest_red_top_chips
    return lhs > rhs


def nu_measure(long_red: Sequence[int], defender_prisoners: int, defender_guards: int) -> int:
    """Defender-side induction measure.

    Counts the chips the defender would hold after sweeping every
    red-topped pile, keeping all permitted prisoners, and ending their
    round with one placement. Strictly decreases between successive
    attacker round-starts while the attacker holds a winning edge on a
    board without long blue piles.
    """
    reduced = [n - 1 for n in long_red]
    return defender_prisoners + defender_guards + sum(reduced) - (max(reduced) if reduced else 0) - 1


def mu_measure(long_blue: Sequence[int], attacker_guards: int, attacker_prisoners: int) -> int:
    """Attacker-side induction measure, dual to ``nu_measure``.

    Counts the chips the attacker would hold after sweeping every
    blue-topped pile during their round and ending it with one placement.
    """
    return attacker_guards + attacker_prisoners + sum(n - 1 for n in long_blue) - 1


@dataclass(frozen=True)
class AnalysisReport:
    """Position analysis consumed by the CLI and the service."""

    summary: BoardSummary
    board_type: BoardType
    active: Color
    active_wins: bool
    nu: int
    mu: int


def predicate_for_active(state: GameState) -> bool:
    """Winning predicate evaluated for whichever player is active."""
    view = state if state.active is BLUE else mirror(state)
    summary = summarize_board(view.board)
    return winning_predicate(summary, view.blue.guards, view.red.guards)


def analyze(state: GameState) -> AnalysisReport:
    """Summary, taxonomy label, predicate verdict, and both measures.

    The measures are computed in the active-player orientation: the
    attacker is whoever is about to move.
    """
    summary = summarize_board(state.board)
    view = state if state.active is BLUE else mirror(state)
    view_summary = summary if state.active is BLUE else summarize_board(view.board)
    return AnalysisReport(
        summary=summary,
        board_type=classify(summary),
        active=state.active,
        active_wins=winning_predicate(view_summary, view.blue.guards, view.red.guards),
        nu=nu_measure(view_summary.long_red, view.red.prisoners, view.red.guards),
        mu=mu_measure(view_summary.long_blue, view.blue.guards, view.blue.prisoners),
    )
