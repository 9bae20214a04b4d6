"""Shared fixtures and strategies for the test suite."""

from __future__ import annotations

from hypothesis import strategies as st

from sls.model import BLUE, GameState, Hand, RED, TURN_START, alternating_pile


def state(board_text: str, blue="0,0", red="0,0", active="b") -> GameState:
    """Compact round-boundary state builder: hands as 'guards,prisoners'."""
    from sls.model import parse_board

    bg, bp = (int(x) for x in blue.split(","))
    rg, rp = (int(x) for x in red.split(","))
    return GameState(
        board=parse_board(board_text),
        blue=Hand(bg, bp),
        red=Hand(rg, rp),
        active=BLUE if active == "b" else RED,
        phase=TURN_START,
    )


@st.composite
def piles(draw, max_len: int = 5):
    length = draw(st.integers(min_value=0, max_value=max_len))
    if length == 0:
        return ()
    top = draw(st.sampled_from([BLUE, RED]))
    return alternating_pile(top, length)


@st.composite
def hands(draw, max_total: int = 4):
    guards = draw(st.integers(min_value=0, max_value=max_total))
    prisoners = draw(st.integers(min_value=0, max_value=max_total - guards))
    return Hand(guards, prisoners)


@st.composite
def round_boundary_states(draw, max_piles: int = 4, max_len: int = 4, max_hand: int = 3):
    k = draw(st.integers(min_value=1, max_value=max_piles))
    board = tuple(draw(piles(max_len)) for _ in range(k))
    return GameState(
        board=board,
        blue=draw(hands(max_hand)),
        red=draw(hands(max_hand)),
        active=draw(st.sampled_from([BLUE, RED])),
        phase=TURN_START,
    )
