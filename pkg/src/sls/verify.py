"""Sweep orchestration: oracle-equivalence and rule-property checks.

Disagreements are first-class output rather than assertions: a failing
sweep reports minimal reproduction keys instead of aborting mid-run.
"""

from __future__ import annotations

import multiprocessing
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .classify import (
    BoardSummary,
    BoardType,
    classify,
    mu_measure,
    nu_measure,
    predicate_for_active,
    summarize_board,
    winning_predicate,
)
from .engine import CaptureDiscard, Place, TransitionRecord, _apply, legal_actions, playout
from .model import (
    AwaitCaptureDiscard,
    BLUE,
    Color,
    GameState,
    Hand,
    RED,
    TURN_START,
    TurnStart,
    alternates,
    alternating_pile,
    mirror,
    total_potential,
)
from .solver import (
    Bounds,
    _Stats,
    _winner_under_optimal,
    _winner_with_policy,
    canonicalize,
    count_round_boundary_states,
    enumerate_states,
)
from .strategy import StrategyS, UniformRandom

DEFAULT_SEED = 20240901


@dataclass
class SweepReport:
    check: str
    bounds: Optional[Bounds]
    states: int = 0
    agreements: int = 0
    disagreements: List[str] = field(default_factory=list)
    by_type: Dict[str, int] = field(default_factory=dict)
    wall_time: float = 0.0
    seed: Optional[int] = None

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def merge(self, other: "SweepReport") -> None:
        self.states += other.states
        self.agreements += other.agreements
        self.disagreements.extend(other.disagreements)
        for name, count in other.by_type.items():
            self.by_type[name] = self.by_type.get(name, 0) + count

    def lines(self) -> List[str]:
        out = [
            f"check: {self.check}",
            f"bounds: {self.bounds}",
            f"states: {self.states}",
            f"agreements: {self.agreements}",
            f"disagreements: {len(self.disagreements)}",
        ]
        for name in sorted(self.by_type):
            out.append(f"  {name}: {self.by_type[name]}")
        for item in self.disagreements[:50]:
            out.append(f"DISAGREE {item}")
        if self.seed is not None:
            out.append(f"seed: {self.seed}")
        out.append(f"wall_time: {self.wall_time:.2f}s")
        out.append(f"status: {'ok' if self.ok else 'FAILED'}")
        return out


def _active_view(state: GameState) -> GameState:
    """State reoriented so the active player is blue."""
    return state if state.active is BLUE else mirror(state)


def _reduction_type_i(s: BoardSummary, attacker: int, defender: int) -> bool:
    return attacker > defender


def _reduction_gen_type_i(s: BoardSummary, attacker: int, defender: int) -> bool:
    return attacker > 0 and (
        defender == 0
        or attacker > defender + s.long_red_top_chips - s.tallest_red_top_chips
    )


def _reduction_type_ii(s: BoardSummary, attacker: int, defender: int) -> bool:
    return attacker > 0 and attacker + s.long_blue_top_chips > defender


# theorem id -> (board class restriction, reduced predicate)
_REDUCTIONS: Dict[str, Tuple[Callable[[BoardSummary], bool], Callable]] = {
    "T3.5": (lambda s: classify(s) is BoardType.TYPE_I, _reduction_type_i),
    "T3.10": (lambda s: s.long_blue_count == 0, _reduction_gen_type_i),
    "T4.7": (
        lambda s: s.long_red_count == 1 and s.long_blue_count == 1,
        _reduction_type_ii,
    ),
    "T4.12": (
        lambda s: s.long_red_count == 1 and s.long_blue_count >= 1,
        _reduction_type_ii,
    ),
    "Final": (lambda s: True, winning_predicate),
}

THEOREM_IDS = tuple(_REDUCTIONS) + ("T2.1", "T2.2", "P2.3", "P2.4")


def _sweep_slice(
    bounds: Bounds,
    workers: int,
    offset: int,
    check_strategy: bool,
    class_filter: Optional[Callable[[BoardSummary], bool]],
    predicate: Callable,
) -> SweepReport:
    report = SweepReport(check="slice", bounds=bounds)
    memo: Dict[int, Color] = {}
    memo_s: Dict[Color, Dict[int, Color]] = {BLUE: {}, RED: {}}
    policy = StrategyS()
    for index, state in enumerate(enumerate_states(bounds)):
        if index % workers != offset:
            continue
        view = _active_view(state)
        summary = summarize_board(view.board)
        if class_filter is not None and not class_filter(summary):
            continue
        report.states += 1
        label = classify(summary).value
        report.by_type[label] = report.by_type.get(label, 0) + 1
        problems = []
        solved = _winner_under_optimal(state, memo, _Stats())
        predicted = predicate(summary, view.blue.guards, view.red.guards)
        if (solved is state.active) != predicted:
            problems.append(
                f"predicate={predicted} solver={'active' if solved is state.active else 'opponent'}"
            )
        if check_strategy:
            followed = _winner_with_policy(state, solved, policy, memo_s[solved], _Stats())
            if followed is not solved:
                problems.append(
                    f"strategy: optimal={solved.value} but fixing {solved.value} to s loses"
                )
        if problems:
            report.disagreements.append(f"{canonicalize(state)} {'; '.join(problems)}")
        else:
            report.agreements += 1
    return report


def _sweep_worker(args) -> SweepReport:
    bounds, workers, offset, check_strategy, theorem = args
    class_filter, predicate = _REDUCTIONS[theorem]
    return _sweep_slice(bounds, workers, offset, check_strategy, class_filter, predicate)


def _run_sweep(
    check: str,
    bounds: Bounds,
    theorem: str,
    workers: int,
    check_strategy: bool,
) -> SweepReport:
    start = time.monotonic()
    report = SweepReport(check=check, bounds=bounds)
    if workers <= 1:
        class_filter, predicate = _REDUCTIONS[theorem]
        report.merge(_sweep_slice(bounds, 1, 0, check_strategy, class_filter, predicate))
    else:
        ctx = multiprocessing.get_context("fork")
        jobs = [(bounds, workers, off, check_strategy, theorem) for off in range(workers)]
        with ctx.Pool(workers) as pool:
            for part in pool.map(_sweep_worker, jobs):
                report.merge(part)
    if theorem == "Final":
        expected = count_round_boundary_states(bounds)
        if report.states != expected:
            raise RuntimeError(
                f"sweep covered {report.states} states, closed form says {expected}"
            )
    report.disagreements.sort()
    report.wall_time = time.monotonic() - start
    return report


def verify_characterization(
    bounds: Bounds, workers: int = 1, check_strategy: bool = True
) -> SweepReport:
    """Oracle equivalence (and strategy optimality) over every state in bounds."""
    return _run_sweep("characterization", bounds, "Final", workers, check_strategy)


def _next_player_table(theorem: str) -> SweepReport:
    """Exhaustive check of the forced next-player outcomes after a placement.

    The expected values are hardcoded from the six-row classification:
    the mover keeps the turn after placing the opponent color on an empty
    or own-topped pile, or after capturing on an own-topped pile; the
    turn passes in the mirror-image cases.
    """
    start = time.monotonic()
    report = SweepReport(check=theorem, bounds=None)
    same_player = theorem == "T2.1"
    pile_kinds: List[Tuple[str, Callable[[Color], Tuple[Color, ...]]]] = [
        ("empty", lambda c: ()),
        ("own-singleton", lambda c: (c,)),
        ("own-long-2", lambda c: alternating_pile(c, 2)),
        ("own-long-3", lambda c: alternating_pile(c, 3)),
        ("opp-singleton", lambda c: (c.opponent,)),
        ("opp-long-2", lambda c: alternating_pile(c.opponent, 2)),
        ("opp-long-3", lambda c: alternating_pile(c.opponent, 3)),
    ]
    for mover in (BLUE, RED):
        for placed in (mover, mover.opponent):
            for kind, build in pile_kinds:
                pile = build(mover)
                top = pile[-1] if pile else None
                own_chip = placed is mover
                # rows of the two next-player theorems
                if top is None:
                    stays = not own_chip
                elif top is mover:
                    stays = True  # opponent chip: lowest-chip rule; own chip: capture
                else:
                    stays = False  # own chip: lowest-chip rule; opponent chip: capture
                if stays != same_player:
                    continue
                report.states += 1
                state = GameState(
                    board=(pile, ()),
                    blue=Hand(2, 2),
                    red=Hand(2, 2),
                    active=mover,
                    phase=TURN_START,
                )
                record = _apply(state, mover, Place(0, placed))
                outcomes = []
                if record.state.winner is None and not isinstance(
                    record.state.phase, TurnStart
                ):
                    pairs = legal_actions(record.state)
                    if pairs and isinstance(pairs[0][1], CaptureDiscard):
                        outcomes = [
                            _apply(record.state, a, act).state.active for a, act in pairs
                        ]
                if not outcomes:
                    outcomes = [record.state.active]
                expected = mover if stays else mover.opponent
                if all(out is expected for out in outcomes):
                    report.agreements += 1
                else:
                    report.disagreements.append(
                        f"{mover.value} places {placed.value} on {kind}: "
                        f"got {[o.value for o in outcomes]}, expected {expected.value}"
                    )
    report.wall_time = time.monotonic() - start
    return report


def random_round_boundary_state(rng: random.Random, bounds: Bounds) -> GameState:
    """One random round-boundary state within bounds (not uniform)."""
    specs: List[Optional[Tuple[Color, int]]] = [None]
    for color in (BLUE, RED):
        specs.extend((color, n) for n in range(1, bounds.max_pile_len + 1))
    board = tuple(
        alternating_pile(*spec) if spec else ()
        for spec in (rng.choice(specs) for _ in range(bounds.piles))
    )

    def hand() -> Hand:
        total = rng.randint(0, bounds.max_hand)
        guards = rng.randint(0, total)
        return Hand(guards, total - guards)

    return GameState(board=board, blue=hand(), red=hand(), active=rng.choice((BLUE, RED)))


def _playout_invariants(
    theorem: str, bounds: Bounds, playouts: int, seed: int
) -> SweepReport:
    start = time.monotonic()
    report = SweepReport(check=theorem, bounds=bounds, seed=seed)
    rng = random.Random(seed)
    for trial in range(playouts):
        state = random_round_boundary_state(rng, bounds)
        report.states += 1
        problems: List[str] = []
        blue = UniformRandom(rng.randrange(2**31))
        red = UniformRandom(rng.randrange(2**31))
        _, records = playout(state, blue, red)
        prev = state
        pending_capture: Optional[Tuple[Color, int]] = None  # (mover, guards before)
        for record in records:
            if theorem == "P2.3":
                # every state outside a pending capture must alternate
                if not isinstance(record.state.phase, AwaitCaptureDiscard):
                    for pile in record.state.board:
                        if not alternates(pile):
                            problems.append(
                                f"non-alternating pile after {record.action!r}"
                            )
            if theorem == "P2.4":
                if (
                    isinstance(record.action, Place)
                    and record.capture
                    and record.action.color is record.actor
                    and prev.board[record.action.pile]
                    and prev.board[record.action.pile][-1] is record.actor
                ):
                    pending_capture = (record.actor, prev.hand(record.actor).guards)
                elif isinstance(record.action, CaptureDiscard) and pending_capture:
                    mover, before = pending_capture
                    if record.actor is mover:
                        after = record.state.hand(mover).guards
                        if after < before:
                            problems.append(
                                f"guards dropped {before}->{after} across own-pile capture"
                            )
                    pending_capture = None
            prev = record.state
        if problems:
            report.disagreements.append(f"trial={trial} {problems[0]}")
        else:
            report.agreements += 1
    report.wall_time = time.monotonic() - start
    return report


def verify_theorem(
    theorem: str,
    bounds: Bounds,
    workers: int = 1,
    playouts: int = 10_000,
    seed: int = DEFAULT_SEED,
) -> SweepReport:
    """Restricted sweep or property suite for one named result."""
    if theorem in _REDUCTIONS:
        return _run_sweep(theorem, bounds, theorem, workers, check_strategy=False)
    if theorem in ("T2.1", "T2.2"):
        return _next_player_table(theorem)
    if theorem in ("P2.3", "P2.4"):
        return _playout_invariants(theorem, bounds, playouts, seed)
    raise ValueError(f"unknown theorem id {theorem!r}; known: {', '.join(THEOREM_IDS)}")


# ---------------------------------------------------------------------------
# induction-measure monotonicity checks


def attacker_edge_hypotheses(state: GameState) -> bool:
    """Active-player analogue of the winning edge on a board without long
    piles of the active color: both guards positive and the edge inequality."""
    view = _active_view(state)
    s = summarize_board(view.board)
    return (
        s.long_blue_count == 0
        and view.blue.guards > 0
        and view.red.guards > 0
        and view.blue.guards
        > view.red.guards + s.long_red_top_chips - s.tallest_red_top_chips
    )


def defender_edge_hypotheses(state: GameState) -> bool:
    """Active player holds guards but cannot beat the opponent's margin on a
    board with exactly one long opponent-topped pile."""
    view = _active_view(state)
    s = summarize_board(view.board)
    return (
        s.long_red_count == 1
        and s.long_blue_count >= 1
        and view.blue.guards > 0
        and view.blue.guards + s.long_blue_top_chips <= view.red.guards
    )


def _round_start_states(initial: GameState, records: Sequence[TransitionRecord], owner: Color):
    """States at each of ``owner``'s round starts, the initial one included."""
    out = [initial] if initial.active is owner and isinstance(initial.phase, TurnStart) else []
    for record in records:
        if record.round_ended and record.state.winner is None and record.state.active is owner:
            out.append(record.state)
    return out


def nu_trace_violations(state: GameState, seed: int) -> List[str]:
    """Attacker plays the sweep strategy against a random defender.

    While successive attacker round starts keep satisfying the hypotheses,
    the defender-side measure must strictly decrease and the attacker must
    win the game.
    """
    if not attacker_edge_hypotheses(state):
        raise ValueError("start state does not satisfy the measure hypotheses")
    attacker = state.active
    blue_p = StrategyS() if attacker is BLUE else UniformRandom(seed)
    red_p = UniformRandom(seed) if attacker is BLUE else StrategyS()
    winner, records = playout(state, blue_p, red_p)
    problems: List[str] = []
    if winner is not attacker:
        problems.append("attacker lost despite the winning edge")
    previous: Optional[int] = None
    for boundary in _round_start_states(state, records, attacker):
        if not attacker_edge_hypotheses(boundary):
            break
        view = _active_view(boundary)
        s = summarize_board(view.board)
        value = nu_measure(s.long_red, view.red.prisoners, view.red.guards)
        if previous is not None and value >= previous:
            problems.append(f"measure did not decrease: {previous} -> {value}")
        previous = value
    return problems


def mu_trace_violations(state: GameState, seed: int) -> List[str]:
    """Defender plays the sweep strategy against a random attacker.

    While successive attacker round starts keep the one-long-opponent-pile
    shape and the hypotheses, the attacker-side measure must strictly
    decrease and the defender must win.
    """
    if not defender_edge_hypotheses(state):
        raise ValueError("start state does not satisfy the measure hypotheses")
    attacker = state.active
    defender = attacker.opponent
    blue_p = UniformRandom(seed) if attacker is BLUE else StrategyS()
    red_p = StrategyS() if attacker is BLUE else UniformRandom(seed)
    winner, records = playout(state, blue_p, red_p)
    problems: List[str] = []
    if winner is not defender:
        problems.append("defender lost despite the blocking margin")
    previous: Optional[int] = None
    for boundary in _round_start_states(state, records, attacker):
        if not defender_edge_hypotheses(boundary):
            break
        view = _active_view(boundary)
        s = summarize_board(view.board)
        value = mu_measure(s.long_blue, view.blue.guards, view.blue.prisoners)
        if previous is not None and value >= previous:
            problems.append(f"measure did not decrease: {previous} -> {value}")
        previous = value
    return problems
