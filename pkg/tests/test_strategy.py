"""Policies, the reference strategy, and round expansion."""

import json

import pytest
from hypothesis import given, settings

from sls.engine import (
    CaptureDiscard,
    DiscardPrisoner,
    Place,
    RescueDecision,
    apply_action,
    legal_actions,
    playout,
    start_round,
)
from sls.model import BLUE, RED, parse_pile
from sls.strategy import (
    Adversarial,
    Scripted,
    StrategyS,
    UniformRandom,
    capture_discard_choice,
    make_policy,
    strategy_s_round,
)

from conftest import round_boundary_states, state


class TestCaptureDiscardChoice:
    def test_prefers_discarding_an_opponent_chip(self):
        assert capture_discard_choice(parse_pile("rbb"), BLUE) is RED

    def test_falls_back_to_own_chip(self):
        assert capture_discard_choice(parse_pile("bb"), BLUE) is BLUE


class TestStrategyS:
    def test_worked_round(self):
        # Blue (2 guards, 1 prisoner) on b,r,_: capture the b-pile
        # discarding own chip, shed the prisoner, then guard the r-pile.
        s = state("b,r,_", blue="2,1", red="1,0", active="b")
        assert strategy_s_round(s) == [
            Place(0, BLUE),
            CaptureDiscard(BLUE),
            DiscardPrisoner(),
            Place(1, BLUE),
        ]

    def test_captures_longest_own_top_pile_first(self):
        s = state("b,rb,_", blue="2,0", red="1,0", active="b")
        assert strategy_s_round(s)[0] == Place(1, BLUE)

    def test_guards_longest_opponent_pile(self):
        s = state("r,br,_", blue="1,0", red="1,0", active="b")
        assert strategy_s_round(s) == [Place(1, BLUE)]

    def test_places_on_empty_when_no_opponent_piles(self):
        s = state("_,_", blue="1,0", red="1,0", active="b")
        assert strategy_s_round(s) == [Place(0, BLUE)]

    def test_declines_rescue(self):
        s = state("b,_", blue="0,0", red="1,1", active="b")
        started = start_round(s)
        actions = [a for _, a in legal_actions(started)]
        choice = StrategyS().choose(started, RED, actions)
        assert choice == RescueDecision(False)

    @given(round_boundary_states(max_piles=3, max_len=3, max_hand=3))
    @settings(max_examples=200, deadline=None)
    def test_always_returns_a_legal_action(self, s):
        started = start_round(s)
        policy = StrategyS()
        while started.winner is None:
            pairs = legal_actions(started)
            actor = pairs[0][0]
            action = policy.choose(started, actor, [a for _, a in pairs])
            assert (actor, action) in pairs
            started = apply_action(started, actor, action).state


class TestPolicyFactory:
    def test_reference_strategy(self):
        assert isinstance(make_policy("s"), StrategyS)

    def test_random_with_seed(self):
        policy = make_policy("random:7")
        assert isinstance(policy, UniformRandom)
        assert not policy.deterministic

    def test_adversarial(self):
        assert isinstance(make_policy("adversarial"), Adversarial)

    def test_scripted_from_file(self, tmp_path):
        path = tmp_path / "line.json"
        path.write_text(json.dumps([{"type": "place", "pile": 0, "color": "b"}]))
        policy = make_policy(f"scripted:{path}")
        assert isinstance(policy, Scripted)

    def test_unknown_spec_rejected(self):
        with pytest.raises(ValueError):
            make_policy("minimax")


class TestPlayoutDeterminism:
    def test_seeded_playouts_repeat(self):
        s = state("b,r,_", blue="2,1", red="1,1", active="b")
        first = playout(s, "random:3", "random:4", seed=9)
        second = playout(s, "random:3", "random:4", seed=9)
        assert first == second

    def test_strategy_beats_random_from_winning_position(self):
        # predicate-true start: the reference strategy must never lose
        s = state("b,r,_", blue="2,0", red="1,0", active="b")
        for seed in range(20):
            winner, _ = playout(s, "s", f"random:{seed}", seed=seed)
            assert winner is BLUE
