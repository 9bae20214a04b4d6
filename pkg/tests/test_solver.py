"""Exact solver: spec positions, memo soundness, enumeration counts."""

import pytest
from hypothesis import given, settings

from sls.classify import predicate_for_active
from sls.engine import _apply, legal_actions
from sls.model import BLUE, RED, mirror
from sls.solver import (
    Bounds,
    canonicalize,
    count_round_boundary_states,
    enumerate_states,
    pack_key,
    solve,
    solve_with_policy,
)
from sls.strategy import StrategyS

from conftest import round_boundary_states, state


class TestKnownPositions:
    def test_lone_guard_each_fails_for_the_mover(self):
        # two empty piles, one guard each: whoever must move loses
        s = state("_,_", blue="1,0", red="1,0", active="b")
        assert solve(s).winner is RED

    def test_guardless_defender_loses(self):
        s = state("_,_", blue="1,0", red="0,1", active="b")
        assert solve(s).winner is BLUE

    def test_principal_variation_is_playable_and_terminal(self):
        s = state("b,r,_", blue="2,1", red="1,0", active="b")
        result = solve(s)
        current = s
        for actor, action in result.principal_variation:
            assert (actor, action) in legal_actions(current)
            current = _apply(current, actor, action).state
        assert current.winner is result.winner

    def test_repeated_solves_are_deterministic(self):
        s = state("b,r,_", blue="2,1", red="1,1", active="b")
        first = solve(s)
        second = solve(s)
        assert first == second

    def test_terminal_input_rejected(self):
        s = state("_,_", blue="1,0", red="1,0", active="b")
        terminal = s.replace(winner=BLUE) if hasattr(s, "replace") else None
        if terminal is None:
            import dataclasses

            terminal = dataclasses.replace(s, winner=BLUE)
        with pytest.raises(ValueError):
            solve(terminal)


class TestCanonicalization:
    def test_pile_order_is_forgotten(self):
        a = state("b,r,_", blue="1,0", red="1,0", active="b")
        b = state("_,b,r", blue="1,0", red="1,0", active="b")
        assert canonicalize(a) == canonicalize(b)

    def test_hands_and_active_are_kept(self):
        a = state("b,_", blue="1,0", red="1,0", active="b")
        b = state("b,_", blue="1,0", red="1,0", active="r")
        assert canonicalize(a) != canonicalize(b)

    def test_pack_key_injective_over_enumeration(self):
        packed = {}
        for s in enumerate_states(Bounds(3, 3, 2)):
            key = canonicalize(s)
            value = pack_key(key)
            assert packed.setdefault(value, key) == key

    @given(round_boundary_states(max_piles=3, max_len=3, max_hand=2))
    @settings(max_examples=100, deadline=None)
    def test_canonically_equal_states_share_a_winner(self, s):
        permuted = s.__class__(
            board=tuple(reversed(s.board)),
            blue=s.blue,
            red=s.red,
            active=s.active,
            phase=s.phase,
        )
        assert canonicalize(permuted) == canonicalize(s)
        assert solve(s, want_pv=False).winner is solve(permuted, want_pv=False).winner

    @given(round_boundary_states(max_piles=3, max_len=3, max_hand=2))
    @settings(max_examples=60, deadline=None)
    def test_mirror_flips_the_winner(self, s):
        assert solve(mirror(s), want_pv=False).winner is solve(
            s, want_pv=False
        ).winner.opponent


class TestSharedMemo:
    def test_shared_memo_matches_fresh_solves(self):
        shared = {}
        for s in enumerate_states(Bounds(2, 2, 2)):
            with_shared = solve(s, memo=shared, want_pv=False).winner
            fresh = solve(s, want_pv=False).winner
            assert with_shared is fresh


class TestPolicySolve:
    def test_strategy_preserves_the_win(self):
        s = state("b,r,_", blue="2,0", red="1,0", active="b")
        assert solve(s, want_pv=False).winner is BLUE
        result = solve_with_policy(s, (BLUE, StrategyS()))
        assert result.winner is BLUE

    def test_policy_for_the_loser_cannot_rescue_it(self):
        s = state("_,_", blue="1,0", red="1,0", active="b")
        result = solve_with_policy(s, (RED, StrategyS()))
        assert result.winner is RED


class TestEnumeration:
    def test_small_counts_match_the_closed_form(self):
        for bounds in (Bounds(1, 1, 0), Bounds(2, 1, 1), Bounds(3, 2, 2)):
            states = list(enumerate_states(bounds))
            assert len(states) == count_round_boundary_states(bounds)
            assert len({canonicalize(s) for s in states}) == len(states)

    def test_documented_counts(self):
        assert count_round_boundary_states(Bounds(1, 1, 0)) == 6
        assert count_round_boundary_states(Bounds(1, 1, 1)) == 54

    def test_acceptance_sweep_root_count(self):
        # k=3, length <= 4, hands <= 3 is the primary sweep population
        assert count_round_boundary_states(Bounds(3, 4, 3)) == 33000
