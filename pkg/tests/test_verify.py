"""Verification sweeps at small bounds stay green and report faithfully."""

import random

import pytest

from sls.solver import Bounds
from sls.verify import (
    DEFAULT_SEED,
    THEOREM_IDS,
    attacker_edge_hypotheses,
    defender_edge_hypotheses,
    mu_trace_violations,
    nu_trace_violations,
    random_round_boundary_state,
    verify_characterization,
    verify_theorem,
)

from conftest import state

SMALL = Bounds(2, 2, 2)


class TestCharacterizationSweep:
    def test_small_sweep_is_clean(self):
        report = verify_characterization(SMALL, workers=1)
        assert report.ok
        assert report.disagreements == []
        assert report.states == report.agreements

    def test_strategy_check_can_be_skipped(self):
        fast = verify_characterization(SMALL, workers=1, check_strategy=False)
        assert fast.ok


class TestTheoremSweeps:
    @pytest.mark.parametrize("theorem", ["T3.5", "T3.10", "T4.7", "T4.12"])
    def test_reductions_are_clean(self, theorem):
        report = verify_theorem(theorem, SMALL, workers=1)
        assert report.ok, report.lines()

    @pytest.mark.parametrize("theorem", ["T2.1", "T2.2"])
    def test_next_player_tables(self, theorem):
        report = verify_theorem(theorem, SMALL, workers=1)
        assert report.ok
        assert report.states == 14

    @pytest.mark.parametrize("theorem", ["P2.3", "P2.4"])
    def test_playout_invariants(self, theorem):
        report = verify_theorem(theorem, SMALL, workers=1, playouts=300)
        assert report.ok
        assert report.states == 300

    def test_unknown_theorem_rejected(self):
        with pytest.raises(ValueError):
            verify_theorem("T9.9", SMALL)

    def test_all_published_ids_run(self):
        for theorem in THEOREM_IDS:
            report = verify_theorem(theorem, Bounds(2, 2, 1), workers=1, playouts=50)
            assert report.ok, (theorem, report.lines())


class TestMeasureTraces:
    def test_nu_trace_clean_on_a_qualifying_state(self):
        s = state("br,_,_", blue="3,0", red="1,0", active="b")
        assert attacker_edge_hypotheses(s)
        for seed in range(30):
            assert nu_trace_violations(s, seed) == []

    def test_mu_trace_clean_on_a_qualifying_state(self):
        s = state("br,rb,_", blue="1,0", red="3,0", active="b")
        assert defender_edge_hypotheses(s)
        for seed in range(10):
            assert mu_trace_violations(s, seed) == []

    def test_random_states_respect_bounds(self):
        rng = random.Random(DEFAULT_SEED)
        for _ in range(200):
            s = random_round_boundary_state(rng, SMALL)
            assert len(s.board) == SMALL.piles
            assert all(len(p) <= SMALL.max_pile_len for p in s.board)
            assert s.blue.total <= SMALL.max_hand
            assert s.red.total <= SMALL.max_hand
