"""CLI subcommands, output formats, and exit statuses."""

import json

from sls.cli import EXIT_INPUT, EXIT_OK, EXIT_VERIFY, main


def run(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


class TestEval:
    def test_text_output(self, capsys):
        status, out, _ = run(
            capsys, "eval", "--board", "_,_,_", "--blue", "2,0", "--red", "0,1",
            "--active", "b",
        )
        assert status == EXIT_OK
        assert "type: type I" in out
        assert "predicate: win for active player b" in out

    def test_records_output(self, capsys):
        status, out, _ = run(
            capsys, "eval", "--board", "b,r,_", "--blue", "1,0", "--red", "1,0",
            "--active", "b", "--format", "records",
        )
        assert status == EXIT_OK
        record = json.loads(out)
        assert record["board_type"] == "type I"
        assert record["state"]["board"] == ["b", "r", "_"]

    def test_bad_board_is_an_input_error(self, capsys):
        status, _, err = run(
            capsys, "eval", "--board", "zz", "--blue", "1,0", "--red", "1,0",
            "--active", "b",
        )
        assert status == EXIT_INPUT
        assert "error:" in err

    def test_non_alternating_board_is_an_input_error(self, capsys):
        status, _, err = run(
            capsys, "eval", "--board", "bb,_", "--blue", "1,0", "--red", "1,0",
            "--active", "b",
        )
        assert status == EXIT_INPUT

    def test_bad_hand_is_an_input_error(self, capsys):
        status, _, _ = run(
            capsys, "eval", "--board", "_,_", "--blue", "lots", "--red", "1,0",
            "--active", "b",
        )
        assert status == EXIT_INPUT


class TestSolve:
    def test_winner_and_variation(self, capsys):
        status, out, _ = run(
            capsys, "solve", "--board", "_,_", "--blue", "1,0", "--red", "1,0",
            "--active", "b",
        )
        assert status == EXIT_OK
        assert "winner: r" in out
        assert "pv: " in out

    def test_records_output_is_one_json_line(self, capsys):
        status, out, _ = run(
            capsys, "solve", "--board", "_,_", "--blue", "1,0", "--red", "0,1",
            "--active", "b", "--format", "records",
        )
        assert status == EXIT_OK
        record = json.loads(out)
        assert record["winner"] == "b"
        assert record["principal_variation"]


class TestVerify:
    def test_clean_sweep_exits_zero(self, capsys):
        status, out, _ = run(
            capsys, "verify", "--theorem", "Final", "--piles", "2",
            "--max-pile-len", "2", "--max-hand", "2",
        )
        assert status == EXIT_OK
        assert "status: ok" in out

    def test_records_format(self, capsys):
        status, out, _ = run(
            capsys, "verify", "--theorem", "T2.1", "--piles", "2",
            "--max-pile-len", "2", "--max-hand", "2", "--format", "records",
        )
        assert status == EXIT_OK
        record = json.loads(out)
        assert record["ok"] is True
        assert record["disagreements"] == []

    def test_bad_bounds_are_an_input_error(self, capsys):
        status, _, _ = run(
            capsys, "verify", "--theorem", "Final", "--piles", "0",
            "--max-pile-len", "2", "--max-hand", "2",
        )
        assert status == EXIT_INPUT


class TestPlay:
    def test_playout_streams_transitions(self, capsys):
        status, out, _ = run(
            capsys, "play", "--board", "b,r,_", "--blue", "2,1", "--red", "1,0",
            "--active", "b", "--red-policy", "random:5", "--seed", "1",
        )
        assert status == EXIT_OK
        assert "move: " in out
        assert "winner: " in out

    def test_records_are_line_delimited_json(self, capsys):
        status, out, _ = run(
            capsys, "play", "--board", "_,_", "--blue", "1,0", "--red", "1,0",
            "--active", "b", "--format", "records",
        )
        assert status == EXIT_OK
        lines = [json.loads(line) for line in out.strip().splitlines()]
        assert lines
        assert lines[-1]["state"]["winner"] in ("b", "r")

    def test_unknown_policy_is_an_input_error(self, capsys):
        status, _, _ = run(
            capsys, "play", "--board", "_,_", "--blue", "1,0", "--red", "1,0",
            "--active", "b", "--blue-policy", "alphabeta",
        )
        assert status == EXIT_INPUT


class TestExitCodesAreDistinct:
    def test_constants(self):
        assert (EXIT_OK, EXIT_INPUT, EXIT_VERIFY) == (0, 2, 3)
