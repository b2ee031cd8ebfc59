"""Problem-instance and solve-result files."""

import json

import numpy as np
import pytest

from xube.domain import ProblemInstance
from xube.errors import CodecError, ReplayError
from xube.grid import GridDomain, GridGoal, GridState
from xube.records import (SolveRecord, read_prob_insts, read_results, summarize, verify_path, verify_record,
                          write_prob_insts, write_results)
from xube.search import bwas, zero_heuristic
from xube.sliding_tile import SlidingTile


@pytest.fixture
def stp3():
    return SlidingTile(3)


class TestInstanceFiles:

    def test_write_then_read(self, tmp_path, stp3):
        insts = stp3.samp_prob_insts([0, 3, 9, 14], np.random.default_rng(0))
        path = write_prob_insts(stp3, insts, tmp_path / "insts.jsonl")
        assert read_prob_insts(stp3, path) == insts
        first = json.loads(path.read_text().splitlines()[0])
        assert set(first) == {"start", "goal", "gen_steps"}

    def test_blank_lines_skipped(self, tmp_path):
        grid = GridDomain(3, 3)
        path = tmp_path / "insts.jsonl"
        path.write_text('{"start": "0,0", "goal": "2,2"}\n\n{"start": "1,1", "goal": "0,0", "gen_steps": 4}\n')
        assert read_prob_insts(grid, path) == [ProblemInstance(GridState(0, 0), GridGoal(2, 2), 0),
                                               ProblemInstance(GridState(1, 1), GridGoal(0, 0), 4)]

    @pytest.mark.parametrize("bad", ['{"start": "0,0"}', "not json", '{"start": "9,9", "goal": "0,0"}'])
    def test_error_names_line(self, tmp_path, bad):
        path = tmp_path / "insts.jsonl"
        path.write_text('{"start": "0,0", "goal": "1,1"}\n' + bad + "\n")
        with pytest.raises(CodecError, match=":2:"):
            read_prob_insts(GridDomain(3, 3), path)


class TestVerification:

    def test_search_result_verifies(self, stp3):
        inst = stp3.samp_prob_insts([12], np.random.default_rng(1))[0]
        result = bwas(stp3, inst, zero_heuristic())
        verify_path(stp3, inst, result.path, result.path_cost)
        record = SolveRecord.from_result(0, stp3, result)
        verify_record(stp3, inst, record)
        assert record.path == [stp3.action_to_str(a) for a in result.path]

    def test_wrong_cost(self, stp3):
        inst = stp3.samp_prob_insts([5], np.random.default_rng(2))[0]
        result = bwas(stp3, inst, zero_heuristic())
        with pytest.raises(ReplayError):
            verify_path(stp3, inst, result.path, result.path_cost + 1)

    def test_path_short_of_goal(self, stp3):
        inst = stp3.samp_prob_insts([5], np.random.default_rng(3))[0]
        result = bwas(stp3, inst, zero_heuristic())
        with pytest.raises(ReplayError):
            verify_path(stp3, inst, result.path[:-1], result.path_cost - 1)

    def test_unsolved_record_not_checked(self, stp3):
        inst = stp3.samp_prob_insts([5], np.random.default_rng(4))[0]
        verify_record(stp3, inst, SolveRecord(0, False))


class TestResultFiles:

    def test_summary_line(self, tmp_path):
        records = [SolveRecord(0, True, ["U", "L"], 2.0, 3, 7, 0.5),
                   SolveRecord(1, False, [], None, 10, 30, 1.5)]
        summary = write_results(tmp_path / "results.jsonl", records)
        assert summary["solve_rate"] == 0.5
        assert summary["path_cost_mean"] == 2.0
        assert summary["iterations_mean"] == 6.5
        back, back_summary = read_results(tmp_path / "results.jsonl")
        assert back == records
        assert back_summary == summary

    def test_empty(self):
        assert summarize([])["solve_rate"] is None

    def test_bad_record(self, tmp_path):
        path = tmp_path / "results.jsonl"
        path.write_text('{"index": 0, "solved": true, "colour": "red"}\n')
        with pytest.raises(CodecError, match=":1:"):
            read_results(path)
