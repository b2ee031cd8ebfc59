"""Command-line tool, driven through click's test runner."""

import json

import pytest
from click.testing import CliRunner

from xube._version import __version__
from xube.cli import cli, load_preset
from xube.records import read_prob_insts, read_results, verify_record
from xube.sliding_tile import SlidingTile

from tests.oracles import stp3_distances

GRID = "grid:width=3,height=3,max_terrain_weight=2,seed=4"


@pytest.fixture
def runner():
    return CliRunner()


def run(runner, *args, input=None):
    return runner.invoke(cli, ["--log-level", "error", *args], input=input, catch_exceptions=False)


def last_json(result):
    return json.loads(result.output.strip().splitlines()[-1])


@pytest.fixture
def stp3_insts(runner, tmp_path):
    path = tmp_path / "insts.jsonl"
    result = run(runner, "problem-inst", "--domain", "stp3", "--count", "12", "--k-max", "14", "--out", str(path),
                 "--seed", "5")
    assert result.exit_code == 0
    return path


@pytest.fixture
def grid_run(runner, tmp_path):
    out = tmp_path / "run"
    result = run(runner, "train", "--domain", GRID, "--arch", "table", "--out", str(out), "--batch-size", "10",
                 "--update-itrs", "2", "--search-itrs", "5", "--kmax", "4", "--lr", "1", "--max-checks", "2",
                 "--no-record-timing")
    assert result.exit_code == 0, result.output
    return out, last_json(result)


class TestInfo:

    def test_version(self, runner):
        result = runner.invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.output

    def test_domains(self, runner):
        out = run(runner, "domain-info").output
        for name in ("stp3", "stp4", "grid"):
            assert name in out
        assert "BatchedTransition" in out
        assert run(runner, "info", "domain").output == out

    def test_heuristics(self, runner):
        out = run(runner, "heuristic-info").output
        assert "mlp" in out
        assert "table" in out
        assert run(runner, "info", "heuristic").output == out

    def test_bad_log_level(self, runner):
        assert runner.invoke(cli, ["--log-level", "loud", "domain-info"]).exit_code == 2

    def test_time(self, runner):
        result = run(runner, "time", "--domain", "stp3", "--count", "10")
        assert result.exit_code == 0
        assert "samp_prob_insts" in result.output
        assert "next_states_batch" in result.output


class TestProblemInst:

    def test_deterministic(self, runner, tmp_path, stp3_insts):
        again = tmp_path / "again.jsonl"
        run(runner, "problem-inst", "--domain", "stp3", "--count", "12", "--k-max", "14", "--out", str(again),
            "--seed", "5")
        assert again.read_bytes() == stp3_insts.read_bytes()
        insts = read_prob_insts(SlidingTile(3), stp3_insts)
        assert len(insts) == 12
        assert all(0 <= inst.gen_steps <= 14 for inst in insts)

    def test_forward_scheme(self, runner, tmp_path):
        path = tmp_path / "fwd.jsonl"
        result = run(runner, "problem-inst", "--domain", GRID, "--count", "5", "--k-min", "2", "--k-max", "3",
                     "--scheme", "forward", "--out", str(path))
        assert result.exit_code == 0
        assert len(path.read_text().splitlines()) == 5

    @pytest.mark.parametrize("args", [
        ["--domain", "stp3", "--count", "3", "--k-min", "5", "--k-max", "2"],
        ["--domain", "rubik", "--count", "3", "--k-max", "2"],
        ["--domain", GRID, "--count", "3", "--k-max", "2", "--scheme", "reverse"],
    ])
    def test_usage_errors(self, runner, tmp_path, args):
        result = run(runner, "problem-inst", *args, "--out", str(tmp_path / "x.jsonl"))
        assert result.exit_code == 2


class TestSolve:

    def test_uniform_cost_results(self, runner, tmp_path, stp3_insts):
        out = tmp_path / "results.jsonl"
        result = run(runner, "solve", "--domain", "stp3", "--insts", str(stp3_insts), "--out", str(out))
        assert result.exit_code == 0
        assert last_json(result)["summary"]["solve_rate"] == 1.0
        stp3 = SlidingTile(3)
        insts = read_prob_insts(stp3, stp3_insts)
        records, summary = read_results(out)
        assert summary["instances"] == 12
        dist = stp3_distances()
        for inst, rec in zip(insts, records):
            verify_record(stp3, inst, rec)
            assert rec.path_cost == dist[inst.start.tiles]

    def test_algorithm_families(self, runner, tmp_path, stp3_insts):
        for algo in ("graph_q.5B", "beam_v.8B_1T", "rollout.50I"):
            result = run(runner, "solve", "--domain", "stp3", "--insts", str(stp3_insts), "--algo", algo,
                         "--out", str(tmp_path / "r.jsonl"))
            assert result.exit_code == 0, algo

    @pytest.mark.parametrize("algo", ["graph_x", "graph_v.2Z", "sup_rev_v"])
    def test_bad_algo(self, runner, tmp_path, stp3_insts, algo):
        result = run(runner, "solve", "--domain", "stp3", "--insts", str(stp3_insts), "--algo", algo,
                     "--out", str(tmp_path / "r.jsonl"))
        assert result.exit_code == 2

    def test_missing_insts_file(self, runner, tmp_path):
        result = run(runner, "solve", "--domain", "stp3", "--insts", str(tmp_path / "none.jsonl"),
                     "--out", str(tmp_path / "r.jsonl"))
        assert result.exit_code == 1

    def test_bad_insts_file(self, runner, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text('{"start": "1 2 3", "goal": "1 2 3 4 5 6 7 8 0"}\n')
        result = run(runner, "solve", "--domain", "stp3", "--insts", str(path), "--out", str(tmp_path / "r.jsonl"))
        assert result.exit_code == 2

    def test_with_trained_table(self, runner, tmp_path, grid_run):
        out, _ = grid_run
        insts = tmp_path / "grid.jsonl"
        run(runner, "problem-inst", "--domain", GRID, "--count", "6", "--k-max", "5", "--out", str(insts))
        result = run(runner, "solve", "--domain", GRID, "--insts", str(insts), "--ckpt", str(out / "model.ckpt"),
                     "--out", str(tmp_path / "r.jsonl"))
        assert result.exit_code == 0
        assert last_json(result)["summary"]["instances"] == 6
        wrong_head = run(runner, "solve", "--domain", GRID, "--insts", str(insts), "--algo", "graph_q",
                         "--ckpt", str(out / "model.ckpt"), "--out", str(tmp_path / "r.jsonl"))
        assert wrong_head.exit_code == 2

    def test_corrupt_checkpoint(self, runner, tmp_path, stp3_insts):
        ckpt = tmp_path / "bad.ckpt"
        ckpt.write_bytes(b"XUBE" + bytes(40))
        result = run(runner, "solve", "--domain", "stp3", "--insts", str(stp3_insts), "--ckpt", str(ckpt),
                     "--out", str(tmp_path / "r.jsonl"))
        assert result.exit_code == 1


class TestTrain:

    def test_flags(self, grid_run):
        out, summary = grid_run
        assert summary["checks"] == 2
        for name in ("stats.csv", "stats_by_k.csv", "model.ckpt", "model_targ.ckpt", "train.log"):
            assert (out / name).exists()

    def test_preset_file_with_override(self, runner, tmp_path):
        preset = tmp_path / "tiny.py"
        preset.write_text(f'domain = "{GRID}"\narch = "table"\nbatch_size = 10\nupdate_itrs = 2\n'
                          'search_itrs = 5\nk_max = 4\nlr = 1.0\nmax_update_checks = 3\nrecord_timing = False\n'
                          'unrelated = 1\n')
        assert "unrelated" not in load_preset(str(preset))
        result = run(runner, "train", "--preset", str(preset), "--max-checks", "1", "--out", str(tmp_path / "o"))
        assert result.exit_code == 0, result.output
        assert last_json(result)["checks"] == 1

    def test_builtin_preset(self, runner, tmp_path):
        result = run(runner, "train", "--preset", "GRID_TABLE", "--max-checks", "1", "--batch-size", "20",
                     "--update-itrs", "2", "--out", str(tmp_path / "o"))
        assert result.exit_code == 0, result.output

    def test_presets_load(self):
        for name in ("STP3_DAVI", "STP3_SUPERVISED", "GRID_TABLE"):
            values = load_preset(name)
            assert "domain" in values
            assert "algo" in values

    @pytest.mark.parametrize("args", [
        ["--arch", "table", "--max-checks", "1"],
        ["--domain", GRID, "--arch", "table", "--algo", "graph_v.4B"],
        ["--domain", GRID, "--arch", "table", "--target-update", "sometimes"],
        ["--domain", GRID, "--arch", "table", "--algo", "sup_rev_v"],
        ["--preset", "NO_SUCH_PRESET"],
    ])
    def test_usage_errors(self, runner, tmp_path, args):
        result = run(runner, "train", *args, "--out", str(tmp_path / "o"))
        assert result.exit_code == 2

    def test_summary(self, runner, grid_run):
        out, _ = grid_run
        result = run(runner, "train-summary", str(out))
        assert result.exit_code == 0
        assert "update check : 2" in result.output
        assert (out / "plotdata_overall.csv").exists()

    def test_summary_of_empty_dir(self, runner, tmp_path):
        assert run(runner, "train-summary", str(tmp_path)).exit_code == 2


class TestViz:

    def test_render(self, runner):
        result = run(runner, "viz", "--domain", "stp3")
        assert result.exit_code == 0
        assert "1 2 3\n4 5 6\n7 8 ." in result.output
        assert result.output.strip().endswith("solved")

    def test_interactive(self, runner):
        result = run(runner, "viz", "--domain", "stp3", "--interactive", input="U\nbogus\nD\nq\n")
        assert result.exit_code == 0
        assert "error:" in result.output
        assert "path cost: 2" in result.output
        assert [line.strip() for line in result.output.splitlines()].count("solved") == 2

    def test_end_of_input(self, runner):
        result = run(runner, "viz", "--domain", GRID, "--steps", "3", "--interactive", input="")
        assert result.exit_code == 0


@pytest.mark.slow
class TestAcceptance:

    def test_trained_stp3_heuristic(self, runner, tmp_path):
        out = tmp_path / "davi"
        assert run(runner, "train", "--preset", "STP3_DAVI", "--out", str(out)).exit_code == 0
        insts = tmp_path / "test.jsonl"
        run(runner, "problem-inst", "--domain", "stp3", "--count", "100", "--k-max", "30", "--out", str(insts),
            "--seed", "11")
        res = tmp_path / "res.jsonl"
        result = run(runner, "solve", "--domain", "stp3", "--insts", str(insts), "--ckpt", str(out / "model.ckpt"),
                     "--algo", "graph_v.10B_0.6W", "--out", str(res))
        assert result.exit_code == 0
        records, summary = read_results(res)
        assert summary["solve_rate"] >= 0.95
        dist = stp3_distances()
        for inst, rec in zip(read_prob_insts(SlidingTile(3), insts), records):
            if rec.solved:
                assert rec.path_cost <= 1.5 * dist[inst.start.tiles]
