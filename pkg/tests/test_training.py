"""Training loop: configuration, target updates, K schedule, replay buffer, outputs and determinism."""

import math

import numpy as np
import pytest
from astropy.table import Table

from xube.approx import MLP, MLPSpec, TableSnapshot, TabularApprox, ZeroTarget
from xube.checkpoint import read_checkpoint
from xube.domain import ProblemInstance
from xube.errors import ConfigError
from xube.grid import GridDomain, GridFlatInput, GridGoal, GridState
from xube.sliding_tile import SlidingTile
from xube.targets import ExampleBlock
from xube.training import (STATS_COLUMNS, ReplayBuffer, TargetUpdate, TrainConfig, TrainerState, _split, adapt_K,
                           check_domain, collect_update_check, train, update_check_and_maybe_swap)

from tests.oracles import grid_dijkstra


@pytest.fixture(scope="module")
def grid4():
    return GridDomain(4, 4, max_terrain_weight=3, seed=1)


def _block(targets, k=0):
    n = len(targets)
    return ExampleBlock(np.arange(n, dtype=np.float32)[:, None], np.asarray(targets, dtype=float),
                        np.full(n, -1), np.full(n, k))


def _grid_cfg(**kw):
    base = dict(batch_size=20, update_itrs=5, search_itrs=10, k_max=6, lr=1.0, max_update_checks=3, seed=3,
                record_timing=False)
    base.update(kw)
    return TrainConfig(**base)


class TestTargetUpdate:

    def test_parse(self):
        assert TargetUpdate.parse("always") == TargetUpdate()
        assert TargetUpdate.parse(" loss:0.5 ") == TargetUpdate("loss", 0.5)
        assert str(TargetUpdate.parse("loss:0.05")) == "loss:0.05"

    @pytest.mark.parametrize("text", ["never", "loss", "loss:", "loss:abc", "always:1"])
    def test_bad(self, text):
        with pytest.raises(ConfigError):
            TargetUpdate.parse(text)

    def test_loss_threshold(self):
        upd = TargetUpdate("loss", 0.5)
        assert upd.should_swap(0.4)
        assert not upd.should_swap(0.5)
        assert not upd.should_swap(math.nan)
        assert TargetUpdate().should_swap(123.0)

    def test_swap_freezes_current_network(self):
        table = TabularApprox(1)
        state = TrainerState(table, ZeroTarget(), TargetUpdate("loss", 1.0))
        assert not update_check_and_maybe_swap(state, 2.0)
        assert isinstance(state.target, ZeroTarget)
        x = np.zeros((1, 2), dtype=np.float32)
        table.train_batch(x, np.array([3.0]), None, 1.0)
        assert update_check_and_maybe_swap(state, 0.5)
        assert isinstance(state.target, TableSnapshot)
        assert state.swaps == 1
        table.train_batch(x, np.array([9.0]), None, 1.0)
        assert state.target.evaluate(x)[0, 0] == 3.0


class TestAdaptiveK:

    def test_doubling_trajectory(self):
        K, seen = 1, [1]
        for rate in [0.6, 0.6, 0.4, 0.8]:
            K = adapt_K(K, rate, 8)
            seen.append(K)
        assert seen == [1, 2, 4, 4, 8]

    def test_capped(self):
        assert adapt_K(5, 1.0, 8) == 8
        assert adapt_K(8, 1.0, 8) == 8
        assert adapt_K(3, 0.49, 8) == 3


class TestReplayBuffer:

    def test_keeps_last_blocks(self):
        buf = ReplayBuffer(2)
        buf.push(_block([1.0, 1.0]))
        buf.push(_block([2.0]))
        buf.push(_block([3.0, 3.0, 3.0]))
        assert len(buf) == 2
        assert buf.num_examples == 4
        sample = buf.sample(200, np.random.default_rng(0))
        assert len(sample) == 200
        assert set(sample.targets.tolist()) == {2.0, 3.0}

    def test_capacity(self):
        with pytest.raises(ConfigError):
            ReplayBuffer(0)


class TestConfig:

    def test_defaults_validate(self):
        cfg = TrainConfig().validate()
        assert cfg.examples_per_check == 1000
        assert cfg.insts_per_check == 20
        assert cfg.test_spec.family == "graph_v"
        assert cfg.algo_spec.I == 50

    def test_target_update_text(self):
        assert TrainConfig(target_update="loss:0.1").validate().target_update == TargetUpdate("loss", 0.1)

    @pytest.mark.parametrize("kw", [
        {"batch_size": 0},
        {"lr": 0.0},
        {"guidance": "oracle"},
        {"head": "x"},
        {"algo": "graph_q"},
        {"algo": "graph_v.4B"},
        {"test_algo": "sup_rev_v"},
        {"test_algo": "graph_q"},
        {"adaptive_k": True, "k_init": 40},
        {"replay": -1},
        {"lhbl_node_estimates": True},
    ])
    def test_invalid(self, kw):
        with pytest.raises(ConfigError):
            TrainConfig(**kw).validate()

    def test_initial_k(self):
        assert TrainConfig(adaptive_k=True).initial_k() == 1
        assert TrainConfig(adaptive_k=True, k_init=4).initial_k() == 4
        assert TrainConfig(adaptive_k=True, algo="sup_rev_v").initial_k() == 30
        assert TrainConfig(k_max=7).initial_k() == 7

    def test_domain_capabilities(self, grid4):
        check_domain(TrainConfig(her=True), grid4)
        with pytest.raises(ConfigError, match="ReverseWalkable"):
            check_domain(TrainConfig(algo="sup_rev_v"), grid4)
        check_domain(TrainConfig(algo="sup_rev_q", head="q"), SlidingTile(3))


class TestCollection:

    def test_split(self):
        assert _split(10, 3) == [4, 3, 3]
        assert _split(2, 4) == [1, 1, 0, 0]

    def test_budget_and_first_attempts(self, grid4):
        cfg = _grid_cfg().validate()
        block, stats = collect_update_check(grid4, cfg, GridFlatInput(grid4), ZeroTarget(), ZeroTarget(), 6)
        assert len(block) >= cfg.examples_per_check
        assert sum(r.first for r in stats.records) >= cfg.insts_per_check
        assert set(block.ks.tolist()) <= set(range(7))
        assert np.all(np.isfinite(block.targets))

    def test_supervised_block(self):
        stp3 = SlidingTile(3)
        cfg = TrainConfig(algo="sup_rev_v.5S", batch_size=10, update_itrs=2, search_itrs=4).validate()
        block, stats = collect_update_check(stp3, cfg, stp3.default_encoder(), ZeroTarget(), ZeroTarget(), 30)
        assert len(block) >= 20
        assert set(block.ks.tolist()) == {5}
        assert stats.records == []


class TestTrain:

    def test_outputs(self, tmp_path, grid4):
        cfg = _grid_cfg(test_every=1, save_preds=True)
        test_set = [ProblemInstance(GridState(0, 0), GridGoal(3, 3)), ProblemInstance(GridState(3, 0), GridGoal(0, 3))]
        result = train(grid4, cfg, GridFlatInput(grid4), TabularApprox(1), test_set, tmp_path)
        assert len(result.history) == 3
        names = {p.name for p in tmp_path.iterdir()}
        assert {"stats.csv", "stats_by_k.csv", "stats_test.csv", "preds.csv", "model.ckpt", "model_targ.ckpt",
                "train.log"} <= names
        stats = Table.read(tmp_path / "stats.csv", format="ascii.csv")
        assert stats.colnames == list(STATS_COLUMNS)
        assert list(stats["check"]) == [1, 2, 3]
        assert list(stats["itr"]) == [5, 10, 15]
        assert np.all(stats["secs_train"] == 0.0)
        assert len(Table.read(tmp_path / "stats_test.csv", format="ascii.csv")) == 3
        log_text = (tmp_path / "train.log").read_text()
        assert "#--- update check 3 ---#" in log_text
        ck = read_checkpoint(tmp_path / "model.ckpt")
        assert ck.kind == "table"
        assert ck.meta["domain"] == "grid"

    def test_table_reaches_exact_cost_to_go(self, tmp_path):
        domain = GridDomain(2, 2, max_terrain_weight=3, seed=1)
        enc = GridFlatInput(domain)
        cfg = TrainConfig(batch_size=50, update_itrs=10, search_itrs=10, k_max=4, lr=1.0, max_update_checks=10,
                          record_timing=False)
        result = train(domain, cfg, enc, TabularApprox(1), None, tmp_path)
        assert result.K == 4
        pairs = [(s, g) for s in domain.free_cells for g in domain.free_cells]
        states = [s for s, _ in pairs]
        goals = [GridGoal(g.row, g.col) for _, g in pairs]
        exact = [grid_dijkstra(domain, s)[g] for s, g in pairs]
        np.testing.assert_array_equal(result.approx.forward_batch(enc.encode(states, goals))[:, 0], exact)

    def test_deterministic(self, tmp_path, grid4):
        for run in ("a", "b"):
            train(grid4, _grid_cfg(), GridFlatInput(grid4), TabularApprox(1), None, tmp_path / run)
        for name in ("stats.csv", "stats_by_k.csv", "model.ckpt"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_q_head_with_her_and_backup(self, tmp_path, grid4):
        cfg = _grid_cfg(algo="graph_q", head="q", her=True, lhbl=True, lhbl_node_estimates=True, guidance="live",
                        replay=2)
        result = train(grid4, cfg, GridFlatInput(grid4), TabularApprox(4), None, tmp_path)
        assert all(s.num_examples >= cfg.examples_per_check for s in result.history)
        assert read_checkpoint(tmp_path / "model.ckpt").head == "q"

    def test_adaptive_k_is_logged(self, tmp_path, grid4):
        cfg = _grid_cfg(adaptive_k=True, max_update_checks=4)
        result = train(grid4, cfg, GridFlatInput(grid4), TabularApprox(1), None, tmp_path)
        ks = [s.k_max for s in result.history]
        assert ks[0] == 1
        assert all(b in (a, min(2 * a, 6)) for a, b in zip(ks, ks[1:]))

    def test_supervised_mlp(self, tmp_path):
        stp3 = SlidingTile(3)
        enc = stp3.default_encoder()
        cfg = TrainConfig(algo="sup_rev_v", batch_size=32, update_itrs=4, search_itrs=8, k_max=10, lr=1e-3,
                          max_update_checks=2, record_timing=False)
        net = MLP(MLPSpec((enc.input_dim, 16, 1)), rng=np.random.default_rng(0))
        result = train(stp3, cfg, enc, net, None, tmp_path)
        assert [s.k_max for s in result.history] == [10, 10]
        assert all(math.isnan(s.solve_rate) for s in result.history)
        assert all(np.isfinite(s.loss) for s in result.history)

    def test_parallel_workers(self, tmp_path, grid4):
        result = train(grid4, _grid_cfg(workers=2, max_update_checks=2), GridFlatInput(grid4), TabularApprox(1),
                       None, tmp_path)
        assert len(result.history) == 2
        assert all(s.num_examples >= 100 for s in result.history)

    def test_head_size_checked(self, tmp_path, grid4):
        with pytest.raises(ConfigError):
            train(grid4, _grid_cfg(), GridFlatInput(grid4), TabularApprox(4), None, tmp_path)
