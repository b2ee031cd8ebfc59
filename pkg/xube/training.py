#--------------------------------------------------------------------------------------------------#
# training.py                                                                                      #
#--------------------------------------------------------------------------------------------------#
# Description                                                                                      #
#--------------------------------------------------------------------------------------------------#
# Training loop for heuristic functions: search-driven data collection over worker processes,      #
# replay buffer, gradient steps, target-network update checks, adaptive walk-length curriculum,    #
# stats CSVs, checkpoints and a plain-text training log                                            #
#--------------------------------------------------------------------------------------------------#
# History                                                                                          #
#--------------------------------------------------------------------------------------------------#
# coding 2026.10.22: 1st coding                                                                    #
# update 2026.10.24: test-set evaluation and prediction samples                                    #
#--------------------------------------------------------------------------------------------------#

#--------------------------------------------------------------------------------------------------#
# Libraries                                                                                        #
#--------------------------------------------------------------------------------------------------#
from __future__ import annotations

import math
import time
from collections import deque
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
from astropy.table import Table

from xube.algospec import AlgoSpec, parse_algo
from xube.approx import MLP, Approximator, Evaluator, ZeroTarget
from xube.checkpoint import save_checkpoint
from xube.domain import Domain, ProblemInstance, require, sample_ks
from xube.errors import ConfigError
from xube.logs import get_logger
from xube.search import NNetHeuristic, pathfind
from xube.supervised import sup_walk_train
from xube.targets import ExampleBlock, ExampleBuilder, her_examples, tree_examples

log = get_logger(__name__)

STATS_COLUMNS = ("check", "itr", "loss", "target_mean", "target_min", "target_max", "k_max", "solve_rate",
                 "path_cost_mean", "search_itrs_mean", "insts_generated", "secs_generate", "secs_targets",
                 "secs_train")
STATS_BY_K_COLUMNS = ("check", "k", "count", "solve_rate", "path_cost_mean", "search_itrs_mean", "target_mean")
STATS_TEST_COLUMNS = ("check", "solve_rate", "path_cost_mean", "search_itrs_mean")
PREDS_COLUMNS = ("check", "target", "prediction")
MAX_PREDS = 1000
MAX_IDLE_INSTS = 1000

#--------------------------------------------------------------------------------------------------#
# Configuration                                                                                    #
#--------------------------------------------------------------------------------------------------#
@dataclass(frozen=True)
class TargetUpdate:
    mode: str = "always"              # "always" or "loss"
    threshold: float = math.inf

    @classmethod
    def parse(cls, text: str) -> TargetUpdate:
        text = text.strip()
        if text == "always":
            return cls()
        kind, _, value = text.partition(":")
        if kind != "loss" or not value:
            raise ConfigError(f"target update must be 'always' or 'loss:<threshold>', got {text!r}")
        try:
            return cls("loss", float(value))
        except ValueError as e:
            raise ConfigError(f"bad loss threshold in {text!r}") from e

    def should_swap(self, loss: float) -> bool:
        return self.mode == "always" or loss < self.threshold

    def __str__(self):
        return "always" if self.mode == "always" else f"loss:{self.threshold:g}"


@dataclass
class TrainConfig:
    batch_size: int = 100             # N, examples per gradient step
    update_itrs: int = 10             # U, gradient steps per update check
    search_itrs: int = 50             # I, search iteration cap per instance
    k_max: int = 30                   # K_max, walk-length cap
    adaptive_k: bool = False          # double K when half of the instances are solved
    k_init: int | None = None         # first K when adaptive (default 1)
    replay: int = 0                   # R, update checks kept in the replay buffer
    lr: float = 1e-3
    workers: int = 1
    target_update: TargetUpdate = field(default_factory=TargetUpdate)
    guidance: str = "target"          # "target" or "live"
    her: bool = False
    lhbl: bool = False
    lhbl_node_estimates: bool = False  # with lhbl, internal nodes also see untraversed edges
    algo: str = "graph_v"
    head: str = "v"
    seed: int = 0
    max_update_checks: int = 10
    test_every: int = 0               # 0 disables test-set evaluation
    test_algo: str | None = None      # default graph_v / graph_q by head
    save_preds: bool = False
    record_timing: bool = True
    verbose: bool = False

    @property
    def algo_spec(self) -> AlgoSpec:
        return replace(parse_algo(self.algo), I=self.search_itrs)

    @property
    def test_spec(self) -> AlgoSpec:
        return parse_algo(self.test_algo or f"graph_{self.head}")

    @property
    def examples_per_check(self) -> int:
        return self.update_itrs * self.batch_size

    @property
    def insts_per_check(self) -> int:
        return math.ceil(self.update_itrs * self.batch_size / self.search_itrs)

    def validate(self) -> TrainConfig:
        for name in ("batch_size", "update_itrs", "search_itrs", "workers", "max_update_checks"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.k_max < 0 or self.replay < 0 or self.test_every < 0 or self.seed < 0:
            raise ConfigError("k_max, replay, test_every and seed must be >= 0")
        if not self.lr > 0:
            raise ConfigError(f"learning rate must be > 0, got {self.lr}")
        if self.k_init is not None and not 1 <= self.k_init <= self.k_max:
            raise ConfigError(f"k_init must be in [1, k_max={self.k_max}], got {self.k_init}")
        if self.lhbl_node_estimates and not self.lhbl:
            raise ConfigError("lhbl_node_estimates needs lhbl")
        if self.guidance not in ("target", "live"):
            raise ConfigError(f"guidance must be 'target' or 'live', got {self.guidance!r}")
        if self.head not in ("v", "q"):
            raise ConfigError(f"head must be 'v' or 'q', got {self.head!r}")
        if isinstance(self.target_update, str):
            self.target_update = TargetUpdate.parse(self.target_update)

        spec = self.algo_spec
        if spec.head is not None and spec.head != self.head:
            raise ConfigError(f"algorithm {spec.family} trains a heuristic-{spec.head} function, "
                              f"but head is {self.head}")
        if not spec.is_supervised and spec.B != 1:
            raise ConfigError(f"training search must have batch size B = 1, got {spec.B} in {self.algo!r}")
        test = self.test_spec
        if test.is_supervised or (test.head is not None and test.head != self.head):
            raise ConfigError(f"test algorithm {test.family} does not fit head {self.head}")
        return self

    def initial_k(self) -> int:
        if self.adaptive_k and not self.algo_spec.is_supervised:
            return self.k_init if self.k_init is not None else 1
        return self.k_max


def check_domain(cfg: TrainConfig, domain: Domain) -> None:
    """Capability checks that depend on the domain."""
    spec = cfg.algo_spec
    if cfg.head == "q":
        require(domain, "FixedActsEnum", "training a heuristic-q function")
    if spec.is_supervised:
        if "_fwd_" in spec.family:
            require(domain, "GoalSampleableFromState", spec.family)
        else:
            require(domain, "ReverseWalkable", spec.family)
        return
    require(domain, "ActsEnum", "training targets")
    if cfg.her:
        require(domain, "GoalSampleableFromState", "--her")


#--------------------------------------------------------------------------------------------------#
# Stats                                                                                            #
#--------------------------------------------------------------------------------------------------#
@dataclass(frozen=True)
class InstRecord:
    k: int
    first: bool
    solved: bool
    path_cost: float
    itrs: int


@dataclass
class CollectStats:
    records: list[InstRecord] = field(default_factory=list)
    insts_generated: int = 0
    secs_generate: float = 0.0
    secs_targets: float = 0.0
    discarded: int = 0

    def merge(self, other: CollectStats) -> CollectStats:
        return CollectStats(self.records + other.records, self.insts_generated + other.insts_generated,
                            self.secs_generate + other.secs_generate, self.secs_targets + other.secs_targets,
                            self.discarded + other.discarded)


@dataclass
class UpdateCheckStats:
    check: int
    itr: int
    loss: float
    target_mean: float
    target_min: float
    target_max: float
    k_max: int
    solve_rate: float
    path_cost_mean: float
    search_itrs_mean: float
    insts_generated: int
    secs_generate: float
    secs_targets: float
    secs_train: float
    swapped: bool = False
    num_examples: int = 0
    by_k: list[tuple] = field(default_factory=list)

    def row(self) -> tuple:
        return tuple(getattr(self, c) for c in STATS_COLUMNS)


def _mean(values) -> float:
    return float(np.mean(values)) if len(values) else math.nan


def _search_summary(records: list[InstRecord]) -> tuple[float, float, float]:
    firsts = [r for r in records if r.first]
    if not firsts:
        return math.nan, math.nan, math.nan
    return (sum(r.solved for r in firsts) / len(firsts),
            _mean([r.path_cost for r in firsts if r.solved]),
            _mean([r.itrs for r in firsts]))


def _by_k(check: int, block: ExampleBlock, records: list[InstRecord]) -> list[tuple]:
    rows = []
    for k in sorted(set(int(k) for k in block.ks) | {r.k for r in records}):
        recs = [r for r in records if r.k == k]
        rate, cost, itrs = _search_summary(recs)
        rows.append((check, k, sum(r.first for r in recs), rate, cost, itrs,
                     _mean(block.targets[block.ks == k])))
    return rows


#--------------------------------------------------------------------------------------------------#
# Data collection                                                                                  #
#--------------------------------------------------------------------------------------------------#
@dataclass
class CollectJob:
    domain: Domain
    encoder: object
    cfg: TrainConfig
    target: Evaluator
    guide: Evaluator
    K: int
    check: int
    worker_id: int
    num_insts: int
    budget: int


def _split(total: int, parts: int) -> list[int]:
    return [total // parts + (1 if i < total % parts else 0) for i in range(parts)]


def _collect_block(job: CollectJob) -> tuple[ExampleBlock, CollectStats]:
    """Work of one worker for one update check."""
    cfg, domain = job.cfg, job.domain
    rng = np.random.default_rng([job.cfg.seed ^ job.worker_id, job.check])
    spec = cfg.algo_spec
    builder = ExampleBuilder(domain, job.encoder, cfg.head)
    stats = CollectStats()

    if spec.is_supervised:
        t0 = time.perf_counter()
        direction = "forward" if "_fwd_" in spec.family else "reverse"
        blocks = []
        while sum(len(b) for b in blocks) < job.budget:
            num = max(job.num_insts, 1)
            ks = [spec.S] * num if spec.S > 0 else sample_ks(job.K, num, rng)
            blocks.append(sup_walk_train(domain, ks, direction, cfg.head, job.encoder, rng))
            stats.insts_generated += len(ks)
        stats.secs_targets = time.perf_counter() - t0
        return ExampleBlock.concat(blocks, job.encoder.input_dim), stats

    guide = NNetHeuristic(job.encoder, job.guide, cfg.head)
    target_fn = NNetHeuristic(job.encoder, job.target, cfg.head)

    t0 = time.perf_counter()
    insts = domain.samp_prob_insts(sample_ks(job.K, job.num_insts, rng), rng)
    stats.secs_generate += time.perf_counter() - t0
    stats.insts_generated += len(insts)
    queue: deque[tuple[ProblemInstance, bool]] = deque((inst, True) for inst in insts)

    idle = 0
    while queue or len(builder) < job.budget:
        t0 = time.perf_counter()
        if not queue:
            fresh = domain.samp_prob_insts(sample_ks(job.K, 1, rng), rng)[0]
            stats.insts_generated += 1
            queue.append((fresh, True))
        inst, first = queue.popleft()
        result = pathfind(domain, inst, spec, guide, rng)
        t1 = time.perf_counter()

        kept = tree_examples(builder, result, target_fn, cfg.lhbl, inst.gen_steps, cfg.lhbl_node_estimates)
        if cfg.her and not result.solved:
            kept += her_examples(builder, result.tree, rng, target_fn, inst.gen_steps)
        stats.records.append(InstRecord(inst.gen_steps, first, result.solved,
                                        result.path_cost if result.solved else math.nan, result.iterations))

        if result.solved and len(builder) < job.budget:
            resample = domain.samp_prob_insts([inst.gen_steps], rng)[0]
            stats.insts_generated += 1
            queue.append((resample, False))
        stats.secs_generate += t1 - t0
        stats.secs_targets += time.perf_counter() - t1

        idle = 0 if kept else idle + 1
        if idle >= MAX_IDLE_INSTS:
            log.warning("no usable examples from recent instances, ending collection early",
                        worker=job.worker_id, idle=idle, examples=len(builder))
            break

    t0 = time.perf_counter()
    stats.discarded = builder.discarded
    block = builder.build()
    stats.secs_targets += time.perf_counter() - t0
    return block, stats


def collect_update_check(
        domain: Domain,
        cfg: TrainConfig,
        encoder,
        target_snapshot: Evaluator,
        live_snapshot: Evaluator,
        K: int,
        check: int = 1,
        executor: Executor | None = None
        ) -> tuple[ExampleBlock, CollectStats]:
    """
    Generate instances, search them and compute training examples for one update check

    Parameters
    ----------
    domain: `Domain`
        pathfinding domain
    cfg: `TrainConfig`
        training configuration
    encoder: `NNetInput`
        (state, goal) encoder
    target_snapshot: `Evaluator`
        target network used for targets (and for guidance when cfg.guidance is "target")
    live_snapshot: `Evaluator`
        current network, used for guidance when cfg.guidance is "live"
    K: `int`
        current maximum walk length
    check: `int`
        update-check index, part of every worker seed
    executor: `concurrent.futures.Executor` or None
        pool for cfg.workers > 1

    Returns
    -------
    block: `ExampleBlock`
        examples of all workers
    stats: `CollectStats`
        per-instance records and timings
    """
    guide = target_snapshot if cfg.guidance == "target" else live_snapshot
    jobs = [CollectJob(domain, encoder, cfg, target_snapshot, guide, K, check, w, n, b)
            for w, (n, b) in enumerate(zip(_split(cfg.insts_per_check, cfg.workers),
                                           _split(cfg.examples_per_check, cfg.workers)))]
    if executor is None or cfg.workers == 1:
        outputs = [_collect_block(job) for job in jobs]
    else:
        outputs = list(executor.map(_collect_block, jobs))

    stats = CollectStats()
    for _, st in outputs:
        stats = stats.merge(st)
    return ExampleBlock.concat([b for b, _ in outputs], encoder.input_dim), stats


#--------------------------------------------------------------------------------------------------#
# Replay buffer & update checks                                                                    #
#--------------------------------------------------------------------------------------------------#
class ReplayBuffer:
    """The example blocks of the last ``capacity`` update checks."""

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ConfigError(f"replay capacity must be >= 1, got {capacity}")
        self.blocks: deque[ExampleBlock] = deque(maxlen=capacity)
        self._joined: ExampleBlock | None = None

    def __len__(self):
        return len(self.blocks)

    @property
    def num_examples(self) -> int:
        return sum(len(b) for b in self.blocks)

    def push(self, block: ExampleBlock) -> None:
        self.blocks.append(block)
        self._joined = None

    def sample(self, num: int, rng: np.random.Generator) -> ExampleBlock:
        """Uniform with replacement over every retained example."""
        if self._joined is None:
            self._joined = ExampleBlock.concat(list(self.blocks), self.blocks[0].inputs.shape[1])
        idx = rng.integers(len(self._joined), size=num)
        j = self._joined
        return ExampleBlock(j.inputs[idx], j.targets[idx], j.actions[idx], j.ks[idx])


@dataclass
class TrainerState:
    approx: Approximator
    target: Evaluator
    target_update: TargetUpdate
    swaps: int = 0


def update_check_and_maybe_swap(state: TrainerState, loss: float) -> bool:
    """Copy the current network into the target network if the update criterion holds."""
    if not state.target_update.should_swap(loss):
        return False
    state.target = state.approx.snapshot()
    state.swaps += 1
    return True


def adapt_K(current_K: int, solve_rate: float, K_max: int) -> int:
    if solve_rate >= 0.5 and current_K < K_max:
        return min(2 * current_K, K_max)
    return current_K


def _train_steps(approx: Approximator, buffer: ReplayBuffer, cfg: TrainConfig,
                 rng: np.random.Generator) -> float:
    if buffer.num_examples == 0:
        log.warning("replay buffer is empty, skipping gradient steps")
        return math.nan
    losses = []
    for _ in range(cfg.update_itrs):
        batch = buffer.sample(cfg.batch_size, rng)
        mask = batch.actions if cfg.head == "q" else None
        losses.append(approx.train_batch(batch.inputs, batch.targets, mask, cfg.lr))
    return float(np.mean(losses))


#--------------------------------------------------------------------------------------------------#
# Outputs                                                                                          #
#--------------------------------------------------------------------------------------------------#
def write_csv(path: Path, columns, rows) -> None:
    cols = list(zip(*rows)) if rows else [[] for _ in columns]
    Table([list(c) for c in cols], names=columns).write(path, format="ascii.csv", overwrite=True)


def evaluate_test_set(domain, insts, spec: AlgoSpec, heuristic, seed: int) -> tuple[float, float, float]:
    """Solve rate, mean solved path cost and mean iterations of ``spec`` on ``insts``."""
    results = [pathfind(domain, inst, spec, heuristic, np.random.default_rng([seed, i]))
               for i, inst in enumerate(insts)]
    if not results:
        return math.nan, math.nan, math.nan
    return (sum(r.solved for r in results) / len(results), _mean([r.path_cost for r in results if r.solved]),
            _mean([r.iterations for r in results]))


def _pred_rows(approx, block: ExampleBlock, check: int, head: str, rng) -> list[tuple]:
    if len(block) == 0:
        return []
    idx = np.sort(rng.choice(len(block), size=min(MAX_PREDS, len(block)), replace=False))
    out = approx.forward_batch(block.inputs[idx])
    preds = out[:, 0] if head == "v" else out[np.arange(len(idx)), block.actions[idx]]
    return [(check, float(t), float(p)) for t, p in zip(block.targets[idx], preds)]


def _log_block(stats: UpdateCheckStats, K_next: int) -> str:
    return "\n".join([
        f"#--- update check {stats.check} ---#",
        f"itr              : {stats.itr}",
        f"loss             : {stats.loss:.6g}",
        f"targets          : mean {stats.target_mean:.4g} | min {stats.target_min:.4g} | max {stats.target_max:.4g}",
        f"examples         : {stats.num_examples}",
        f"K                : {stats.k_max} -> {K_next}",
        f"solve rate       : {stats.solve_rate:.4g}",
        f"path cost (mean) : {stats.path_cost_mean:.4g}",
        f"search itrs      : {stats.search_itrs_mean:.4g}",
        f"instances        : {stats.insts_generated}",
        f"target swapped   : {stats.swapped}",
        f"secs             : generate {stats.secs_generate:.3f} | targets {stats.secs_targets:.3f} | "
        f"train {stats.secs_train:.3f}",
        "",
    ])


#--------------------------------------------------------------------------------------------------#
# Main                                                                                             #
#--------------------------------------------------------------------------------------------------#
@dataclass
class TrainResult:
    approx: Approximator
    target: Evaluator
    history: list[UpdateCheckStats]
    K: int


def train(
        domain: Domain,
        cfg: TrainConfig,
        encoder,
        approx: Approximator,
        test_set: list[ProblemInstance] | None = None,
        out_dir: str | Path = "."
        ) -> TrainResult:
    """
    Train ``approx`` as a heuristic function for ``domain``

    Runs with the same configuration and seed write the same stats, checkpoints and log, except
    for the secs_* columns when cfg.record_timing is on (the default). Those hold wall-clock
    times; with record_timing off they are written as 0.

    Parameters
    ----------
    domain: `Domain`
        pathfinding domain
    cfg: `TrainConfig`
        training configuration
    encoder: `NNetInput`
        (state, goal) encoder
    approx: `Approximator`
        output size 1 (head v) or |A| (head q); trained in place
    test_set: list of `ProblemInstance` or None
        evaluated every cfg.test_every update checks
    out_dir: `str` or `Path`
        destination of stats CSVs, checkpoints and train.log

    Returns
    -------
    result: `TrainResult`
        trained approximator, final target network, stats history and final K
    """
    cfg.validate()
    check_domain(cfg, domain)
    out_dim = 1 if cfg.head == "v" else domain.num_actions()
    if approx.out_dim != out_dim:
        raise ConfigError(f"approximator output size {approx.out_dim} does not fit head {cfg.head} ({out_dim})")
    if isinstance(approx, MLP) and approx.spec.in_dim != encoder.input_dim:
        raise ConfigError(f"MLP input size {approx.spec.in_dim} differs from encoder size {encoder.input_dim}")
    spec = cfg.algo_spec

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    log_path = out_dir / "train.log"
    log_path.write_text("")
    meta = {"domain": getattr(domain, "name", "domain"), "algo": cfg.algo, "seed": cfg.seed}
    if cfg.guidance == "live":
        log.info("live guidance uses a snapshot of the current network refreshed every update check")

    rng = np.random.default_rng([cfg.seed, 0x7EED])
    state = TrainerState(approx, ZeroTarget(out_dim), cfg.target_update)
    K = cfg.initial_k()
    buffer = ReplayBuffer(max(cfg.replay, 1))
    history: list[UpdateCheckStats] = []
    by_k_rows, test_rows, pred_rows = [], [], []
    itr = 0

    executor = ProcessPoolExecutor(max_workers=cfg.workers) if cfg.workers > 1 else None
    try:
        for check in range(1, cfg.max_update_checks + 1):
            log.info("Retrieving training data ...", check=check, K=K)
            block, coll = collect_update_check(domain, cfg, encoder, state.target, approx.snapshot(), K,
                                               check, executor)
            buffer.push(block)

            t0 = time.perf_counter()
            loss = _train_steps(approx, buffer, cfg, rng)
            secs_train = time.perf_counter() - t0
            itr += cfg.update_itrs
            swapped = update_check_and_maybe_swap(state, loss)

            rate, cost, itrs = _search_summary(coll.records)
            timing = cfg.record_timing
            stats = UpdateCheckStats(
                check=check, itr=itr, loss=loss,
                target_mean=_mean(block.targets),
                target_min=float(block.targets.min()) if len(block) else math.nan,
                target_max=float(block.targets.max()) if len(block) else math.nan,
                k_max=K, solve_rate=rate, path_cost_mean=cost, search_itrs_mean=itrs,
                insts_generated=coll.insts_generated,
                secs_generate=coll.secs_generate if timing else 0.0,
                secs_targets=coll.secs_targets if timing else 0.0,
                secs_train=secs_train if timing else 0.0,
                swapped=swapped, num_examples=len(block), by_k=_by_k(check, block, coll.records))
            history.append(stats)
            by_k_rows += stats.by_k

            K_next = K
            if cfg.adaptive_k and not spec.is_supervised and not math.isnan(rate):
                K_next = adapt_K(K, rate, cfg.k_max)

            if cfg.test_every and test_set and check % cfg.test_every == 0:
                heuristic = NNetHeuristic(encoder, approx.snapshot(), cfg.head)
                test_rows.append((check, *evaluate_test_set(domain, test_set, cfg.test_spec, heuristic, cfg.seed)))
                log.info("test set evaluated", check=check, solve_rate=test_rows[-1][1],
                         path_cost_mean=test_rows[-1][2])
            if cfg.save_preds:
                pred_rows += _pred_rows(approx, block, check, cfg.head, rng)

            write_csv(out_dir / "stats.csv", STATS_COLUMNS, [s.row() for s in history])
            write_csv(out_dir / "stats_by_k.csv", STATS_BY_K_COLUMNS, by_k_rows)
            if cfg.test_every:
                write_csv(out_dir / "stats_test.csv", STATS_TEST_COLUMNS, test_rows)
            if cfg.save_preds:
                write_csv(out_dir / "preds.csv", PREDS_COLUMNS, pred_rows)
            save_checkpoint(approx, out_dir / "model.ckpt", cfg.head, meta)
            save_checkpoint(state.target, out_dir / "model_targ.ckpt", cfg.head, meta)
            with open(log_path, "a") as f:
                f.write(_log_block(stats, K_next))

            log.info("Completed : update check", check=check, loss=loss, solve_rate=rate, K=K,
                     examples=len(block), swapped=swapped)
            if cfg.verbose:
                log.info("update check timing", check=check, secs_generate=coll.secs_generate,
                         secs_targets=coll.secs_targets, secs_train=secs_train, discarded=coll.discarded)
            K = K_next
    finally:
        if executor is not None:
            executor.shutdown()

    return TrainResult(approx, state.target, history, K)
