#--------------------------------------------------------------------------------------------------#
# cli.py                                                                                           #
#--------------------------------------------------------------------------------------------------#
# Description                                                                                      #
#--------------------------------------------------------------------------------------------------#
# Command-line tool: domain-info, heuristic-info, info, time, problem-inst, train, train-summary,   #
# solve, viz. Exit codes: 0 success, 2 usage / configuration error, 1 runtime failure              #
#--------------------------------------------------------------------------------------------------#
# History                                                                                          #
#--------------------------------------------------------------------------------------------------#
# coding 2026.10.23: 1st coding                                                                    #
# update 2026.10.25: training presets, parallel solve                                              #
#--------------------------------------------------------------------------------------------------#

#--------------------------------------------------------------------------------------------------#
# Libraries                                                                                        #
#--------------------------------------------------------------------------------------------------#
from __future__ import annotations

import functools
import importlib.util
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import fields
from pathlib import Path

import click
import numpy as np

from xube import logs
from xube._version import __version__
from xube.algospec import parse_algo
from xube.checkpoint import read_checkpoint
from xube.domain import gen_prob_insts_forward, gen_prob_insts_reverse, require
from xube.errors import CodecError, ConfigError, InvalidActionError, XubeError
from xube.records import (SolveRecord, read_prob_insts, verify_path, write_prob_insts, write_results)
from xube.registry import REGISTRY
from xube.search import NNetHeuristic, pathfind
from xube.summary import train_summary
from xube.timing import time_domain
from xube.training import TargetUpdate, TrainConfig, train

log = logs.get_logger(__name__)

PRESET_DIR = Path(__file__).resolve().parent.parent / "input" / "train"


def handle_errors(fn):
    """Map library errors to click exceptions (usage errors exit 2, runtime failures exit 1)."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ConfigError, CodecError) as e:
            raise click.UsageError(str(e)) from e
        except (XubeError, OSError) as e:
            raise click.ClickException(str(e)) from e
    return wrapper


def _echo_table(table) -> None:
    click.echo("\n".join(table.pformat(max_lines=-1, max_width=-1)))


#--------------------------------------------------------------------------------------------------#
# Group                                                                                            #
#--------------------------------------------------------------------------------------------------#
@click.group()
@click.version_option(__version__, prog_name="xube")
@click.option("--log-level", default=None, help=f"Log level. Default is ${logs.LOG_ENV} or info")
def cli(log_level: str | None) -> None:
    try:
        logs.configure(log_level)
    except ConfigError as e:
        raise click.UsageError(str(e)) from e


#--------------------------------------------------------------------------------------------------#
# Info                                                                                             #
#--------------------------------------------------------------------------------------------------#
def _domain_info() -> None:
    for name, entry in REGISTRY.domains.items():
        domain = entry.factory()
        click.echo(f"{name:8s} : {entry.help}")
        click.echo(f"{'':8s}   capabilities : {', '.join(domain.capabilities())}")
        click.echo(f"{'':8s}   arguments    : {entry.usage()}")


def _heuristic_info() -> None:
    for name, entry in REGISTRY.approximators.items():
        click.echo(f"{name:8s} : {entry.help}")
        click.echo(f"{'':8s}   arguments    : {entry.usage()}")
    click.echo("encoders : " + ", ".join(f"({d}, {a})" for d, a, _ in REGISTRY.encoders))
    click.echo("builtin  : zero heuristic (used by solve when no checkpoint is given)")


@cli.command("domain-info")
def domain_info() -> None:
    """List registered domains, their capabilities and arguments."""
    _domain_info()


@cli.command("heuristic-info")
def heuristic_info() -> None:
    """List registered approximators and encoders."""
    _heuristic_info()


@cli.command("info")
@click.argument("kind", type=click.Choice(["domain", "heuristic"]))
def info(kind: str) -> None:
    """Same as domain-info / heuristic-info."""
    _domain_info() if kind == "domain" else _heuristic_info()


#--------------------------------------------------------------------------------------------------#
# time                                                                                             #
#--------------------------------------------------------------------------------------------------#
@cli.command("time")
@click.option("--domain", "domain_text", required=True, help="Domain, e.g. stp3 or grid:width=8")
@click.option("--ckpt", type=click.Path(dir_okay=False), default=None, help="Also time encoder + forward pass")
@click.option("--count", type=int, default=100, show_default=True, help="Workload size")
@click.option("--seed", type=int, default=0, show_default=True)
@handle_errors
def time_cmd(domain_text: str, ckpt: str | None, count: int, seed: int) -> None:
    """Time the basic operations of a domain."""
    domain = REGISTRY.get_domain(domain_text)
    encoder = approx = None
    if ckpt is not None:
        ck = read_checkpoint(ckpt)
        approx = ck.approx
        encoder = REGISTRY.get_encoder(domain, ck.kind if ck.kind in ("mlp", "table") else "mlp")
    _echo_table(time_domain(domain, count, encoder, approx, seed))


#--------------------------------------------------------------------------------------------------#
# problem-inst                                                                                     #
#--------------------------------------------------------------------------------------------------#
@cli.command("problem-inst")
@click.option("--domain", "domain_text", required=True)
@click.option("--count", type=int, required=True)
@click.option("--k-min", type=int, default=0, show_default=True)
@click.option("--k-max", type=int, required=True)
@click.option("--scheme", type=click.Choice(["forward", "reverse"]), default=None,
              help="Generation scheme. Default is the domain's own")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@handle_errors
def problem_inst(domain_text, count, k_min, k_max, scheme, out_path, seed) -> None:
    """Generate problem instances with random walks of length k_min..k_max."""
    if not 0 <= k_min <= k_max or count < 0:
        raise ConfigError(f"need 0 <= k-min <= k-max and count >= 0, got {k_min}, {k_max}, {count}")
    domain = REGISTRY.get_domain(domain_text)
    rng = np.random.default_rng(seed)
    ks = [int(k) for k in rng.integers(k_min, k_max + 1, size=count)]
    log.info("Retrieving problem instances ...", domain=domain.name, count=count)
    if scheme == "forward":
        insts = gen_prob_insts_forward(domain, ks, rng)
    elif scheme == "reverse":
        insts = gen_prob_insts_reverse(domain, ks, rng)
    else:
        insts = domain.samp_prob_insts(ks, rng)
    write_prob_insts(domain, insts, out_path)
    log.info("Completed : problem instances", path=out_path)


#--------------------------------------------------------------------------------------------------#
# train                                                                                            #
#--------------------------------------------------------------------------------------------------#
CONFIG_FIELDS = {f.name for f in fields(TrainConfig)}


def load_preset(name: str) -> dict:
    """Constants of input/train/<name>.py (or of a .py path) that name TrainConfig fields."""
    path = Path(name) if name.endswith(".py") else PRESET_DIR / f"{name}.py"
    if not path.exists():
        raise ConfigError(f"training preset {name!r} not found ({path})")
    spec = importlib.util.spec_from_file_location(f"xube_preset_{path.stem}", path)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return {k: getattr(module, k) for k in CONFIG_FIELDS | {"domain", "arch"} if hasattr(module, k)}


@cli.command("train")
@click.option("--preset", default=None, help="Preset name under input/train or path to a .py preset")
@click.option("--domain", "domain_text", default=None)
@click.option("--arch", default=None, help="Approximator, e.g. mlp:hidden=400-200 or table")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), required=True)
@click.option("--algo", default=None, help="Training search, e.g. graph_v or sup_rev_v")
@click.option("--head", type=click.Choice(["v", "q"]), default=None)
@click.option("--batch-size", type=int, default=None, help="N")
@click.option("--update-itrs", type=int, default=None, help="U")
@click.option("--search-itrs", type=int, default=None, help="I")
@click.option("--kmax", "k_max", type=int, default=None)
@click.option("--k-init", type=int, default=None)
@click.option("--adaptive-k/--no-adaptive-k", default=None)
@click.option("--replay", type=int, default=None, help="R")
@click.option("--lr", type=float, default=None)
@click.option("--target-update", default=None, help="always | loss:<threshold>")
@click.option("--guidance", type=click.Choice(["target", "live"]), default=None)
@click.option("--her/--no-her", default=None)
@click.option("--lhbl/--no-lhbl", default=None)
@click.option("--lhbl-node-estimates/--no-lhbl-node-estimates", default=None,
              help="With --lhbl, internal nodes also take target-network values of untraversed edges")
@click.option("--max-checks", "max_update_checks", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--workers", type=int, default=None)
@click.option("--test-insts", type=click.Path(dir_okay=False), default=None)
@click.option("--test-algo", default=None)
@click.option("--test-every", type=int, default=None)
@click.option("--save-preds/--no-save-preds", default=None)
@click.option("--record-timing/--no-record-timing", default=None,
              help="Wall-clock secs_* columns; off writes 0 so same-seed runs are byte-identical")
@click.option("--verbose", is_flag=True, default=None)
@handle_errors
def train_cmd(preset, domain_text, arch, out_dir, test_insts, **flags) -> None:
    """Train a heuristic function."""
    values = load_preset(preset) if preset else {}
    if domain_text is not None:
        values["domain"] = domain_text
    if arch is not None:
        values["arch"] = arch
    values.update({k: v for k, v in flags.items() if v is not None})
    domain_text = values.pop("domain", None)
    arch = values.pop("arch", "mlp")
    if domain_text is None:
        raise ConfigError("--domain is required (directly or through --preset)")
    if isinstance(values.get("target_update"), str):
        values["target_update"] = TargetUpdate.parse(values["target_update"])

    cfg = TrainConfig(**values).validate()
    domain = REGISTRY.get_domain(domain_text)
    encoder = REGISTRY.get_encoder(domain, arch)
    out_dim = 1 if cfg.head == "v" else domain.num_actions()
    approx = REGISTRY.get_approx(arch, encoder.input_dim, out_dim)
    test_set = read_prob_insts(domain, test_insts) if test_insts else None

    log.info("Retrieving training run ...", domain=domain.name, arch=arch, algo=cfg.algo, head=cfg.head,
             out=out_dir)
    result = train(domain, cfg, encoder, approx, test_set, out_dir)
    last = result.history[-1]
    log.info("Completed : training", checks=len(result.history), loss=last.loss, K=result.K)
    click.echo(json.dumps({"checks": len(result.history), "loss": last.loss, "K": result.K,
                           "solve_rate": None if math.isnan(last.solve_rate) else last.solve_rate}))


#--------------------------------------------------------------------------------------------------#
# train-summary                                                                                    #
#--------------------------------------------------------------------------------------------------#
@cli.command("train-summary")
@click.argument("stats_dir", type=click.Path(file_okay=False))
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None,
              help="Where plotdata_*.csv go. Default is STATS_DIR")
@handle_errors
def train_summary_cmd(stats_dir: str, out_dir: str | None) -> None:
    """Per-k table of the latest update check and plot-data CSVs."""
    summary = train_summary(stats_dir, out_dir)
    click.echo(f"update check : {summary.latest_check}")
    _echo_table(summary.latest_by_k)
    for path in summary.written:
        click.echo(f"wrote        : {path}")


#--------------------------------------------------------------------------------------------------#
# solve                                                                                            #
#--------------------------------------------------------------------------------------------------#
def solve_one(domain, inst, spec, heuristic, seed: int, index: int, verbose: bool = False) -> SolveRecord:
    """Solve one instance with its own generator and replay-verify the path."""
    result = pathfind(domain, inst, spec, heuristic, np.random.default_rng([seed, index]), verbose)
    if result.solved:
        verify_path(domain, inst, result.path, result.path_cost)
    return SolveRecord.from_result(index, domain, result)


def _solve_job(args) -> SolveRecord:
    return solve_one(*args)


@cli.command("solve")
@click.option("--domain", "domain_text", required=True)
@click.option("--insts", "insts_path", type=click.Path(dir_okay=False), required=True)
@click.option("--ckpt", type=click.Path(dir_okay=False), default=None,
              help="Heuristic checkpoint. Without it the zero heuristic is used")
@click.option("--algo", default="graph_v", show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--verbose", is_flag=True, default=False, help="Log every search iteration")
@handle_errors
def solve_cmd(domain_text, insts_path, ckpt, algo, out_path, seed, workers, verbose) -> None:
    """Solve problem instances and write JSON-lines results with a summary line."""
    if workers < 1:
        raise ConfigError(f"--workers must be >= 1, got {workers}")
    domain = REGISTRY.get_domain(domain_text)
    spec = parse_algo(algo)
    if spec.is_supervised:
        raise ConfigError(f"{spec.family} is a training-only algorithm")
    insts = read_prob_insts(domain, insts_path)

    heuristic = None
    if ckpt is not None:
        ck = read_checkpoint(ckpt)
        if spec.head is not None and ck.head != spec.head:
            raise ConfigError(f"{spec.family} needs a heuristic-{spec.head} checkpoint, {ckpt} holds "
                              f"a heuristic-{ck.head} function")
        if ck.head == "q":
            require(domain, "FixedActsEnum", "heuristic-q checkpoints")
        encoder = REGISTRY.get_encoder(domain, ck.kind if ck.kind in ("mlp", "table") else "mlp")
        heuristic = NNetHeuristic(encoder, ck.approx, ck.head)

    log.info("Retrieving solutions ...", domain=domain.name, algo=str(spec), instances=len(insts))
    jobs = [(domain, inst, spec, heuristic, seed, i, verbose) for i, inst in enumerate(insts)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            records = list(ex.map(_solve_job, jobs))
    else:
        records = [_solve_job(job) for job in jobs]
    summary = write_results(out_path, records)
    log.info("Completed : solutions", path=out_path, **summary)
    click.echo(json.dumps({"summary": summary}))


#--------------------------------------------------------------------------------------------------#
# viz                                                                                              #
#--------------------------------------------------------------------------------------------------#
@cli.command("viz")
@click.option("--domain", "domain_text", required=True)
@click.option("--steps", type=int, default=0, show_default=True, help="Random-walk length of the instance")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--interactive", is_flag=True, default=False, help="Read actions from stdin ('q' quits)")
@handle_errors
def viz(domain_text: str, steps: int, seed: int, interactive: bool) -> None:
    """Render a generated instance; optionally apply actions typed on stdin."""
    domain = REGISTRY.get_domain(domain_text)
    require(domain, "Renderable", "viz")
    if interactive:
        require(domain, "StringToAct", "viz --interactive")
    if steps < 0:
        raise ConfigError(f"--steps must be >= 0, got {steps}")
    inst = domain.samp_prob_insts([steps], np.random.default_rng(seed))[0]

    click.echo("goal:")
    click.echo(domain.render_goal(inst.goal))
    click.echo("start:")
    state = inst.start
    click.echo(domain.render_state(state))
    if domain.is_solved(state, inst.goal):
        click.echo("solved")
    if not interactive:
        return

    stdin = click.get_text_stream("stdin")
    cost = 0.0
    while True:
        click.echo("action ('q' to quit): ", nl=False)
        line = stdin.readline()
        if not line or line.strip() == "q":
            break
        try:
            tr = domain.next_state(state, domain.parse_action(line))
        except (CodecError, InvalidActionError) as e:
            click.echo(f"error: {e}")
            continue
        state, cost = tr.next_state, cost + tr.cost
        click.echo(domain.render_state(state))
        click.echo(f"path cost: {cost:g}")
        if domain.is_solved(state, inst.goal):
            click.echo("solved")


def main() -> None:
    cli(prog_name="xube")


if __name__ == "__main__":
    main()
