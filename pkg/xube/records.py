#--------------------------------------------------------------------------------------------------#
# records.py                                                                                       #
#--------------------------------------------------------------------------------------------------#
# Description                                                                                      #
#--------------------------------------------------------------------------------------------------#
# JSON-lines files: problem instances and solve results (one record per line, summary last)        #
#--------------------------------------------------------------------------------------------------#
# History                                                                                          #
#--------------------------------------------------------------------------------------------------#
# coding 2026.10.22: 1st coding                                                                    #
#--------------------------------------------------------------------------------------------------#

#--------------------------------------------------------------------------------------------------#
# Libraries                                                                                        #
#--------------------------------------------------------------------------------------------------#
from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from xube.domain import Domain, ProblemInstance, replay_path, require
from xube.errors import CodecError, ReplayError

#--------------------------------------------------------------------------------------------------#
# Problem instances                                                                                #
#--------------------------------------------------------------------------------------------------#
def write_prob_insts(domain: Domain, insts: Sequence[ProblemInstance], path: str | Path) -> Path:
    require(domain, "Renderable", "writing problem instances")
    path = Path(path)
    with open(path, "w", encoding="utf-8") as f:
        for inst in insts:
            f.write(json.dumps({"start": domain.state_to_text(inst.start),
                                "goal": domain.goal_to_text(inst.goal),
                                "gen_steps": int(inst.gen_steps)}) + "\n")
    return path


def read_prob_insts(domain: Domain, path: str | Path) -> list[ProblemInstance]:
    """
    Read a problem-instance file

    Parameters
    ----------
    domain: `Domain`
        domain with the Renderable capability; its codecs decode the records
    path: `str` or `Path`
        JSON-lines file with fields start, goal, gen_steps

    Returns
    -------
    insts: list of `ProblemInstance`
    """
    require(domain, "Renderable", "reading problem instances")
    insts = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                insts.append(ProblemInstance(domain.state_from_text(rec["start"]),
                                             domain.goal_from_text(rec["goal"]), int(rec.get("gen_steps", 0))))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
                raise CodecError(f"{path}:{lineno}: bad problem instance ({e})") from e
    return insts


#--------------------------------------------------------------------------------------------------#
# Solve results                                                                                    #
#--------------------------------------------------------------------------------------------------#
@dataclass
class SolveRecord:
    index: int
    solved: bool
    path: list[str] = field(default_factory=list)
    path_cost: float | None = None
    iterations: int = 0
    nodes_generated: int = 0
    secs: float = 0.0

    @classmethod
    def from_result(cls, index: int, domain: Domain, result) -> SolveRecord:
        return cls(index, result.solved, [domain.action_to_str(a) for a in result.path],
                   result.path_cost if result.solved else None, result.iterations, result.nodes_generated,
                   result.wall_time)


def verify_path(domain: Domain, inst: ProblemInstance, actions: Sequence, path_cost: float) -> None:
    """Raise ReplayError unless ``actions`` lead from the start to the goal at ``path_cost``."""
    state, cost = replay_path(domain, inst.start, actions)
    if not domain.is_solved(state, inst.goal):
        raise ReplayError("reported path does not reach the goal")
    if cost != path_cost:
        raise ReplayError(f"reported path cost {path_cost} differs from replayed cost {cost}")


def verify_record(domain: Domain, inst: ProblemInstance, record: SolveRecord) -> None:
    if not record.solved:
        return
    require(domain, "StringToAct", "verifying a solve record")
    verify_path(domain, inst, [domain.parse_action(t) for t in record.path], record.path_cost)


def summarize(records: Sequence[SolveRecord]) -> dict:
    solved = [r for r in records if r.solved]

    def mean(values):
        return float(np.mean(values)) if len(values) else None

    return {
        "instances": len(records),
        "solved": len(solved),
        "solve_rate": len(solved) / len(records) if records else None,
        "path_cost_mean": mean([r.path_cost for r in solved]),
        "iterations_mean": mean([r.iterations for r in records]),
        "nodes_mean": mean([r.nodes_generated for r in records]),
        "secs_mean": mean([r.secs for r in records]),
    }


def write_results(path: str | Path, records: Sequence[SolveRecord]) -> dict:
    summary = summarize(records)
    with open(path, "w", encoding="utf-8") as f:
        for rec in records:
            f.write(json.dumps(asdict(rec)) + "\n")
        f.write(json.dumps({"summary": summary}) + "\n")
    return summary


def read_results(path: str | Path) -> tuple[list[SolveRecord], dict | None]:
    records, summary = [], None
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                if "summary" in rec:
                    summary = rec["summary"]
                else:
                    records.append(SolveRecord(**rec))
            except (json.JSONDecodeError, TypeError) as e:
                raise CodecError(f"{path}:{lineno}: bad result record ({e})") from e
    return records, summary
