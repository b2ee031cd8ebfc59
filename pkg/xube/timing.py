#--------------------------------------------------------------------------------------------------#
# timing.py                                                                                        #
#--------------------------------------------------------------------------------------------------#
# Description                                                                                      #
#--------------------------------------------------------------------------------------------------#
# Times the core operations and capabilities of a domain (and encoder + approximator if given)     #
#--------------------------------------------------------------------------------------------------#
# History                                                                                          #
#--------------------------------------------------------------------------------------------------#
# coding 2026.10.23: 1st coding                                                                    #
#--------------------------------------------------------------------------------------------------#

#--------------------------------------------------------------------------------------------------#
# Libraries                                                                                        #
#--------------------------------------------------------------------------------------------------#
import time

import numpy as np
from astropy.table import Table

from xube.domain import CAPABILITIES, Domain, sample_ks
from xube.errors import DeadEndError
from xube.nnet_input import encode_state_goal

#--------------------------------------------------------------------------------------------------#
# Main                                                                                             #
#--------------------------------------------------------------------------------------------------#
TIMING_COLUMNS = ("op", "status", "calls", "total_secs", "per_call_us")


def _timed(fn, calls):
    t0 = time.perf_counter()
    fn()
    total = time.perf_counter() - t0
    return ("ok", calls, total, 1e6 * total / max(calls, 1))


def time_domain(domain: Domain, count: int = 100, encoder=None, approx=None, seed: int = 0,
                k_max: int = 30) -> Table:
    """
    Time domain operations over a fixed workload

    Parameters
    ----------
    domain: `Domain`
        domain to time
    count: `int`
        instances in the workload. Default is 100
    encoder, approx: optional
        when both are given, encoding and forward passes are timed too
    seed: `int`
        workload seed
    k_max: `int`
        walk lengths of the generated instances are drawn from 0..k_max

    Returns
    -------
    table: `astropy.table.Table`
        columns op, status ("ok" or "absent"), calls, total_secs, per_call_us
    """
    rng = np.random.default_rng(seed)
    rows = []

    insts = []
    rows.append(("samp_prob_insts", *_timed(
        lambda: insts.extend(domain.samp_prob_insts(sample_ks(k_max, count, rng), rng)), count)))
    states = [inst.start for inst in insts]
    goals = [inst.goal for inst in insts]
    pairs = []

    def sample_acts():
        for s in states:
            try:
                pairs.append((s, domain.samp_state_act(s, rng)))
            except DeadEndError:
                pass

    rows.append(("samp_state_act", *_timed(sample_acts, len(states))))
    live = [s for s, _ in pairs]
    acts = [a for _, a in pairs]
    rows.append(("next_state", *_timed(
        lambda: [domain.next_state(s, a) for s, a in pairs], len(pairs))))
    rows.append(("is_solved", *_timed(
        lambda: [domain.is_solved(s, g) for s, g in zip(states, goals)], len(states))))

    def has(cap):
        return isinstance(domain, CAPABILITIES[cap])

    optional = [
        ("expand", "ActsEnum", lambda: [domain.expand(s) for s in states]),
        ("samp_goal_from_state", "GoalSampleableFromState",
         lambda: [domain.samp_goal_from_state(s, rng) for s in states]),
        ("reverse_step", "ReverseWalkable", lambda: [domain.reverse_step(s, rng) for s in states]),
        ("parse_action", "StringToAct", lambda: [domain.parse_action(domain.action_to_str(a)) for a in acts]),
        ("render_state", "Renderable", lambda: [domain.render_state(s) for s in states]),
        ("next_states_batch", "BatchedTransition", lambda: domain.next_states_batch(live, acts)),
    ]
    for op, cap, fn in optional:
        rows.append((op, *_timed(fn, len(states))) if has(cap) else (op, "absent", 0, 0.0, 0.0))
    if hasattr(domain, "default_encoder"):
        rows.append(("encode_state_goal", *_timed(
            lambda: [encode_state_goal(domain, s, g) for s, g in zip(states, goals)], len(states))))
    else:
        rows.append(("encode_state_goal", "absent", 0, 0.0, 0.0))

    if encoder is not None and approx is not None:
        inputs = []
        rows.append(("encode", *_timed(lambda: inputs.append(encoder.encode(states, goals)), len(states))))
        rows.append(("forward_batch", *_timed(lambda: approx.forward_batch(inputs[0]), len(states))))

    table = Table(rows=rows, names=TIMING_COLUMNS)
    table["total_secs"].format = ".6f"
    table["per_call_us"].format = ".3f"
    return table
