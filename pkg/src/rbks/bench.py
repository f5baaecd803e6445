"""Benchmark driver: per-phase wall times and group-operation counts.

Each phase gets a purpose-built rig with |Gamma| policy roles spread
over |Gamma_Phi| organizations (one role per organization here, so the
two sizes coincide) or |S| presented roles for trapdoor generation.
Counts come from the context's operation counters; the reported
`mean_ms` is the median of `trials` individually-timed repetitions,
which keeps scheduler and GC spikes out of the curve.
"""

from __future__ import annotations

import csv
import gc
import random
import statistics
import time
from typing import Dict, List, Optional, Sequence

from . import client, harness, owner
from .hierarchy import RoleId

PHASES = ("encrypt", "trapgen", "authenticate", "keysearch", "partialdec", "fulldec")

_FIELDS = ["phase", "gamma", "gamma_phi", "s", "g1_exp", "gt_exp", "pairing", "hash", "mean_ms"]


def _flat_world(n_orgs: int, children: int, seed: int, level: int) -> harness.World:
    lines = ["root: r0"] + [f"r0 -> r{i}" for i in range(1, children + 1)]
    orgs = {f"org{k}": "\n".join(lines) for k in range(n_orgs)}
    return harness.World(level, orgs, random.Random(seed))


def bench_phase(
    phase: str,
    gamma: int = 4,
    s: int = 4,
    trials: int = 10,
    security_level: int = 160,
    seed: int = 0,
) -> Dict[str, float]:
    """Run one phase `trials` times; returns a row of counts and mean ms."""
    if phase not in PHASES:
        raise ValueError(f"unknown phase {phase!r}; pick one of {PHASES}")
    keywords = ["alpha", "beta"]
    if phase == "trapgen":
        world = _flat_world(1, s, seed, security_level)
        roles = [RoleId("org0", f"r{i}") for i in range(1, s + 1)]
        world.enrol_user("u", roles)
        state = world.users["u"]
        keys = [state.role_keys[r] for r in roles]

        def op(i):
            return client.trap_gen(world.ctx, state.keys["org0"], keys, keywords, world.tick(), world.rng)

        row_gamma, row_s = 0, s
    else:
        world = _flat_world(gamma, 1, seed, security_level)
        roles = [RoleId(f"org{k}", "r1") for k in range(gamma)]
        world.enrol_user("u", roles)
        state = world.users["u"]
        policy = owner.AccessPolicy(frozenset(roles), "org0")

        def do_encrypt(i):
            return owner.encrypt(
                world.pp, world.board.cloud_pubs, world.board.role_pks,
                b"payload", keywords, policy, world.rng,
            )

        if phase == "encrypt":
            op = do_encrypt
        else:
            ct = do_encrypt(0)
            keys = [state.role_keys[r] for r in roles]
            trapdoor, session = client.trap_gen(
                world.ctx, state.keys["org0"], keys, keywords, world.tick(), world.rng
            )
            auth = world.server.authenticate(ct, trapdoor)
            match = world.server.key_search(ct, trapdoor, auth)
            partial = world.server.partial_dec(ct, trapdoor, match)
            if phase == "authenticate":
                op = lambda i: world.server.authenticate(ct, trapdoor)
            elif phase == "keysearch":
                op = lambda i: world.server.key_search(ct, trapdoor, auth)
            elif phase == "partialdec":
                op = lambda i: world.server.partial_dec(ct, trapdoor, match)
            else:  # fulldec
                op = lambda i: client.full_dec(world.ctx, session, state.keys["org0"], partial)
        row_gamma, row_s = gamma, (s if phase == "trapgen" else gamma)

    ctx = world.ctx
    op(0)  # warm-up, outside both the timer and the counters
    ctx.reset_counters()
    durations = []
    gc_was_on = gc.isenabled()
    gc.disable()
    try:
        for i in range(trials):
            t0 = time.perf_counter()
            op(i + 1)
            durations.append(time.perf_counter() - t0)
    finally:
        if gc_was_on:
            gc.enable()
    counts = ctx.snapshot_counters()
    return {
        "phase": phase,
        "gamma": row_gamma,
        "gamma_phi": row_gamma,
        "s": row_s,
        "g1_exp": counts["g1_exp"] / trials,
        "gt_exp": counts["gt_exp"] / trials,
        "pairing": counts["pairing"] / trials,
        "hash": counts["hash"] / trials,
        # median of per-trial times: robust against scheduler/GC spikes
        "mean_ms": statistics.median(durations) * 1000.0,
    }


def sweep(
    phase: str,
    sizes: Sequence[int],
    trials: int = 10,
    security_level: int = 160,
    seed: int = 0,
) -> List[Dict[str, float]]:
    key = "s" if phase == "trapgen" else "gamma"
    return [
        bench_phase(phase, trials=trials, security_level=security_level, seed=seed, **{key: n})
        for n in sizes
    ]


def write_csv(rows: Sequence[Dict[str, float]], path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=_FIELDS)
        writer.writeheader()
        writer.writerows(rows)


def fit_affine(xs: Sequence[float], ys: Sequence[float]):
    """Least-squares fit y = a*x + b; returns (a, b, r_squared)."""
    import numpy as np

    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    a, b = np.polyfit(x, y, 1)
    resid = y - (a * x + b)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 if ss_tot == 0 else 1.0 - float((resid**2).sum()) / ss_tot
    return float(a), float(b), r2
