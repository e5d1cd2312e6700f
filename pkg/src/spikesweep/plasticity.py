"""Spike-timing-dependent plasticity.

The pairing window is the standard exponential one: a post spike arriving a
time x after a pre spike strengthens the synapse by a_plus * exp(-x/tau_plus),
the reverse order weakens it by a_minus * exp(-|x|/tau_minus), and exact
coincidence contributes nothing.  ``pair_delta`` evaluates the all-to-all
double sum over every pre/post pair; ``apply_online_stdp`` realises the same
interaction incrementally through exponentially decaying pre/post traces,
which is the form the simulation engine uses.  With clipping disabled the two
agree to floating-point rounding on any event set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = ["StdpParams", "stdp_window", "pair_delta", "apply_online_stdp"]


@dataclass(frozen=True)
class StdpParams:
    """Window amplitudes and time constants, plus hard weight bounds."""

    a_plus: float = 0.1
    a_minus: float = 0.1
    tau_plus: float = 10.0
    tau_minus: float = 10.0
    w_floor: float = 0.0
    w_ceiling: float = math.inf

    def __post_init__(self):
        if self.a_plus < 0 or self.a_minus < 0:
            raise ValueError("amplitudes must be non-negative")
        if not (self.tau_plus > 0 and self.tau_minus > 0):
            raise ValueError("time constants must be positive")
        if not self.w_floor < self.w_ceiling:
            raise ValueError("need w_floor < w_ceiling")


def stdp_window(x: float, params: StdpParams = StdpParams()) -> float:
    """Weight change for a single pair separated by x = t_post - t_pre (ms)."""
    if not math.isfinite(x):
        raise ValueError("pair separation must be finite")
    if x > 0:
        return params.a_plus * math.exp(-x / params.tau_plus)
    if x < 0:
        return -params.a_minus * math.exp(x / params.tau_minus)
    return 0.0


def _times(train) -> np.ndarray:
    times = getattr(train, "times", train)
    return np.asarray(times, dtype=np.float64)


def pair_delta(pre_times, post_times, params: StdpParams = StdpParams()) -> float:
    """All-to-all pair sum: sum of stdp_window over every (pre, post) pair.

    No clipping is applied; this is the raw pairing total.
    """
    pre = _times(pre_times)
    post = _times(post_times)
    if pre.size == 0 or post.size == 0:
        return 0.0
    total = 0.0
    for tp in pre:
        for tn in post:
            total += stdp_window(float(tn - tp), params)
    return total


def apply_online_stdp(
    initial_weight: float,
    events: Sequence[tuple[float, str]],
    params: StdpParams = StdpParams(),
) -> np.ndarray:
    """Run the trace-based update over time-ordered (time, 'pre'|'post') events.

    Traces x_pre and x_post decay with tau_plus / tau_minus.  A post event
    adds a_plus * x_pre to the weight, a pre event subtracts
    a_minus * x_post, after which the weight is clipped into
    [w_floor, w_ceiling] and the corresponding trace is incremented.
    Simultaneous pre/post events see each other's trace *before* the
    increment, so an exactly coincident pair contributes nothing, matching
    the window convention.

    Returns the weight after each event (empty events leave the weight
    untouched and return an empty array).
    """
    w = float(initial_weight)
    x_pre = 0.0
    x_post = 0.0
    t_last = None
    trajectory = np.empty(len(events), dtype=np.float64)

    i = 0
    n = len(events)
    while i < n:
        t = float(events[i][0])
        if t_last is not None:
            if t < t_last:
                raise ValueError("events must be time-ordered")
            x_pre *= math.exp(-(t - t_last) / params.tau_plus)
            x_post *= math.exp(-(t - t_last) / params.tau_minus)
        t_last = t
        # Group events sharing this timestamp: updates read the traces as
        # they stood before any same-time increment.
        j = i
        while j < n and float(events[j][0]) == t:
            j += 1
        n_pre = 0
        n_post = 0
        for k in range(i, j):
            kind = events[k][1]
            if kind == "pre":
                w -= params.a_minus * x_post
                n_pre += 1
            elif kind == "post":
                w += params.a_plus * x_pre
                n_post += 1
            else:
                raise ValueError(f"unknown event kind: {kind!r}")
            w = min(max(w, params.w_floor), params.w_ceiling)
            trajectory[k] = w
        x_pre += n_pre
        x_post += n_post
        i = j
    return trajectory
