"""Spike generators that drive the input population.

A generator event deposits a fixed charge on the target membrane, so the
jump it causes is amplitude / c_m millivolts regardless of dt.  Events are
snapped to the simulation grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["StimulusSpec", "generate_stimulus"]


@dataclass(frozen=True)
class StimulusSpec:
    """Event source description.

    kind      -- 'regular' (events at exact multiples of the period) or
                 'poisson' (exponential inter-event gaps).
    rate      -- events per second.
    seed      -- stream seed, used by the poisson kind only.
    amplitude -- charge per event in pA*ms; the membrane jump is
                 amplitude / c_m mV.
    """

    kind: str = "regular"
    rate: float = 25.0
    seed: int = 0
    amplitude: float = 5000.0

    def __post_init__(self):
        if self.kind not in ("regular", "poisson"):
            raise ValueError(f"unknown stimulus kind: {self.kind!r}")
        if not self.rate > 0:
            raise ValueError("rate must be positive")
        if not self.amplitude > 0:
            raise ValueError("amplitude must be positive")


def generate_stimulus(spec: StimulusSpec, duration: float, dt: float) -> np.ndarray:
    """Event times (ms) in [0, duration), snapped to the dt grid.

    Regular generators emit at multiples of 1000/rate.  Poisson generators
    draw exponential gaps from a stream seeded by spec.seed, so equal seeds
    give identical sequences.  Grid snapping drops duplicate events; a rate
    above one expected event per grid step is rejected outright.
    """
    if not duration > 0:
        raise ValueError("duration must be positive")
    if not dt > 0:
        raise ValueError("dt must be positive")
    period = 1000.0 / spec.rate
    if period < dt:
        raise ValueError(
            f"rate {spec.rate} Hz exceeds the grid resolution (period "
            f"{period:.6g} ms < dt {dt:.6g} ms)"
        )
    if spec.kind == "regular":
        times = np.arange(0.0, duration, period)
    else:
        rng = np.random.default_rng(spec.seed)
        # Draw in blocks until the cumulative time passes the duration.
        gaps = []
        total = 0.0
        block = max(16, int(duration / period * 1.5) + 1)
        while total < duration:
            chunk = rng.exponential(period, size=block)
            gaps.append(chunk)
            total += float(chunk.sum())
        times = np.cumsum(np.concatenate(gaps))
        times = times[times < duration]
    steps = np.unique(np.round(times / dt).astype(np.int64))
    snapped = steps * dt
    return snapped[snapped < duration]
