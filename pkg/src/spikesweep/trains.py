"""Spike trains and the plain-text train format.

A spike train is an ordered set of spike times (milliseconds) together with
the observation window [t_start, t_stop) they were recorded in.  Trains are
the common currency between the simulation engine and the distance metrics.

Text format (shared by the CLI and the engine's dump routines)::

    # any number of comment lines
    !window 0 1000
    12.5
    40.1

One decimal spike time per line, strictly increasing.  The optional
``!window`` line must be the first non-comment line; when absent the window
defaults to [0, last spike + 1 ms).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = ["SpikeTrain", "merge_trains", "read_train", "write_train"]


@dataclass(frozen=True)
class SpikeTrain:
    """Strictly increasing spike times (ms) inside [t_start, t_stop)."""

    times: np.ndarray
    t_start: float = 0.0
    t_stop: float | None = None

    def __post_init__(self):
        times = np.asarray(self.times, dtype=np.float64).ravel()
        object.__setattr__(self, "times", times)
        t_stop = self.t_stop
        if t_stop is None:
            t_stop = float(times[-1]) + 1.0 if times.size else self.t_start + 1.0
        object.__setattr__(self, "t_start", float(self.t_start))
        object.__setattr__(self, "t_stop", float(t_stop))
        if not np.all(np.isfinite(times)):
            raise ValueError("spike times must be finite")
        if times.size and not np.all(np.diff(times) > 0):
            raise ValueError("spike times must be strictly increasing")
        if not self.t_start < self.t_stop:
            raise ValueError(f"empty window [{self.t_start}, {self.t_stop})")
        if times.size and (times[0] < self.t_start or times[-1] >= self.t_stop):
            raise ValueError(
                f"spikes outside window [{self.t_start}, {self.t_stop})"
            )

    def __len__(self) -> int:
        return int(self.times.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpikeTrain):
            return NotImplemented
        return (
            self.t_start == other.t_start
            and self.t_stop == other.t_stop
            and np.array_equal(self.times, other.times)
        )

    def __hash__(self):
        return hash((self.t_start, self.t_stop, self.times.tobytes()))

    @property
    def duration(self) -> float:
        return self.t_stop - self.t_start


def merge_trains(trains: Sequence[SpikeTrain]) -> SpikeTrain:
    """Pool several trains into one, over the union of their windows.

    Exactly coincident spikes (bit-equal times, which is what simultaneous
    grid-aligned spikes produce) collapse to a single event so the result
    stays strictly increasing.
    """
    if not trains:
        raise ValueError("need at least one train to merge")
    times = np.unique(np.concatenate([t.times for t in trains]))
    return SpikeTrain(
        times,
        t_start=min(t.t_start for t in trains),
        t_stop=max(t.t_stop for t in trains),
    )


def read_train(path) -> SpikeTrain:
    """Parse a spike train from the text format; errors carry line numbers."""
    times: list[float] = []
    window: tuple[float, float] | None = None
    seen_value = False
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("!window"):
                if seen_value or window is not None:
                    raise ValueError(
                        f"{path}:{lineno}: !window must be the first "
                        "non-comment line"
                    )
                parts = line.split()
                if len(parts) != 3:
                    raise ValueError(
                        f"{path}:{lineno}: expected '!window <t_start> <t_stop>'"
                    )
                try:
                    window = (float(parts[1]), float(parts[2]))
                except ValueError as exc:
                    raise ValueError(f"{path}:{lineno}: {exc}") from None
                continue
            try:
                value = float(line)
            except ValueError:
                raise ValueError(
                    f"{path}:{lineno}: not a spike time: {line!r}"
                ) from None
            if not math.isfinite(value):
                raise ValueError(f"{path}:{lineno}: non-finite spike time")
            if times and value <= times[-1]:
                raise ValueError(
                    f"{path}:{lineno}: spike times must be strictly increasing"
                )
            times.append(value)
            seen_value = True
    if window is None:
        window = (0.0, times[-1] + 1.0 if times else 1.0)
    try:
        return SpikeTrain(np.array(times), t_start=window[0], t_stop=window[1])
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from None


def write_train(train: SpikeTrain, path) -> None:
    """Write a train in the text format (always with an explicit window)."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"!window {train.t_start!r} {train.t_stop!r}\n")
        for t in train.times:
            fh.write(f"{float(t)!r}\n")
