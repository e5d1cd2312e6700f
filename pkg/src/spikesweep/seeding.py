"""Deterministic 64-bit seed derivation.

Sweep cells, per-epoch weight draws and per-neuron stimulus streams all need
independent yet reproducible random streams.  ``mix64`` folds an arbitrary
tuple of ints / floats / strings into one uint64 using the splitmix64
finalizer, so derived seeds are stable across platforms and runs.
"""

from __future__ import annotations

import struct

__all__ = ["mix64"]

_MASK = (1 << 64) - 1


def _splitmix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def _to_u64(part) -> int:
    if isinstance(part, bool):
        return int(part)
    if isinstance(part, int):
        return part & _MASK
    if isinstance(part, float):
        return struct.unpack("<Q", struct.pack("<d", part))[0]
    if isinstance(part, str):
        h = 1469598103934665603  # FNV-1a 64
        for b in part.encode("utf-8"):
            h = ((h ^ b) * 1099511628211) & _MASK
        return h
    raise TypeError(f"cannot mix value of type {type(part).__name__}")


def mix64(*parts) -> int:
    """Hash a tuple of ints, floats and strings into a uint64 seed."""
    h = 0
    for part in parts:
        h = _splitmix64(h ^ _to_u64(part))
    return h
