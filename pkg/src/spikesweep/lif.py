"""Leaky integrate-and-fire point neuron.

The membrane potential u relaxes toward the resting potential with time
constant tau_m and integrates injected current scaled by the membrane
capacitance:

    du/dt = (u_rest - u) / tau_m + I / c_m

``lif_step`` advances one forward-Euler step of width dt and applies an
optional instantaneous synaptic jump.  Threshold crossings reset u and start
an absolute refractory period during which the potential is clamped to the
reset value and incoming drive is ignored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["LifParams", "NeuronState", "lif_step", "DEFAULT_LIF"]


@dataclass(frozen=True)
class LifParams:
    """Membrane constants (mV / ms / pF units).

    weight_scale_kappa converts a dimensionless synaptic weight into the
    membrane displacement one presynaptic spike delivers (mV per unit).
    """

    u_rest: float = -70.0
    u_th: float = -55.0
    u_reset: float = -70.0
    tau_m: float = 10.0
    c_m: float = 250.0
    t_ref: float = 2.0
    weight_scale_kappa: float = 0.05

    def __post_init__(self):
        if not self.tau_m > 0:
            raise ValueError("tau_m must be positive")
        if not self.c_m > 0:
            raise ValueError("c_m must be positive")
        if self.t_ref < 0:
            raise ValueError("t_ref must be non-negative")
        if not (self.u_reset <= self.u_rest < self.u_th):
            raise ValueError("need u_reset <= u_rest < u_th")
        if not self.weight_scale_kappa > 0:
            raise ValueError("weight_scale_kappa must be positive")


DEFAULT_LIF = LifParams()


@dataclass(frozen=True)
class NeuronState:
    """Dynamic per-neuron state: potential and end of refractoriness (ms)."""

    u: float
    refractory_until: float = -math.inf


def lif_step(
    state: NeuronState,
    params: LifParams,
    input_current: float,
    synaptic_jump: float,
    dt: float,
    now: float,
) -> tuple[NeuronState, bool]:
    """Advance one Euler step from time ``now`` to ``now + dt``.

    While refractory (now < refractory_until) the potential is held at
    u_reset and both the current and the jump are discarded.  A crossing
    (u' >= u_th) resets the potential and extends refractoriness to
    now + t_ref.

    Returns the new state and whether the neuron spiked this step.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    for name, v in (
        ("u", state.u),
        ("input_current", input_current),
        ("synaptic_jump", synaptic_jump),
        ("now", now),
    ):
        if not math.isfinite(v):
            raise ValueError(f"non-finite {name}: {v!r}")

    if now < state.refractory_until:
        return NeuronState(params.u_reset, state.refractory_until), False

    u = (
        state.u
        + dt * ((params.u_rest - state.u) / params.tau_m + input_current / params.c_m)
        + synaptic_jump
    )
    if u >= params.u_th:
        return NeuronState(params.u_reset, now + params.t_ref), True
    return NeuronState(u, state.refractory_until), False
