"""Clock-driven network simulation.

The engine advances every neuron on a fixed dt grid.  A spike detected while
integrating the step that starts at ``now`` is stamped ``now + dt`` (step
boundaries are the only observable times) and schedules one event per
outgoing synapse.  The event acts on the target one delay later, in the step
that *starts* at the arrival time, so a spike stamped t through a synapse
with delay d can fire the target at exactly t + d + dt.

Synapse effect models (chosen per run):

* ``delta`` -- an arriving event moves the target membrane instantly by
  kappa * w * sign millivolts.
* ``exp``   -- the same total displacement is delivered as an exponentially
  decaying current with time constant tau_syn, so strong volleys keep
  driving the target after its refractory period ends and can trigger
  repeated firing.  This is the model the weight-sweep experiments use.

Events arriving while the target is refractory are discarded in both models.
Plasticity updates use event-exact exponential traces: the pre-side event of
a synapse is its arrival (emission + delay), the post-side event is the
postsynaptic spike stamp.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .lif import LifParams
from .plasticity import StdpParams
from .seeding import mix64
from .stimulus import StimulusSpec, generate_stimulus
from .topology import NetworkTopology
from .trains import SpikeTrain

__all__ = ["SimResult", "simulate"]

SYNAPSE_MODELS = ("delta", "exp")


@dataclass(frozen=True)
class SimResult:
    """Recorded trains over [0, duration) plus the post-run synapse weights."""

    recorded: dict[int, SpikeTrain]
    duration: float
    final_weights: np.ndarray


@njit(cache=True)
def _run_core(
    n_neurons,
    n_steps,
    dt,
    duration,
    u_rest,
    u_th,
    u_reset,
    tau_m,
    c_m,
    t_ref_by_neuron,
    kappa,
    syn_post,
    syn_weight,
    syn_sign,
    syn_delay_steps,
    syn_plastic,
    out_start,
    out_syn,
    in_start,
    in_syn,
    stim_step,
    stim_neuron,
    stim_jump,
    model_exp,
    tau_syn,
    plasticity_on,
    a_plus,
    a_minus,
    tau_plus,
    tau_minus,
    w_floor,
    w_ceil,
    spk_neuron,
    spk_time,
):
    n_syn = syn_post.shape[0]
    max_delay = 0
    for s in range(n_syn):
        if syn_delay_steps[s] > max_delay:
            max_delay = syn_delay_steps[s]
    ring_len = max_delay + 2
    ring_syn = np.empty((ring_len, max(n_syn, 1)), dtype=np.int64)
    ring_cnt = np.zeros(ring_len, dtype=np.int64)

    u = np.full(n_neurons, u_rest)
    i_syn = np.zeros(n_neurons)
    refr_until = np.full(n_neurons, -1.0e300)
    jump = np.zeros(n_neurons)
    spikers = np.empty(n_neurons, dtype=np.int64)

    x_pre = np.zeros(n_syn)
    x_post = np.zeros(n_syn)
    t_xpre = np.zeros(n_syn)
    t_xpost = np.zeros(n_syn)

    decay_syn = np.exp(-dt / tau_syn)
    current_gain = c_m / tau_syn
    sp = 0
    n_stim = stim_step.shape[0]
    n_spikes = 0

    for k in range(n_steps):
        now = k * dt
        row = k % ring_len

        # deliver synaptic events whose arrival time is this step's start
        cnt = ring_cnt[row]
        for e in range(cnt):
            s = ring_syn[row, e]
            if plasticity_on and syn_plastic[s] == 1:
                xp = x_post[s] * np.exp(-(now - t_xpost[s]) / tau_minus)
                w = syn_weight[s] - a_minus * xp
                if w < w_floor:
                    w = w_floor
                elif w > w_ceil:
                    w = w_ceil
                syn_weight[s] = w
                x_pre[s] = x_pre[s] * np.exp(-(now - t_xpre[s]) / tau_plus) + 1.0
                t_xpre[s] = now
            tgt = syn_post[s]
            if now >= refr_until[tgt]:
                amt = kappa * syn_weight[s] * syn_sign[s]
                if model_exp:
                    i_syn[tgt] += amt * current_gain
                else:
                    jump[tgt] += amt
        ring_cnt[row] = 0

        # stimulus events land as direct membrane jumps
        while sp < n_stim and stim_step[sp] == k:
            tgt = stim_neuron[sp]
            if now >= refr_until[tgt]:
                jump[tgt] += stim_jump
            sp += 1

        # integrate and detect crossings
        n_spk = 0
        for i in range(n_neurons):
            if now < refr_until[i]:
                u[i] = u_reset
            else:
                ui = (
                    u[i]
                    + dt * ((u_rest - u[i]) / tau_m + i_syn[i] / c_m)
                    + jump[i]
                )
                if ui >= u_th:
                    spikers[n_spk] = i
                    n_spk += 1
                else:
                    u[i] = ui
            jump[i] = 0.0
        if model_exp:
            for i in range(n_neurons):
                i_syn[i] *= decay_syn

        t_sp = (k + 1) * dt
        for e in range(n_spk):
            i = spikers[e]
            u[i] = u_reset
            refr_until[i] = now + t_ref_by_neuron[i]
            if t_sp < duration:
                spk_neuron[n_spikes] = i
                spk_time[n_spikes] = t_sp
                n_spikes += 1
            if plasticity_on:
                for a in range(in_start[i], in_start[i + 1]):
                    s = in_syn[a]
                    if syn_plastic[s] == 1:
                        xp = x_pre[s] * np.exp(-(t_sp - t_xpre[s]) / tau_plus)
                        w = syn_weight[s] + a_plus * xp
                        if w < w_floor:
                            w = w_floor
                        elif w > w_ceil:
                            w = w_ceil
                        syn_weight[s] = w
                        x_post[s] = (
                            x_post[s] * np.exp(-(t_sp - t_xpost[s]) / tau_minus)
                            + 1.0
                        )
                        t_xpost[s] = t_sp
            for a in range(out_start[i], out_start[i + 1]):
                s = out_syn[a]
                dstep = k + 1 + syn_delay_steps[s]
                if dstep < n_steps:
                    r2 = dstep % ring_len
                    ring_syn[r2, ring_cnt[r2]] = s
                    ring_cnt[r2] += 1
    return n_spikes


def _csr_by(keys: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    order = np.argsort(keys, kind="stable")
    start = np.zeros(n + 1, dtype=np.int64)
    np.add.at(start, keys + 1, 1)
    return np.cumsum(start), order.astype(np.int64)


def simulate(
    topology: NetworkTopology,
    stimulus: StimulusSpec,
    duration: float,
    dt: float = 0.1,
    seed: int = 0,
    plasticity_on: bool = False,
    stdp: StdpParams = StdpParams(),
    synapse_model: str = "delta",
    tau_syn: float = 2.5,
) -> SimResult:
    """Run one network for ``duration`` ms and return the recorded trains.

    Equal arguments (including seed) give bit-identical results.  Regular
    stimuli drive every input neuron with the same event times; poisson
    stimuli give each input neuron its own stream derived from
    (stimulus.seed, seed, neuron id).
    """
    if not duration > 0:
        raise ValueError("duration must be positive")
    if not dt > 0:
        raise ValueError("dt must be positive")
    if synapse_model not in SYNAPSE_MODELS:
        raise ValueError(f"unknown synapse model: {synapse_model!r}")
    if synapse_model == "exp" and not tau_syn > 0:
        raise ValueError("tau_syn must be positive")
    params = topology.lif_params
    n = topology.n_neurons
    n_steps = int(round(duration / dt))

    syns = topology.synapses
    n_syn = len(syns)
    syn_pre = np.array([s.pre for s in syns], dtype=np.int64)
    syn_post = np.array([s.post for s in syns], dtype=np.int64)
    syn_weight = np.array([s.weight for s in syns], dtype=np.float64)
    syn_sign = np.array(
        [1.0 if s.sign == "exc" else -1.0 for s in syns], dtype=np.float64
    )
    syn_plastic = np.array(
        [1 if s.kind == "stdp" else 0 for s in syns], dtype=np.uint8
    )
    delay_steps = np.empty(n_syn, dtype=np.int64)
    for i, s in enumerate(syns):
        steps = s.delay / dt
        if abs(steps - round(steps)) > 1e-9:
            raise ValueError(
                f"synapse ({s.pre}, {s.post}) delay {s.delay} ms is not a "
                f"multiple of dt={dt} ms"
            )
        delay_steps[i] = int(round(steps))

    touched = set(syn_pre.tolist()) | set(syn_post.tolist())
    for r in topology.recorded_ids:
        if r not in touched and r not in topology.input_ids:
            raise ValueError(f"recorded neuron {r} is unconnected and undriven")

    if n_syn:
        out_start, out_syn = _csr_by(syn_pre, n)
        in_start, in_syn = _csr_by(syn_post, n)
    else:
        out_start = np.zeros(n + 1, dtype=np.int64)
        out_syn = np.empty(0, dtype=np.int64)
        in_start = np.zeros(n + 1, dtype=np.int64)
        in_syn = np.empty(0, dtype=np.int64)

    # stimulus event (step, neuron) pairs, sorted by step then neuron
    steps_list = []
    neuron_list = []
    if stimulus.kind == "regular":
        events = generate_stimulus(stimulus, duration, dt)
        ev_steps = np.round(events / dt).astype(np.int64)
        for i in topology.input_ids:
            steps_list.append(ev_steps)
            neuron_list.append(np.full(ev_steps.size, i, dtype=np.int64))
    else:
        for i in topology.input_ids:
            sub = StimulusSpec(
                kind="poisson",
                rate=stimulus.rate,
                seed=mix64(stimulus.seed, seed, i),
                amplitude=stimulus.amplitude,
            )
            events = generate_stimulus(sub, duration, dt)
            ev_steps = np.round(events / dt).astype(np.int64)
            steps_list.append(ev_steps)
            neuron_list.append(np.full(ev_steps.size, i, dtype=np.int64))
    if steps_list:
        stim_step = np.concatenate(steps_list)
        stim_neuron = np.concatenate(neuron_list)
        order = np.lexsort((stim_neuron, stim_step))
        stim_step = stim_step[order]
        stim_neuron = stim_neuron[order]
    else:
        stim_step = np.empty(0, dtype=np.int64)
        stim_neuron = np.empty(0, dtype=np.int64)
    stim_jump = stimulus.amplitude / params.c_m

    t_ref_vec = topology.t_ref_per_neuron()
    t_ref_steps = max(1, int(np.floor(float(t_ref_vec.min()) / dt + 1e-9)))
    cap = n * (n_steps // t_ref_steps + 2)
    spk_neuron = np.empty(cap, dtype=np.int64)
    spk_time = np.empty(cap, dtype=np.float64)

    weights = syn_weight.copy()
    n_spikes = _run_core(
        n,
        n_steps,
        float(dt),
        float(duration),
        params.u_rest,
        params.u_th,
        params.u_reset,
        params.tau_m,
        params.c_m,
        t_ref_vec,
        params.weight_scale_kappa,
        syn_post,
        weights,
        syn_sign,
        delay_steps,
        syn_plastic,
        out_start,
        out_syn,
        in_start,
        in_syn,
        stim_step,
        stim_neuron,
        float(stim_jump),
        synapse_model == "exp",
        float(tau_syn),
        bool(plasticity_on),
        stdp.a_plus,
        stdp.a_minus,
        stdp.tau_plus,
        stdp.tau_minus,
        stdp.w_floor,
        stdp.w_ceiling,
        spk_neuron,
        spk_time,
    )

    recorded: dict[int, SpikeTrain] = {}
    spk_neuron = spk_neuron[:n_spikes]
    spk_time = spk_time[:n_spikes]
    for i in topology.recorded_ids:
        times = spk_time[spk_neuron == i]
        recorded[i] = SpikeTrain(times, t_start=0.0, t_stop=float(duration))
    return SimResult(
        recorded=recorded, duration=float(duration), final_weights=weights
    )
