"""Network construction: layered feed-forward nets and the reservoir net.

Both builders return an immutable NetworkTopology; per-epoch weight
reassignment produces a fresh snapshot with only the plastic inter-layer
weights replaced.  The reservoir ("liquid") wiring, its weights, its
inhibitory marks and the direct input-to-output synapses never change after
construction.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .lif import DEFAULT_LIF, LifParams
from .weightinit import InitMethod, WeightRange, draw_weights

__all__ = [
    "SynapseSpec",
    "NetworkTopology",
    "build_layered",
    "build_lsm",
    "reassign_interlayer_weights",
    "dump_topology_csv",
]

# layer_tag values
TAG_INTERLAYER = "interlayer"
TAG_IN_LIQUID = "input_to_liquid"
TAG_LIQUID = "liquid_to_liquid"
TAG_LIQUID_OUT = "liquid_to_readout"
TAG_DIRECT = "input_output_direct"

REASSIGNED_TAGS = (TAG_INTERLAYER, TAG_IN_LIQUID, TAG_LIQUID_OUT)

DEFAULT_DELAY_MS = 1.0
DEFAULT_K_REC = 2
# The direct input-to-output drive delivers this multiple of the threshold
# gap as total charge.  Kept below the instantaneous-crossing regime so the
# reservoir's contribution to output timing stays observable.
DEFAULT_W_DIRECT_FACTOR = 1.3


@dataclass(frozen=True)
class SynapseSpec:
    """One directed connection.  sign is 'exc' or 'inh', kind 'static' or 'stdp'."""

    pre: int
    post: int
    weight: float
    sign: str = "exc"
    delay: float = DEFAULT_DELAY_MS
    kind: str = "static"
    layer_tag: str = TAG_INTERLAYER

    def __post_init__(self):
        if self.pre == self.post:
            raise ValueError(f"self-synapse at neuron {self.pre}")
        if self.weight < 0:
            raise ValueError("weight must be non-negative")
        if self.delay <= 0:
            raise ValueError("delay must be positive")
        if self.sign not in ("exc", "inh"):
            raise ValueError(f"unknown sign: {self.sign!r}")
        if self.kind not in ("static", "stdp"):
            raise ValueError(f"unknown kind: {self.kind!r}")


@dataclass(frozen=True)
class NetworkTopology:
    """Neurons, synapses and the designated populations.

    lif_params applies to every neuron; t_ref_overrides lists (neuron id,
    t_ref ms) exceptions, which is how the reservoir gets fast-spiking
    neurons while the readout keeps a long refractory period.
    """

    n_neurons: int
    lif_params: LifParams
    synapses: tuple[SynapseSpec, ...]
    input_ids: tuple[int, ...]
    output_ids: tuple[int, ...]
    recorded_ids: tuple[int, ...]
    liquid_ids: tuple[int, ...] = ()
    t_ref_overrides: tuple[tuple[int, float], ...] = ()

    def __post_init__(self):
        for i, t_ref in self.t_ref_overrides:
            if not (0 <= i < self.n_neurons):
                raise ValueError(f"t_ref override for unknown neuron {i}")
            if t_ref < 0:
                raise ValueError("t_ref must be non-negative")
        self._check_ids()

    def _check_ids(self):
        ids = set(self.input_ids) | set(self.output_ids) | set(self.recorded_ids)
        ids |= set(self.liquid_ids)
        for i in ids:
            if not (0 <= i < self.n_neurons):
                raise ValueError(f"neuron id {i} out of range")
        if set(self.input_ids) & set(self.output_ids):
            raise ValueError("input and output populations must be disjoint")
        for s in self.synapses:
            if not (0 <= s.pre < self.n_neurons and 0 <= s.post < self.n_neurons):
                raise ValueError(f"synapse ({s.pre}, {s.post}) out of range")
            if s.layer_tag == TAG_LIQUID and s.kind != "static":
                raise ValueError("liquid recurrent synapses must be static")

    def weights_by_tag(self, tag: str) -> np.ndarray:
        return np.array([s.weight for s in self.synapses if s.layer_tag == tag])

    def t_ref_per_neuron(self) -> np.ndarray:
        t_ref = np.full(self.n_neurons, self.lif_params.t_ref)
        for i, value in self.t_ref_overrides:
            t_ref[i] = value
        return t_ref


def build_layered(
    layer_sizes: Sequence[int],
    init: InitMethod,
    wrange: WeightRange,
    seed: int,
    lif_params: LifParams = DEFAULT_LIF,
    delay: float = DEFAULT_DELAY_MS,
) -> NetworkTopology:
    """Fully connected consecutive layers, all inter-layer synapses plastic.

    The first layer receives the stimulus, the last is the readout; both are
    recorded.
    """
    sizes = [int(s) for s in layer_sizes]
    if len(sizes) < 2 or any(s < 1 for s in sizes):
        raise ValueError(f"need >= 2 layers of size >= 1, got {sizes}")
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    n = int(offsets[-1])
    pairs: list[tuple[int, int]] = []
    for layer in range(len(sizes) - 1):
        pres = range(offsets[layer], offsets[layer + 1])
        posts = range(offsets[layer + 1], offsets[layer + 2])
        for p in pres:
            for q in posts:
                pairs.append((p, q))
    weights = draw_weights(init, len(pairs), wrange, seed)
    synapses = tuple(
        SynapseSpec(p, q, float(w), "exc", delay, "stdp", TAG_INTERLAYER)
        for (p, q), w in zip(pairs, weights)
    )
    inputs = tuple(range(sizes[0]))
    outputs = tuple(range(offsets[-2], offsets[-1]))
    return NetworkTopology(
        n_neurons=n,
        lif_params=lif_params,
        synapses=synapses,
        input_ids=inputs,
        output_ids=outputs,
        recorded_ids=inputs + outputs,
    )


def build_lsm(
    n_in: int = 2,
    n_liquid: int = 8,
    n_out: int = 2,
    init: InitMethod | None = None,
    wrange: WeightRange = WeightRange(1.0, 50.0),
    liquid_seed: int = 0,
    epoch_seed: int = 0,
    lif_params: LifParams = DEFAULT_LIF,
    k_rec: int = DEFAULT_K_REC,
    n_inh: int | None = None,
    w_direct_factor: float = DEFAULT_W_DIRECT_FACTOR,
    delay: float = DEFAULT_DELAY_MS,
    liquid_t_ref: float | None = None,
) -> NetworkTopology:
    """Input layer, fixed recurrent liquid, readout layer, plus direct wires.

    The liquid is built once from liquid_seed: every liquid neuron sends
    k_rec static connections to distinct other liquid neurons with weights
    uniform in the range, and n_inh of those connections (default: 20% of
    them, at least one) are inhibitory.  Input-to-liquid and
    liquid-to-readout are fully connected plastic synapses whose weights come
    from the init method under epoch_seed.  Each input neuron i drives output
    neuron i through a static synapse of weight
    w_direct_factor * (u_th - u_rest) / kappa.

    liquid_t_ref, when given, makes the reservoir fast-spiking: liquid
    neurons get that refractory period instead of the shared one.
    """
    from .weightinit import UniformRandom, _uniform_from_rng

    if min(n_in, n_liquid, n_out) < 1:
        raise ValueError("all populations need at least one neuron")
    if not (1 <= k_rec < n_liquid):
        raise ValueError(f"need 1 <= k_rec < n_liquid, got k_rec={k_rec}")
    if init is None:
        init = UniformRandom()
    n_rec = n_liquid * k_rec
    if n_inh is None:
        n_inh = max(1, math.floor(0.2 * n_rec))
    if not (0 <= n_inh <= n_rec):
        raise ValueError(
            f"n_inh={n_inh} exceeds the {n_rec} liquid recurrent synapses"
        )

    inputs = tuple(range(n_in))
    liquid = tuple(range(n_in, n_in + n_liquid))
    outputs = tuple(range(n_in + n_liquid, n_in + n_liquid + n_out))
    n = n_in + n_liquid + n_out

    rng = np.random.default_rng(liquid_seed)
    rec_pairs: list[tuple[int, int]] = []
    for src in liquid:
        others = np.array([v for v in liquid if v != src])
        targets = rng.choice(others, size=k_rec, replace=False)
        rec_pairs.extend((src, int(t)) for t in targets)
    rec_weights = _uniform_from_rng(len(rec_pairs), wrange, rng)
    inh_idx = set(
        int(i) for i in rng.choice(len(rec_pairs), size=n_inh, replace=False)
    )
    synapses: list[SynapseSpec] = [
        SynapseSpec(
            p,
            q,
            float(w),
            "inh" if i in inh_idx else "exc",
            delay,
            "static",
            TAG_LIQUID,
        )
        for i, ((p, q), w) in enumerate(zip(rec_pairs, rec_weights))
    ]

    plastic_pairs = [(p, q) for p in inputs for q in liquid]
    plastic_pairs += [(p, q) for p in liquid for q in outputs]
    tags = [TAG_IN_LIQUID] * (n_in * n_liquid) + [TAG_LIQUID_OUT] * (
        n_liquid * n_out
    )
    plastic_weights = draw_weights(init, len(plastic_pairs), wrange, epoch_seed)
    synapses += [
        SynapseSpec(p, q, float(w), "exc", delay, "stdp", tag)
        for (p, q), w, tag in zip(plastic_pairs, plastic_weights, tags)
    ]

    w_direct = (
        w_direct_factor
        * (lif_params.u_th - lif_params.u_rest)
        / lif_params.weight_scale_kappa
    )
    for i in range(min(n_in, n_out)):
        synapses.append(
            SynapseSpec(
                inputs[i], outputs[i], w_direct, "exc", delay, "static", TAG_DIRECT
            )
        )

    overrides = ()
    if liquid_t_ref is not None:
        overrides = tuple((i, liquid_t_ref) for i in liquid)
    return NetworkTopology(
        n_neurons=n,
        lif_params=lif_params,
        synapses=tuple(synapses),
        input_ids=inputs,
        output_ids=outputs,
        recorded_ids=inputs + outputs,
        liquid_ids=liquid,
        t_ref_overrides=overrides,
    )


def reassign_interlayer_weights(
    topology: NetworkTopology,
    init: InitMethod,
    wrange: WeightRange,
    epoch_seed: int,
) -> NetworkTopology:
    """Fresh weights for the plastic inter-layer synapses only.

    Liquid recurrence and direct input-output synapses keep their wiring,
    sign and weight.  The replacement weights come from one draw_weights call
    covering the reassigned synapses in construction order.
    """
    idx = [
        i for i, s in enumerate(topology.synapses) if s.layer_tag in REASSIGNED_TAGS
    ]
    weights = draw_weights(init, len(idx), wrange, epoch_seed)
    new_syn = list(topology.synapses)
    for i, w in zip(idx, weights):
        new_syn[i] = replace(new_syn[i], weight=float(w))
    return replace(topology, synapses=tuple(new_syn))


def dump_topology_csv(topology: NetworkTopology, path) -> None:
    """Debug dump: pre,post,weight,sign,kind,delay,layer_tag per synapse."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["pre", "post", "weight", "sign", "kind", "delay", "layer_tag"])
        for s in topology.synapses:
            writer.writerow(
                [s.pre, s.post, f"{s.weight:.6g}", s.sign, s.kind, f"{s.delay:.6g}", s.layer_tag]
            )
