"""spikesweep: spiking-network weight-range sweeps scored by spike-train distances.

The package simulates leaky integrate-and-fire networks (feed-forward layers
or a fixed recurrent reservoir with a readout), initialises synaptic weights
uniformly or from the degree structure of preferential-attachment /
independent-edge random graphs, and sweeps weight ranges to find the one
minimising the Victor-Purpura and van Rossum distances between the input and
output spike trains.
"""

from .engine import SimResult, simulate
from .lif import DEFAULT_LIF, LifParams, NeuronState, lif_step
from .metrics import distance_matrix, van_rossum, victor_purpura
from .plasticity import StdpParams, apply_online_stdp, pair_delta, stdp_window
from .stimulus import StimulusSpec, generate_stimulus
from .sweep import (
    SweepConfig,
    SweepRecord,
    SweepResult,
    emit_plot,
    run_sweep,
    summarize,
    write_csv,
    write_summary_csv,
)
from .topology import (
    NetworkTopology,
    SynapseSpec,
    build_layered,
    build_lsm,
    reassign_interlayer_weights,
)
from .trains import SpikeTrain, merge_trains, read_train, write_train
from .weightinit import (
    BarabasiAlbert,
    ErdosRenyi,
    Graph,
    UniformRandom,
    WeightRange,
    barabasi_albert,
    degrees_to_weights,
    draw_weights,
    erdos_renyi,
    uniform_weights,
)

__version__ = "0.1.0"

__all__ = [
    "BarabasiAlbert",
    "DEFAULT_LIF",
    "ErdosRenyi",
    "Graph",
    "LifParams",
    "NetworkTopology",
    "NeuronState",
    "SimResult",
    "SpikeTrain",
    "StdpParams",
    "StimulusSpec",
    "SweepConfig",
    "SweepRecord",
    "SweepResult",
    "SynapseSpec",
    "UniformRandom",
    "WeightRange",
    "apply_online_stdp",
    "barabasi_albert",
    "build_layered",
    "build_lsm",
    "degrees_to_weights",
    "distance_matrix",
    "draw_weights",
    "emit_plot",
    "erdos_renyi",
    "generate_stimulus",
    "lif_step",
    "merge_trains",
    "pair_delta",
    "read_train",
    "reassign_interlayer_weights",
    "run_sweep",
    "simulate",
    "stdp_window",
    "summarize",
    "uniform_weights",
    "van_rossum",
    "victor_purpura",
    "write_csv",
    "write_summary_csv",
    "write_train",
]
