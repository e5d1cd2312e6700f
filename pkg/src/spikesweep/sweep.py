"""The weight-range sweep harness.

One sweep walks the (method x weight-range x seed) grid.  Per cell the
network topology is built once (for the reservoir net the liquid wiring is
fixed by the seed); each epoch reassigns the plastic inter-layer weights from
an epoch-specific stream, simulates, and scores the pooled input train
against the pooled output train with both spike metrics.  Records land in a
CSV, summaries reduce them per (method, range), and the per-metric scatter
plots reproduce the distance-versus-weight views the study is built around.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .engine import simulate
from .lif import DEFAULT_LIF, LifParams
from .metrics import van_rossum, victor_purpura
from .plasticity import StdpParams
from .seeding import mix64
from .stimulus import StimulusSpec
from .svgplot import Series, render_plot
from .topology import build_layered, build_lsm, reassign_interlayer_weights
from .trains import SpikeTrain, merge_trains
from .weightinit import InitMethod, UniformRandom, WeightRange, method_name

__all__ = [
    "SweepConfig",
    "SweepRecord",
    "CellFailure",
    "SweepResult",
    "Summary",
    "SummaryCell",
    "run_sweep",
    "summarize",
    "write_csv",
    "read_csv",
    "write_summary_csv",
    "emit_plot",
]

RECORDS_HEADER = "run_id,seed,method,w_low,w_high,epoch,vp,vr"
SUMMARY_HEADER = (
    "method,w_low,w_high,vp_min,vp_mean,vp_std,vr_min,vr_mean,vr_std"
)


@dataclass(frozen=True)
class SweepConfig:
    """Everything one sweep needs; defaults give a small layered experiment."""

    topology_kind: str = "layered"
    layer_sizes: tuple[int, ...] = (2, 2)
    n_input: int = 2
    n_liquid: int = 8
    n_readout: int = 2
    k_rec: int = 2
    n_inhibitory: int | None = None
    w_direct_factor: float = 1.3
    liquid_t_ref_ms: float | None = None
    delay_ms: float = 1.0
    ranges: tuple[WeightRange, ...] = (
        WeightRange(1, 10),
        WeightRange(1, 20),
        WeightRange(1, 50),
        WeightRange(1, 100),
    )
    methods: tuple[InitMethod, ...] = (UniformRandom(),)
    epochs: int = 30
    seeds: tuple[int, ...] = tuple(range(20))
    duration_ms: float = 1000.0
    dt_ms: float = 0.1
    stimulus: StimulusSpec = StimulusSpec()
    lif: LifParams = DEFAULT_LIF
    stdp: StdpParams = StdpParams()
    w_ceiling_auto: bool = True
    vp_q: float = 1.0
    vr_tau: float = 10.0
    plasticity_on: bool = True
    synapse_model: str = "delta"
    tau_syn_ms: float = 2.5

    def __post_init__(self):
        if self.topology_kind not in ("layered", "lsm"):
            raise ValueError(f"unknown topology kind: {self.topology_kind!r}")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if not (self.ranges and self.methods and self.seeds):
            raise ValueError("need at least one range, one method and one seed")


@dataclass(frozen=True)
class SweepRecord:
    run_id: str
    seed: int
    method: str
    w_low: float
    w_high: float
    epoch: int
    vp: float
    vr: float


@dataclass(frozen=True)
class CellFailure:
    method: str
    w_low: float
    w_high: float
    seed: int
    error: str


@dataclass(frozen=True)
class SweepResult:
    records: tuple[SweepRecord, ...]
    failures: tuple[CellFailure, ...] = ()


def _build_cell_topology(config: SweepConfig, method, wrange, seed):
    if config.topology_kind == "layered":
        return build_layered(
            config.layer_sizes,
            method,
            wrange,
            seed,
            lif_params=config.lif,
            delay=config.delay_ms,
        )
    return build_lsm(
        n_in=config.n_input,
        n_liquid=config.n_liquid,
        n_out=config.n_readout,
        init=method,
        wrange=wrange,
        liquid_seed=seed,
        epoch_seed=seed,
        lif_params=config.lif,
        k_rec=config.k_rec,
        n_inh=config.n_inhibitory,
        w_direct_factor=config.w_direct_factor,
        delay=config.delay_ms,
        liquid_t_ref=config.liquid_t_ref_ms,
    )


def _pooled(result, ids) -> SpikeTrain:
    return merge_trains([result.recorded[i] for i in ids])


def cell_stdp(config: SweepConfig, wrange: WeightRange) -> StdpParams:
    """Per-cell STDP bounds: the auto ceiling is twice the range's top."""
    if config.w_ceiling_auto:
        return replace(config.stdp, w_ceiling=2.0 * wrange.high)
    return config.stdp


def epoch_seed(seed: int, epoch: int, method, wrange: WeightRange) -> int:
    """Independent, reproducible stream id for one epoch of one cell."""
    return mix64(seed, epoch, method_name(method), wrange.low, wrange.high)


def run_sweep(config: SweepConfig) -> SweepResult:
    """Walk the grid; a failing cell is reported and skipped, not fatal.

    Successful cells contribute exactly ``epochs`` records each, so a clean
    sweep yields len(methods) * len(ranges) * len(seeds) * epochs records.
    """
    records: list[SweepRecord] = []
    failures: list[CellFailure] = []
    for method in config.methods:
        mname = method_name(method)
        for wrange in config.ranges:
            stdp = cell_stdp(config, wrange)
            for seed in config.seeds:
                try:
                    topo = _build_cell_topology(config, method, wrange, seed)
                    cell_records = []
                    for epoch in range(config.epochs):
                        es = epoch_seed(seed, epoch, method, wrange)
                        topo_e = reassign_interlayer_weights(
                            topo, method, wrange, es
                        )
                        result = simulate(
                            topo_e,
                            config.stimulus,
                            config.duration_ms,
                            dt=config.dt_ms,
                            seed=seed,
                            plasticity_on=config.plasticity_on,
                            stdp=stdp,
                            synapse_model=config.synapse_model,
                            tau_syn=config.tau_syn_ms,
                        )
                        train_in = _pooled(result, topo_e.input_ids)
                        train_out = _pooled(result, topo_e.output_ids)
                        vp = victor_purpura(train_in, train_out, q=config.vp_q)
                        vr = van_rossum(train_in, train_out, tau=config.vr_tau)
                        run_id = (
                            f"{mname}:{wrange.low:g}-{wrange.high:g}"
                            f":s{seed}:e{epoch}"
                        )
                        cell_records.append(
                            SweepRecord(
                                run_id,
                                seed,
                                mname,
                                wrange.low,
                                wrange.high,
                                epoch,
                                vp,
                                vr,
                            )
                        )
                except Exception as exc:  # noqa: BLE001 - cell isolation
                    failures.append(
                        CellFailure(
                            mname, wrange.low, wrange.high, seed, str(exc)
                        )
                    )
                    continue
                records.extend(cell_records)
    return SweepResult(tuple(records), tuple(failures))


@dataclass(frozen=True)
class SummaryCell:
    method: str
    w_low: float
    w_high: float
    vp_min: float
    vp_mean: float
    vp_std: float
    vr_min: float
    vr_mean: float
    vr_std: float
    count: int


@dataclass(frozen=True)
class Summary:
    cells: tuple[SummaryCell, ...]
    # (method, 'vp'|'vr') -> (w_low, w_high) attaining the smallest minimum
    best_range: dict[tuple[str, str], tuple[float, float]] = field(
        default_factory=dict
    )


def summarize(records) -> Summary:
    """Per-(method, range) statistics and the per-method best range.

    The best range minimises the cell minimum of the metric; exact ties go to
    the lower range.  Standard deviations are population ones.
    """
    records = list(records)
    if not records:
        raise ValueError("cannot summarise an empty record list")
    groups: dict[tuple[str, float, float], list[SweepRecord]] = {}
    for r in records:
        groups.setdefault((r.method, r.w_low, r.w_high), []).append(r)
    cells = []
    for (method, w_low, w_high) in sorted(groups):
        rs = groups[(method, w_low, w_high)]
        vp = np.array([r.vp for r in rs])
        vr = np.array([r.vr for r in rs])
        cells.append(
            SummaryCell(
                method,
                w_low,
                w_high,
                float(vp.min()),
                float(vp.mean()),
                float(vp.std()),
                float(vr.min()),
                float(vr.mean()),
                float(vr.std()),
                len(rs),
            )
        )
    best: dict[tuple[str, str], tuple[float, float]] = {}
    for metric in ("vp", "vr"):
        for method in sorted({c.method for c in cells}):
            candidates = sorted(
                (c for c in cells if c.method == method),
                key=lambda c: (c.w_low, c.w_high),
            )
            values = [getattr(c, f"{metric}_min") for c in candidates]
            lowest = min(values)
            pick = candidates[values.index(lowest)]  # first = lower range
            best[(method, metric)] = (pick.w_low, pick.w_high)
    return Summary(tuple(cells), best)


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _record_sort_key(r: SweepRecord):
    return (r.method, r.w_low, r.seed, r.epoch)


def write_csv(records, path) -> None:
    """records.csv: fixed header, 6-significant-digit floats, sorted rows."""
    rows = sorted(records, key=_record_sort_key)
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            fh.write(RECORDS_HEADER + "\n")
            for r in rows:
                fh.write(
                    f"{r.run_id},{r.seed},{r.method},{_fmt(r.w_low)},"
                    f"{_fmt(r.w_high)},{r.epoch},{_fmt(r.vp)},{_fmt(r.vr)}\n"
                )
    except OSError as exc:
        raise OSError(f"cannot write records to {path}: {exc}") from exc


def read_csv(path) -> list[SweepRecord]:
    """Inverse of write_csv (to the precision the format keeps)."""
    out = []
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if ",".join(header) != RECORDS_HEADER:
            raise ValueError(f"{path}: unexpected header {header!r}")
        for row in reader:
            out.append(
                SweepRecord(
                    row[0],
                    int(row[1]),
                    row[2],
                    float(row[3]),
                    float(row[4]),
                    int(row[5]),
                    float(row[6]),
                    float(row[7]),
                )
            )
    return out


def write_summary_csv(summary: Summary, path) -> None:
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            fh.write(SUMMARY_HEADER + "\n")
            for c in summary.cells:
                fh.write(
                    f"{c.method},{_fmt(c.w_low)},{_fmt(c.w_high)},"
                    f"{_fmt(c.vp_min)},{_fmt(c.vp_mean)},{_fmt(c.vp_std)},"
                    f"{_fmt(c.vr_min)},{_fmt(c.vr_mean)},{_fmt(c.vr_std)}\n"
                )
    except OSError as exc:
        raise OSError(f"cannot write summary to {path}: {exc}") from exc


def emit_plot(records, metric: str, path) -> None:
    """Distance versus weight-range midpoint, one series per method.

    Every record contributes a marker; each method additionally gets a mean
    line across its ranges.  Output bytes depend only on the records.
    """
    records = list(records)
    if not records:
        raise ValueError("cannot plot an empty record list")
    if metric not in ("vp", "vr"):
        raise ValueError(f"unknown metric: {metric!r}")
    series = []
    for mname in sorted({r.method for r in records}):
        rs = [r for r in records if r.method == mname]
        points = [
            (0.5 * (r.w_low + r.w_high), getattr(r, metric))
            for r in sorted(rs, key=_record_sort_key)
        ]
        means: dict[tuple[float, float], list[float]] = {}
        for r in rs:
            means.setdefault((r.w_low, r.w_high), []).append(getattr(r, metric))
        line = [
            (0.5 * (lo + hi), math.fsum(vals) / len(vals))
            for (lo, hi), vals in sorted(means.items())
        ]
        series.append(Series(mname, points=points, line=line))
    svg = render_plot(
        series,
        xlabel="weight (range midpoint)",
        ylabel=f"{metric.upper()} distance",
        title=f"{metric.upper()} distance between input and output trains",
    )
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    except OSError as exc:
        raise OSError(f"cannot write plot to {path}: {exc}") from exc
