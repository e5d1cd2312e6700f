"""Command-line front end.

Subcommands::

    sweep    --config FILE --out DIR   full grid sweep: records.csv,
                                       summary.csv, vp.svg, vr.svg
             --print-defaults          show the built-in default config
    simulate --config FILE --out DIR   one run, recorded trains as text files
    metric   vp|vr --a FILE --b FILE   distance between two train files
    graph    ba|er [params] --out DIR  edge list plus degree/weight table

Exit codes: 0 success, 1 usage error, 2 configuration error, 3 runtime
failure.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ConfigError, default_config_text, parse_config
from .engine import simulate
from .metrics import van_rossum, victor_purpura
from .sweep import (
    emit_plot,
    run_sweep,
    summarize,
    write_csv,
    write_summary_csv,
)
from .topology import build_layered, build_lsm
from .trains import read_train, write_train
from .weightinit import (
    WeightRange,
    barabasi_albert,
    degrees_to_weights,
    erdos_renyi,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONFIG = 2
EXIT_RUNTIME = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; the CLI contract wants 1
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="spikesweep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command")

    p_sweep = sub.add_parser("sweep", help="run the full weight-range sweep")
    p_sweep.add_argument("--config", help="config file (defaults apply if omitted)")
    p_sweep.add_argument("--out", help="output directory")
    p_sweep.add_argument(
        "--print-defaults",
        action="store_true",
        help="print the built-in default configuration and exit",
    )

    p_sim = sub.add_parser("simulate", help="one run, dump recorded trains")
    p_sim.add_argument("--config", help="config file (defaults apply if omitted)")
    p_sim.add_argument("--out", required=True, help="output directory")

    p_metric = sub.add_parser("metric", help="distance between two train files")
    p_metric.add_argument("kind", choices=("vp", "vr"))
    p_metric.add_argument("--a", required=True, help="first spike-train file")
    p_metric.add_argument("--b", required=True, help="second spike-train file")
    p_metric.add_argument("--q", type=float, default=1.0, help="shift cost (1/ms)")
    p_metric.add_argument("--tau", type=float, default=10.0, help="kernel tau (ms)")

    p_graph = sub.add_parser("graph", help="emit a random graph and weight table")
    p_graph.add_argument("kind", choices=("ba", "er"))
    p_graph.add_argument("--nodes", type=int, default=40)
    p_graph.add_argument("--edges-per-node", type=int, default=2, dest="m")
    p_graph.add_argument("--prob", type=float, default=0.1)
    p_graph.add_argument("--seed", type=int, default=0)
    p_graph.add_argument("--range", default="1:10", dest="wrange", help="lo:hi")
    p_graph.add_argument("--keep", type=float, default=0.8)
    p_graph.add_argument("--out", required=True, help="output directory")
    return parser


def _load_config(path: str | None):
    if path is None:
        return parse_config("")
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)


def _cmd_sweep(args) -> int:
    if args.print_defaults:
        sys.stdout.write(default_config_text())
        return EXIT_OK
    if args.out is None:
        raise _UsageError("sweep requires --out (or --print-defaults)")
    config = _load_config(args.config)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    result = run_sweep(config)
    write_csv(result.records, out / "records.csv")
    if result.records:
        write_summary_csv(summarize(result.records), out / "summary.csv")
        emit_plot(result.records, "vp", out / "vp.svg")
        emit_plot(result.records, "vr", out / "vr.svg")
    if result.failures:
        with open(out / "failures.txt", "w", encoding="utf-8") as fh:
            for f in result.failures:
                fh.write(
                    f"{f.method} range {f.w_low:g}:{f.w_high:g} seed {f.seed}: "
                    f"{f.error}\n"
                )
        print(
            f"{len(result.failures)} cell(s) failed; see {out / 'failures.txt'}",
            file=sys.stderr,
        )
    return EXIT_OK


def _cmd_simulate(args) -> int:
    config = _load_config(args.config)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    method = config.methods[0]
    wrange = config.ranges[0]
    seed = config.seeds[0]
    if config.topology_kind == "layered":
        topo = build_layered(
            config.layer_sizes, method, wrange, seed,
            lif_params=config.lif, delay=config.delay_ms,
        )
    else:
        topo = build_lsm(
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
        )
    result = simulate(
        topo,
        config.stimulus,
        config.duration_ms,
        dt=config.dt_ms,
        seed=seed,
        plasticity_on=config.plasticity_on,
        stdp=config.stdp,
        synapse_model=config.synapse_model,
        tau_syn=config.tau_syn_ms,
    )
    for neuron_id in sorted(result.recorded):
        write_train(result.recorded[neuron_id], out / f"neuron_{neuron_id}.txt")
    print(f"wrote {len(result.recorded)} trains to {out}")
    return EXIT_OK


def _cmd_metric(args) -> int:
    a = read_train(args.a)
    b = read_train(args.b)
    if args.kind == "vp":
        value = victor_purpura(a, b, q=args.q)
    else:
        value = van_rossum(a, b, tau=args.tau)
    print(f"{value:.6g}")
    return EXIT_OK


def _cmd_graph(args) -> int:
    lo, sep, hi = args.wrange.partition(":")
    if not sep:
        raise _UsageError(f"--range must be lo:hi, got {args.wrange!r}")
    try:
        wrange = WeightRange(float(lo), float(hi))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if args.kind == "ba":
        graph = barabasi_albert(args.nodes, args.m, args.seed)
    else:
        graph = erdos_renyi(args.nodes, args.prob, args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "edges.txt", "w", encoding="utf-8") as fh:
        for u, v in graph.edges:
            fh.write(f"{u} {v}\n")
    degrees = graph.degrees()
    pool = degrees_to_weights(graph, wrange, args.keep)
    # reproduce the pool's node order to mark which rows were kept
    import numpy as np

    order = np.lexsort((np.arange(graph.n), -degrees))
    kept_nodes = set(int(i) for i in order[: pool.size])
    d_min, d_max = int(degrees.min()), int(degrees.max())
    with open(out / "weights.csv", "w", encoding="utf-8") as fh:
        fh.write("node,degree,weight,kept\n")
        for node in range(graph.n):
            if d_max == d_min:
                w = wrange.midpoint
            else:
                w = wrange.low + (degrees[node] - d_min) / (d_max - d_min) * (
                    wrange.high - wrange.low
                )
            fh.write(
                f"{node},{degrees[node]},{w:.6g},{1 if node in kept_nodes else 0}\n"
            )
    print(f"wrote {len(graph.edges)} edges and {graph.n} weight rows to {out}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            print("error: a subcommand is required", file=sys.stderr)
            return EXIT_USAGE
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "simulate":
            return _cmd_simulate(args)
        if args.command == "metric":
            return _cmd_metric(args)
        return _cmd_graph(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
