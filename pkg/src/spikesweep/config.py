"""Sectioned key=value experiment configuration.

Grammar: a line is ``[section]``, ``key = value``, blank, or a ``#`` comment.
Sections are fixed: [simulation], [topology], [init], [sweep], [metrics],
[stdp].  Values are integers, decimals, booleans (true/false), names,
comma-separated lists, or lo:hi weight ranges.  Unknown sections or keys,
duplicated keys, ill-typed values and violated invariants are all rejected
with the offending line number; nothing malformed is silently defaulted.

parse_config("") yields the package's default experiment, and
serialize_config produces text that parses back to an equal SweepConfig.
"""

from __future__ import annotations

import math

from .lif import LifParams
from .plasticity import StdpParams
from .stimulus import StimulusSpec
from .sweep import SweepConfig
from .weightinit import (
    BarabasiAlbert,
    ErdosRenyi,
    UniformRandom,
    WeightRange,
)

__all__ = ["ConfigError", "parse_config", "serialize_config", "default_config_text"]


class ConfigError(ValueError):
    """Malformed configuration text; the message names the input location."""


SECTIONS = ("simulation", "topology", "init", "sweep", "metrics", "stdp")

_KEYS = {
    "simulation": (
        "dt_ms",
        "duration_ms",
        "plasticity",
        "synapse_model",
        "tau_syn_ms",
        "stim_kind",
        "stim_rate_hz",
        "stim_amplitude",
        "stim_seed",
        "u_rest_mv",
        "u_th_mv",
        "u_reset_mv",
        "tau_m_ms",
        "c_m_pf",
        "t_ref_ms",
        "kappa_mv",
    ),
    "topology": (
        "kind",
        "layers",
        "n_input",
        "n_liquid",
        "n_readout",
        "k_rec",
        "n_inhibitory",
        "w_direct_factor",
        "liquid_t_ref_ms",
        "delay_ms",
    ),
    "init": ("method", "ba_n", "ba_m", "er_n", "er_p"),
    "sweep": ("ranges", "epochs", "seeds"),
    "metrics": ("vp_q_per_ms", "vr_tau_ms"),
    "stdp": (
        "a_plus",
        "a_minus",
        "tau_plus_ms",
        "tau_minus_ms",
        "w_floor",
        "w_ceiling",
    ),
}

_METHOD_NAMES = ("uniform", "barabasi_albert", "erdos_renyi")


def _scan(text: str) -> dict[tuple[str, str], tuple[str, int]]:
    """First pass: structure only.  Returns (section, key) -> (value, line)."""
    assigned: dict[tuple[str, str], tuple[str, int]] = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                col = raw.index("[") + 1
                raise ConfigError(
                    f"line {lineno}, column {col}: unterminated section header"
                )
            name = line[1:-1].strip()
            if name not in SECTIONS:
                raise ConfigError(f"line {lineno}: unknown section [{name}]")
            section = name
            continue
        if "=" not in line:
            raise ConfigError(
                f"line {lineno}, column 1: expected 'key = value', a "
                f"[section] header, or a comment"
            )
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key:
            raise ConfigError(f"line {lineno}: missing key before '='")
        if section is None:
            raise ConfigError(
                f"line {lineno}: key {key!r} appears before any [section]"
            )
        if key not in _KEYS[section]:
            raise ConfigError(
                f"line {lineno}: unknown key {key!r} in section [{section}]"
            )
        if (section, key) in assigned:
            first = assigned[(section, key)][1]
            raise ConfigError(
                f"line {lineno}: duplicate key {key!r} (first set on line {first})"
            )
        if not value:
            raise ConfigError(f"line {lineno}: empty value for {key!r}")
        assigned[(section, key)] = (value, lineno)
    return assigned


class _Reader:
    """Typed access over the scanned assignments, errors carry line numbers."""

    def __init__(self, assigned):
        self.assigned = assigned

    def _raw(self, section, key):
        return self.assigned.get((section, key))

    def _convert(self, section, key, default, conv):
        item = self._raw(section, key)
        if item is None:
            return default
        value, lineno = item
        try:
            return conv(value)
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: {key} = {value!r}: {exc}") from None

    def floatv(self, section, key, default, minimum=None, strict=False):
        def conv(s):
            x = float(s)
            if not math.isfinite(x):
                raise ValueError("value must be finite")
            if minimum is not None and (x <= minimum if strict else x < minimum):
                op = ">" if strict else ">="
                raise ValueError(f"value must be {op} {minimum}")
            return x

        return self._convert(section, key, default, conv)

    def intv(self, section, key, default, minimum=None):
        def conv(s):
            try:
                x = int(s, 10)
            except ValueError:
                raise ValueError("not an integer") from None
            if minimum is not None and x < minimum:
                raise ValueError(f"value must be >= {minimum}")
            return x

        return self._convert(section, key, default, conv)

    def boolv(self, section, key, default):
        def conv(s):
            if s == "true":
                return True
            if s == "false":
                return False
            raise ValueError("expected true or false")

        return self._convert(section, key, default, conv)

    def choice(self, section, key, default, options):
        def conv(s):
            if s not in options:
                raise ValueError(f"expected one of {', '.join(options)}")
            return s

        return self._convert(section, key, default, conv)

    def int_list(self, section, key, default, minimum=None):
        def conv(s):
            out = []
            for part in s.split(","):
                part = part.strip()
                try:
                    x = int(part, 10)
                except ValueError:
                    raise ValueError(f"{part!r} is not an integer") from None
                if minimum is not None and x < minimum:
                    raise ValueError(f"{part!r} must be >= {minimum}")
                out.append(x)
            return tuple(out)

        return self._convert(section, key, default, conv)

    def range_list(self, section, key, default):
        def conv(s):
            out = []
            for part in s.split(","):
                part = part.strip()
                lo, sep, hi = part.partition(":")
                if not sep:
                    raise ValueError(f"{part!r} is not a lo:hi range")
                try:
                    low, high = float(lo), float(hi)
                except ValueError:
                    raise ValueError(f"{part!r} is not a lo:hi range") from None
                if not (0 <= low < high):
                    raise ValueError(
                        f"{part!r} violates 0 <= lo < hi (range bounds out of order)"
                    )
                out.append(WeightRange(low, high))
            return tuple(out)

        return self._convert(section, key, default, conv)

    def name_list(self, section, key, default, options):
        def conv(s):
            out = []
            for part in s.split(","):
                part = part.strip()
                if part not in options:
                    raise ValueError(
                        f"{part!r} is not one of {', '.join(options)}"
                    )
                out.append(part)
            return tuple(out)

        return self._convert(section, key, default, conv)


_DEFAULTS = SweepConfig()


def parse_config(text: str) -> SweepConfig:
    """Parse configuration text into a fully defaulted SweepConfig."""
    assigned = _scan(text)
    r = _Reader(assigned)

    dt = r.floatv("simulation", "dt_ms", _DEFAULTS.dt_ms, 0, strict=True)
    duration = r.floatv(
        "simulation", "duration_ms", _DEFAULTS.duration_ms, 0, strict=True
    )
    plasticity = r.boolv("simulation", "plasticity", _DEFAULTS.plasticity_on)
    synapse_model = r.choice(
        "simulation", "synapse_model", _DEFAULTS.synapse_model, ("delta", "exp")
    )
    tau_syn = r.floatv(
        "simulation", "tau_syn_ms", _DEFAULTS.tau_syn_ms, 0, strict=True
    )
    stim_kind = r.choice(
        "simulation", "stim_kind", _DEFAULTS.stimulus.kind, ("regular", "poisson")
    )
    stim_rate = r.floatv(
        "simulation", "stim_rate_hz", _DEFAULTS.stimulus.rate, 0, strict=True
    )
    stim_amp = r.floatv(
        "simulation", "stim_amplitude", _DEFAULTS.stimulus.amplitude, 0, strict=True
    )
    stim_seed = r.intv("simulation", "stim_seed", _DEFAULTS.stimulus.seed)
    u_rest = r.floatv("simulation", "u_rest_mv", _DEFAULTS.lif.u_rest)
    u_th = r.floatv("simulation", "u_th_mv", _DEFAULTS.lif.u_th)
    u_reset = r.floatv("simulation", "u_reset_mv", _DEFAULTS.lif.u_reset)
    tau_m = r.floatv("simulation", "tau_m_ms", _DEFAULTS.lif.tau_m, 0, strict=True)
    c_m = r.floatv("simulation", "c_m_pf", _DEFAULTS.lif.c_m, 0, strict=True)
    t_ref = r.floatv("simulation", "t_ref_ms", _DEFAULTS.lif.t_ref, 0)
    kappa = r.floatv(
        "simulation", "kappa_mv", _DEFAULTS.lif.weight_scale_kappa, 0, strict=True
    )

    kind = r.choice("topology", "kind", _DEFAULTS.topology_kind, ("layered", "lsm"))
    layers = r.int_list("topology", "layers", _DEFAULTS.layer_sizes, minimum=1)
    n_input = r.intv("topology", "n_input", _DEFAULTS.n_input, 1)
    n_liquid = r.intv("topology", "n_liquid", _DEFAULTS.n_liquid, 1)
    n_readout = r.intv("topology", "n_readout", _DEFAULTS.n_readout, 1)
    k_rec = r.intv("topology", "k_rec", _DEFAULTS.k_rec, 1)
    n_inh = r.intv("topology", "n_inhibitory", _DEFAULTS.n_inhibitory, 0)
    w_direct_factor = r.floatv(
        "topology", "w_direct_factor", _DEFAULTS.w_direct_factor, 0, strict=True
    )
    liquid_t_ref = r.floatv(
        "topology", "liquid_t_ref_ms", _DEFAULTS.liquid_t_ref_ms, 0
    )
    delay = r.floatv("topology", "delay_ms", _DEFAULTS.delay_ms, 0, strict=True)

    method_names = r.name_list("init", "method", ("uniform",), _METHOD_NAMES)
    ba_n = r.intv("init", "ba_n", BarabasiAlbert().n, 2)
    ba_m = r.intv("init", "ba_m", BarabasiAlbert().m, 1)
    er_n = r.intv("init", "er_n", ba_n, 2)
    er_p = r.floatv("init", "er_p", None, 0)

    ranges = r.range_list("sweep", "ranges", _DEFAULTS.ranges)
    epochs = r.intv("sweep", "epochs", _DEFAULTS.epochs, 1)
    seeds = r.int_list("sweep", "seeds", _DEFAULTS.seeds)

    vp_q = r.floatv("metrics", "vp_q_per_ms", _DEFAULTS.vp_q, 0)
    vr_tau = r.floatv("metrics", "vr_tau_ms", _DEFAULTS.vr_tau, 0, strict=True)

    a_plus = r.floatv("stdp", "a_plus", _DEFAULTS.stdp.a_plus, 0)
    a_minus = r.floatv("stdp", "a_minus", _DEFAULTS.stdp.a_minus, 0)
    tau_plus = r.floatv("stdp", "tau_plus_ms", _DEFAULTS.stdp.tau_plus, 0, strict=True)
    tau_minus = r.floatv(
        "stdp", "tau_minus_ms", _DEFAULTS.stdp.tau_minus, 0, strict=True
    )
    w_floor = r.floatv("stdp", "w_floor", _DEFAULTS.stdp.w_floor)
    w_ceiling = r.floatv("stdp", "w_ceiling", None)

    def located(section, *keys_then_exc):
        *keys, exc = keys_then_exc
        where = ""
        for key in keys:
            item = assigned.get((section, key))
            if item is not None:
                where = f"line {item[1]}: "
                break
        return ConfigError(f"{where}{exc}")

    if ba_m >= ba_n:
        raise located("init", "ba_m", f"ba_m must satisfy 1 <= m < n (n={ba_n})")
    if er_p is not None and er_p > 1:
        raise located("init", "er_p", "er_p must be a probability in [0, 1]")
    if er_p is None:
        # match the expected edge count of the configured preferential graph
        er_p = min(1.0, (ba_n - ba_m) * ba_m / (er_n * (er_n - 1) / 2))

    methods = []
    for name in method_names:
        if name == "uniform":
            methods.append(UniformRandom())
        elif name == "barabasi_albert":
            methods.append(BarabasiAlbert(ba_n, ba_m))
        else:
            methods.append(ErdosRenyi(er_n, er_p))

    try:
        lif = LifParams(
            u_rest=u_rest,
            u_th=u_th,
            u_reset=u_reset,
            tau_m=tau_m,
            c_m=c_m,
            t_ref=t_ref,
            weight_scale_kappa=kappa,
        )
    except ValueError as exc:
        raise located(
            "simulation", "u_th_mv", "u_reset_mv", "u_rest_mv", "tau_m_ms",
            "c_m_pf", "t_ref_ms", "kappa_mv", exc,
        ) from None
    try:
        stdp = StdpParams(
            a_plus=a_plus,
            a_minus=a_minus,
            tau_plus=tau_plus,
            tau_minus=tau_minus,
            w_floor=w_floor,
            w_ceiling=w_ceiling if w_ceiling is not None else math.inf,
        )
    except ValueError as exc:
        raise located(
            "stdp", "w_ceiling", "w_floor", "a_plus", "a_minus", exc
        ) from None
    if len(layers) < 2:
        raise located("topology", "layers", "need at least two layers")
    if k_rec >= n_liquid:
        raise located("topology", "k_rec", f"k_rec must be < n_liquid ({n_liquid})")

    return SweepConfig(
        topology_kind=kind,
        layer_sizes=layers,
        n_input=n_input,
        n_liquid=n_liquid,
        n_readout=n_readout,
        k_rec=k_rec,
        n_inhibitory=n_inh,
        w_direct_factor=w_direct_factor,
        liquid_t_ref_ms=liquid_t_ref,
        delay_ms=delay,
        ranges=ranges,
        methods=tuple(methods),
        epochs=epochs,
        seeds=seeds,
        duration_ms=duration,
        dt_ms=dt,
        stimulus=StimulusSpec(
            kind=stim_kind, rate=stim_rate, seed=stim_seed, amplitude=stim_amp
        ),
        lif=lif,
        stdp=stdp,
        w_ceiling_auto=w_ceiling is None,
        vp_q=vp_q,
        vr_tau=vr_tau,
        plasticity_on=plasticity,
        synapse_model=synapse_model,
        tau_syn_ms=tau_syn,
    )


def serialize_config(config: SweepConfig) -> str:
    """Canonical text form; parse_config(serialize_config(c)) == c."""
    from .weightinit import method_name

    names = tuple(method_name(m) for m in config.methods)
    ba = next(
        (m for m in config.methods if isinstance(m, BarabasiAlbert)),
        BarabasiAlbert(),
    )
    er = next((m for m in config.methods if isinstance(m, ErdosRenyi)), None)

    lines = [
        "[simulation]",
        f"dt_ms = {config.dt_ms!r}",
        f"duration_ms = {config.duration_ms!r}",
        f"plasticity = {'true' if config.plasticity_on else 'false'}",
        f"synapse_model = {config.synapse_model}",
        f"tau_syn_ms = {config.tau_syn_ms!r}",
        f"stim_kind = {config.stimulus.kind}",
        f"stim_rate_hz = {config.stimulus.rate!r}",
        f"stim_amplitude = {config.stimulus.amplitude!r}",
        f"stim_seed = {config.stimulus.seed}",
        f"u_rest_mv = {config.lif.u_rest!r}",
        f"u_th_mv = {config.lif.u_th!r}",
        f"u_reset_mv = {config.lif.u_reset!r}",
        f"tau_m_ms = {config.lif.tau_m!r}",
        f"c_m_pf = {config.lif.c_m!r}",
        f"t_ref_ms = {config.lif.t_ref!r}",
        f"kappa_mv = {config.lif.weight_scale_kappa!r}",
        "",
        "[topology]",
        f"kind = {config.topology_kind}",
        f"layers = {','.join(str(s) for s in config.layer_sizes)}",
        f"n_input = {config.n_input}",
        f"n_liquid = {config.n_liquid}",
        f"n_readout = {config.n_readout}",
        f"k_rec = {config.k_rec}",
    ]
    if config.n_inhibitory is not None:
        lines.append(f"n_inhibitory = {config.n_inhibitory}")
    lines += [f"w_direct_factor = {config.w_direct_factor!r}"]
    if config.liquid_t_ref_ms is not None:
        lines.append(f"liquid_t_ref_ms = {config.liquid_t_ref_ms!r}")
    lines += [
        f"delay_ms = {config.delay_ms!r}",
        "",
        "[init]",
        f"method = {','.join(names)}",
        f"ba_n = {ba.n}",
        f"ba_m = {ba.m}",
    ]
    if er is not None:
        lines += [f"er_n = {er.n}", f"er_p = {er.p!r}"]
    lines += [
        "",
        "[sweep]",
        "ranges = "
        + ",".join(f"{r.low!r}:{r.high!r}" for r in config.ranges),
        f"epochs = {config.epochs}",
        f"seeds = {','.join(str(s) for s in config.seeds)}",
        "",
        "[metrics]",
        f"vp_q_per_ms = {config.vp_q!r}",
        f"vr_tau_ms = {config.vr_tau!r}",
        "",
        "[stdp]",
        f"a_plus = {config.stdp.a_plus!r}",
        f"a_minus = {config.stdp.a_minus!r}",
        f"tau_plus_ms = {config.stdp.tau_plus!r}",
        f"tau_minus_ms = {config.stdp.tau_minus!r}",
        f"w_floor = {config.stdp.w_floor!r}",
    ]
    if not config.w_ceiling_auto:
        lines.append(f"w_ceiling = {config.stdp.w_ceiling!r}")
    return "\n".join(lines) + "\n"


def default_config_text() -> str:
    return serialize_config(SweepConfig())
