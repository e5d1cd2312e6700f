import math

import numpy as np
import pytest

from spikesweep import BarabasiAlbert, ErdosRenyi, SweepConfig, UniformRandom, WeightRange
from spikesweep.config import (
    ConfigError,
    default_config_text,
    parse_config,
    serialize_config,
)


class TestDefaults:
    def test_empty_document_gives_defaults(self):
        assert parse_config("") == SweepConfig()

    def test_comments_and_blanks_only(self):
        assert parse_config("# a comment\n\n   \n# another\n") == SweepConfig()

    def test_default_text_round_trips(self):
        assert parse_config(default_config_text()) == SweepConfig()


class TestParsing:
    def test_ranges(self):
        cfg = parse_config("[sweep]\nranges = 1:10,1:20\n")
        assert cfg.ranges == (WeightRange(1, 10), WeightRange(1, 20))

    def test_range_order_violation_names_line(self):
        with pytest.raises(ConfigError, match="line 3.*order"):
            parse_config("[sweep]\nepochs = 2\nranges = 10:5\n")

    def test_methods_list(self):
        cfg = parse_config(
            "[init]\nmethod = uniform,barabasi_albert,erdos_renyi\n"
            "ba_n = 30\nba_m = 3\ner_n = 25\ner_p = 0.2\n"
        )
        assert cfg.methods == (
            UniformRandom(),
            BarabasiAlbert(30, 3),
            ErdosRenyi(25, 0.2),
        )

    def test_er_p_defaults_to_edge_matched(self):
        cfg = parse_config("[init]\nmethod = erdos_renyi\nba_n = 40\nba_m = 2\n")
        er = cfg.methods[0]
        assert er.p == pytest.approx((40 - 2) * 2 / (40 * 39 / 2))

    def test_booleans(self):
        assert parse_config("[simulation]\nplasticity = false\n").plasticity_on is False
        with pytest.raises(ConfigError, match="line 2.*true or false"):
            parse_config("[simulation]\nplasticity = yes\n")

    def test_simulation_keys(self):
        cfg = parse_config(
            "[simulation]\ndt_ms = 0.05\nduration_ms = 500\nkappa_mv = 1.5\n"
            "synapse_model = exp\ntau_syn_ms = 3\nt_ref_ms = 6\n"
        )
        assert cfg.dt_ms == 0.05
        assert cfg.duration_ms == 500.0
        assert cfg.lif.weight_scale_kappa == 1.5
        assert cfg.synapse_model == "exp"
        assert cfg.tau_syn_ms == 3.0
        assert cfg.lif.t_ref == 6.0

    def test_topology_keys(self):
        cfg = parse_config(
            "[topology]\nkind = lsm\nn_liquid = 10\nk_rec = 3\n"
            "n_inhibitory = 5\nliquid_t_ref_ms = 1.5\nw_direct_factor = 2.0\n"
        )
        assert cfg.topology_kind == "lsm"
        assert cfg.n_liquid == 10
        assert cfg.k_rec == 3
        assert cfg.n_inhibitory == 5
        assert cfg.liquid_t_ref_ms == 1.5
        assert cfg.w_direct_factor == 2.0

    def test_seeds_and_epochs(self):
        cfg = parse_config("[sweep]\nseeds = 3,1,4\nepochs = 7\n")
        assert cfg.seeds == (3, 1, 4)
        assert cfg.epochs == 7

    def test_stdp_ceiling_explicit_disables_auto(self):
        cfg = parse_config("[stdp]\nw_ceiling = 55\n")
        assert cfg.w_ceiling_auto is False
        assert cfg.stdp.w_ceiling == 55.0
        assert parse_config("").w_ceiling_auto is True


class TestDiagnostics:
    def test_unknown_section(self):
        with pytest.raises(ConfigError, match=r"line 1: unknown section \[motor\]"):
            parse_config("[motor]\n")

    def test_unknown_key(self):
        with pytest.raises(ConfigError, match="line 2: unknown key 'dt'"):
            parse_config("[simulation]\ndt = 0.1\n")

    def test_key_before_section(self):
        with pytest.raises(ConfigError, match="line 1.*before any"):
            parse_config("dt_ms = 0.1\n")

    def test_duplicate_key(self):
        with pytest.raises(ConfigError, match="line 3: duplicate key 'epochs'"):
            parse_config("[sweep]\nepochs = 1\nepochs = 2\n")

    def test_unterminated_section_reports_column(self):
        with pytest.raises(ConfigError, match="line 1, column 1"):
            parse_config("[sweep\n")

    def test_garbage_line_reports_position(self):
        with pytest.raises(ConfigError, match="line 2, column 1"):
            parse_config("[sweep]\nwhat even is this\n")

    def test_ill_typed_int(self):
        with pytest.raises(ConfigError, match="line 2.*not an integer"):
            parse_config("[sweep]\nepochs = 2.5\n")

    def test_ill_typed_float(self):
        with pytest.raises(ConfigError, match="line 2"):
            parse_config("[simulation]\ndt_ms = fast\n")

    def test_empty_value(self):
        with pytest.raises(ConfigError, match="line 2: empty value"):
            parse_config("[sweep]\nepochs =\n")

    def test_violated_bound(self):
        with pytest.raises(ConfigError, match="line 2"):
            parse_config("[sweep]\nepochs = 0\n")

    def test_neuron_invariant_violation_located(self):
        with pytest.raises(ConfigError, match="line 2"):
            parse_config("[simulation]\nu_th_mv = -80\n")

    def test_ba_m_versus_n(self):
        with pytest.raises(ConfigError, match="ba_m"):
            parse_config("[init]\nba_n = 5\nba_m = 5\n")

    def test_er_p_above_one(self):
        with pytest.raises(ConfigError, match="er_p"):
            parse_config("[init]\ner_p = 1.5\n")

    def test_k_rec_versus_liquid(self):
        with pytest.raises(ConfigError, match="k_rec"):
            parse_config("[topology]\nkind = lsm\nn_liquid = 4\nk_rec = 4\n")

    def test_bad_range_syntax(self):
        with pytest.raises(ConfigError, match="lo:hi"):
            parse_config("[sweep]\nranges = 1-10\n")


def random_config(rng) -> SweepConfig:
    kind = rng.choice(["layered", "lsm"])
    n_ranges = rng.integers(1, 5)
    lows = np.round(rng.uniform(0, 50, n_ranges), 3)
    ranges = tuple(WeightRange(float(lo), float(lo) + float(rng.uniform(0.5, 60)))
                   for lo in lows)
    methods = []
    ba = BarabasiAlbert(int(rng.integers(5, 60)), int(rng.integers(1, 4)))
    er_n = int(rng.integers(5, 60))
    er = ErdosRenyi(er_n, float(rng.uniform(0, 1)))
    for name in rng.permutation(["uniform", "ba", "er"])[: rng.integers(1, 4)]:
        methods.append({"uniform": UniformRandom(), "ba": ba, "er": er}[name])
    n_liquid = int(rng.integers(2, 12))
    return SweepConfig(
        topology_kind=str(kind),
        layer_sizes=tuple(int(s) for s in rng.integers(1, 9, rng.integers(2, 5))),
        n_input=int(rng.integers(1, 4)),
        n_liquid=n_liquid,
        n_readout=int(rng.integers(1, 4)),
        k_rec=int(rng.integers(1, n_liquid)),
        n_inhibitory=None if rng.random() < 0.5 else int(rng.integers(0, 3)),
        w_direct_factor=float(np.round(rng.uniform(0.5, 3.0), 4)),
        liquid_t_ref_ms=None if rng.random() < 0.5 else float(np.round(rng.uniform(0.5, 5), 3)),
        ranges=ranges,
        methods=tuple(methods),
        epochs=int(rng.integers(1, 40)),
        seeds=tuple(int(s) for s in rng.integers(0, 1000, rng.integers(1, 8))),
        duration_ms=float(np.round(rng.uniform(100, 2000), 2)),
        dt_ms=float(rng.choice([0.05, 0.1, 0.2])),
        vp_q=float(np.round(rng.uniform(0, 5), 4)),
        vr_tau=float(np.round(rng.uniform(1, 50), 4)),
        plasticity_on=bool(rng.random() < 0.5),
        synapse_model=str(rng.choice(["delta", "exp"])),
        tau_syn_ms=float(np.round(rng.uniform(0.5, 10), 3)),
    )


class TestRoundTrip:
    def test_serialize_parse_identity_randomised(self):
        rng = np.random.default_rng(2024)
        for _ in range(100):  # the acceptance suite runs 500
            cfg = random_config(rng)
            text = serialize_config(cfg)
            assert parse_config(text) == cfg, text

    def test_reserialization_is_stable(self):
        rng = np.random.default_rng(55)
        cfg = random_config(rng)
        t1 = serialize_config(cfg)
        t2 = serialize_config(parse_config(t1))
        assert t1 == t2
