import math

import pytest

from spikesweep import DEFAULT_LIF, LifParams, NeuronState, lif_step


def integrate(params, u0, current, duration, dt, jumps=None):
    """Step the neuron over a horizon; returns (trajectory, spike times)."""
    jumps = jumps or {}
    state = NeuronState(u0)
    traj = [u0]
    spikes = []
    n_steps = round(duration / dt)
    for k in range(n_steps):
        now = k * dt
        state, spiked = lif_step(state, params, current, jumps.get(k, 0.0), dt, now)
        traj.append(state.u)
        if spiked:
            spikes.append(now + dt)
    return traj, spikes


def reference_potential(params, u0, current, t, substeps=100):
    """Independent fine-step integrator (no threshold), 100x finer grid."""
    u = u0
    dt = 0.1 / substeps
    steps = round(t / dt)
    for _ in range(steps):
        u = u + dt * ((params.u_rest - u) / params.tau_m + current / params.c_m)
    return u


NO_THRESHOLD = LifParams(u_th=math.inf, tau_m=10.0, c_m=250.0)


class TestLifStep:
    def test_resting_fixed_point(self):
        state = NeuronState(DEFAULT_LIF.u_rest)
        new, spiked = lif_step(state, DEFAULT_LIF, 0.0, 0.0, 0.1, 0.0)
        assert new.u == DEFAULT_LIF.u_rest
        assert not spiked

    def test_convergence_to_steady_state(self):
        # u_inf = u_rest + I * tau_m / c_m = -70 + 250*10/250 = -60
        traj, _ = integrate(NO_THRESHOLD, -70.0, 250.0, 200.0, 0.1)
        expected = reference_potential(NO_THRESHOLD, -70.0, 250.0, 200.0)
        assert traj[-1] == pytest.approx(-60.0, abs=1e-6)
        assert traj[-1] == pytest.approx(expected, abs=1e-3)

    def test_reset_contract_on_jump_crossing(self):
        params = DEFAULT_LIF
        state = NeuronState(params.u_th - 0.5)
        new, spiked = lif_step(state, params, 0.0, 20.0, 0.1, 0.0)
        assert spiked
        assert new.u == params.u_reset
        assert new.refractory_until == 0.0 + params.t_ref

    def test_refractory_holds_and_discards(self):
        params = DEFAULT_LIF
        state = NeuronState(params.u_reset, refractory_until=5.0)
        new, spiked = lif_step(state, params, 1e6, 100.0, 0.1, 4.9)
        assert not spiked
        assert new.u == params.u_reset
        # release: at now >= refractory_until integration resumes
        new2, _ = lif_step(new, params, 0.0, 1.0, 0.1, 5.0)
        assert new2.u != params.u_reset

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError, match="non-finite"):
            lif_step(NeuronState(math.nan), DEFAULT_LIF, 0.0, 0.0, 0.1, 0.0)
        with pytest.raises(ValueError, match="non-finite"):
            lif_step(NeuronState(-70.0), DEFAULT_LIF, math.inf, 0.0, 0.1, 0.0)

    def test_bad_dt_rejected(self):
        with pytest.raises(ValueError, match="dt"):
            lif_step(NeuronState(-70.0), DEFAULT_LIF, 0.0, 0.0, 0.0, 0.0)


class TestAgainstClosedForm:
    def test_subthreshold_trajectory_within_half_step_error(self):
        # u(t) = u_inf + (u0 - u_inf) exp(-t/tau_m), I = 250 pA
        params = NO_THRESHOLD
        dt = 0.1
        current = 250.0
        u_inf = params.u_rest + current * params.tau_m / params.c_m
        traj, _ = integrate(params, params.u_rest, current, 100.0, dt)
        worst = 0.0
        for k, u in enumerate(traj):
            exact = u_inf + (params.u_rest - u_inf) * math.exp(-k * dt / params.tau_m)
            worst = max(worst, abs(u - exact))
        assert worst < 0.05

    def test_first_spike_time_matches_analytic_crossing(self):
        params = LifParams(tau_m=10.0, c_m=250.0, t_ref=2.0)
        dt = 0.1
        current = 500.0  # u_inf = -50, crosses -55
        u_inf = params.u_rest + current * params.tau_m / params.c_m
        t_star = params.tau_m * math.log(
            (u_inf - params.u_rest) / (u_inf - params.u_th)
        )
        _, spikes = integrate(params, params.u_rest, current, 50.0, dt)
        assert spikes, "suprathreshold current must fire"
        assert abs(spikes[0] - t_star) <= dt


class TestParamValidation:
    def test_ordering_invariant(self):
        with pytest.raises(ValueError):
            LifParams(u_reset=-50.0)  # u_reset > u_rest
        with pytest.raises(ValueError):
            LifParams(u_th=-70.0)  # u_th == u_rest

    def test_positive_constants(self):
        with pytest.raises(ValueError):
            LifParams(tau_m=0.0)
        with pytest.raises(ValueError):
            LifParams(c_m=-1.0)
        with pytest.raises(ValueError):
            LifParams(t_ref=-0.1)
        with pytest.raises(ValueError):
            LifParams(weight_scale_kappa=0.0)
