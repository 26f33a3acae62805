import numpy as np
import pytest

from actap.chain import ChainSpec
from actap.errors import DimensionError, DomainError, IntegratorError
from actap.evolution import (
    default_steps,
    propagate,
    sample_indices,
    site_state,
    transfer_fidelity_vs_tmax,
)
import actap.evolution as evolution
from actap.pulses import PulseSchedule

from conftest import rk_oracle


def ideal(n=5, w=10.0, t=70.0):
    return ChainSpec.alternating(n, w), PulseSchedule.ideal(n, w, t)


@pytest.fixture(scope="module")
def headline():
    chain, sched = ideal()
    return propagate(chain, sched, steps=14000)


def test_zero_couplings_freeze_state():
    chain = ChainSpec.alternating(5, 1.0)
    sched = PulseSchedule.floored(5, 10.0, (0.0, 0.0), (0.0, 1.0)).with_scales([1, 0, 1, 0])
    trace = propagate(chain, sched, steps=200)
    np.testing.assert_allclose(trace.populations, np.tile([1, 0, 0, 0, 0], (trace.times.size, 1)), atol=1e-15)


def test_headline_transfer(headline):
    assert headline.transfer_fidelity >= 0.999
    assert headline.populations[:, [1, 3]].max() <= 1e-2
    k = np.argmax(headline.populations[:, 2])
    assert headline.populations[k, 2] == pytest.approx(1 / 3, abs=0.02)
    assert headline.times[k] == pytest.approx(35.0, abs=0.05 * 70)


def test_matches_runge_kutta_oracle(headline):
    t_eval = headline.times[::50]
    oracle = rk_oracle(5, 10.0, 70.0, t_eval)
    np.testing.assert_allclose(headline.populations[::50], oracle, atol=1e-7)


def test_diabatic_run_loses_fidelity():
    chain, sched = ideal(w=1.0, t=7.0)
    trace = propagate(chain, sched, steps=400)
    # DOP853 oracle at rtol 1e-11: 0.03665155
    assert trace.transfer_fidelity == pytest.approx(0.03665155, abs=1e-6)
    assert trace.transfer_fidelity < 0.9


def test_trace_invariants(headline):
    np.testing.assert_allclose(headline.populations.sum(axis=1), 1.0, atol=1e-9)
    assert headline.populations.min() >= 0 and headline.populations.max() <= 1 + 1e-12
    assert headline.max_norm_drift <= 1e-9
    assert headline.times[0] == 0 and headline.times[-1] == 70.0
    assert headline.times.size <= 2000
    assert headline.transfer_fidelity == pytest.approx(headline.populations[-1, -1], abs=1e-15)


def test_dark_state_following(headline):
    # A_peak = 0.0104 here
    assert np.nanmin(headline.dark_state_fidelity) >= 0.99


def test_mirror_symmetry(headline):
    chain, sched = ideal()
    back = propagate(chain, sched.time_reversed(), initial=site_state(5, 5), steps=14000)
    assert back.populations[-1, 0] == pytest.approx(headline.transfer_fidelity, abs=1e-9)


def test_adiabatic_limit_monotone():
    chain, sched = ideal(w=10.0)
    errors = [1 - f for _, f in transfer_fidelity_vs_tmax(chain, sched, [10.0, 30.0, 100.0])]
    assert errors[0] > errors[1] > errors[2]


def test_fidelity_vs_tmax_examples():
    chain, sched = ideal(w=10.0)
    (_, f_short), (_, f_long) = transfer_fidelity_vs_tmax(chain, sched, [7.0, 70.0])
    assert f_long > f_short
    (_, a), (_, b) = transfer_fidelity_vs_tmax(chain, sched, [7.0, 7.0])
    assert a == b
    with pytest.raises(DomainError):
        transfer_fidelity_vs_tmax(chain, sched, [])


def test_bad_inputs():
    chain, sched = ideal()
    with pytest.raises(DomainError):
        propagate(chain, sched, steps=99)
    with pytest.raises(DomainError):
        propagate(chain, sched, initial=np.ones(5), steps=200)
    with pytest.raises(DimensionError):
        propagate(chain, sched, initial=np.eye(3)[0], steps=200)
    with pytest.raises(DimensionError):
        propagate(ChainSpec.alternating(7, 10.0), sched, steps=200)
    with pytest.raises(DomainError):
        propagate(ChainSpec.alternating(5, 5.0), sched, steps=200)


def test_norm_guard(monkeypatch):
    chain, sched = ideal(w=1.0, t=1.0)
    real = evolution._step_propagators
    monkeypatch.setattr(evolution, "_step_propagators", lambda *a: 1.001 * real(*a))
    with pytest.raises(IntegratorError):
        propagate(chain, sched, steps=200)


def test_grid_helpers():
    keep = sample_indices(14000, 1001)
    assert keep[0] == 0 and keep[-1] == 14000 and keep.size == 1001
    assert sample_indices(150, 5000).size == 151
    assert sample_indices(10**6, 10**6).size == 2000
    assert default_steps(PulseSchedule.ideal(5, 10.0, 70.0)) == 14000
    assert default_steps(PulseSchedule.ideal(5, 0.01, 1.0)) == 100
