import math

import numpy as np
import pytest

from genfreq import signals
from genfreq.exceptions import ParameterError
from genfreq.frequency import generalized_frequency
from genfreq.transforms import clarke, inverse_park, park

from tests.conftest import OMEGA0, V_EX


def test_evaluate_scalar_and_array_shapes(example2):
    v, vdot = example2.evaluate(0.01)
    assert v.shape == (3,) and vdot.shape == (3,)
    v, vdot = example2.evaluate(np.linspace(0.0, 0.01, 5))
    assert v.shape == (5, 3)


def test_derivatives_match_finite_differences(example1, example2, example3_dq):
    h = 1e-7
    fault = signals.fault_scenario(V_EX, OMEGA0)
    stationary = signals.inverse_park(example3_dq, OMEGA0)
    for sig, t in [(example1, 0.013), (example2, 0.021), (stationary, 0.7), (fault, 0.25)]:
        numeric = (sig.value(t + h) - sig.value(t - h)) / (2 * h)
        scale = np.max(np.abs(sig.derivative(t)))
        np.testing.assert_allclose(sig.derivative(t), numeric, rtol=0, atol=1e-5 * scale)


def test_sample_count_and_time_base(example1):
    sampled = signals.sample(example1, 10_000.0, 0.0, 0.1)
    assert sampled.n_samples == 1000
    assert sampled.channels == ("e1", "e2")
    assert sampled.t[-1] == pytest.approx(0.0999)
    np.testing.assert_array_equal(sampled.samples, example1.value(sampled.t))


def test_sampling_needs_two_samples(example1):
    with pytest.raises(ParameterError):
        signals.sample(example1, 10.0, 0.0, 0.1)
    with pytest.raises(ParameterError):
        signals.sample(example1, 10_000.0, 0.1, 0.0)


def test_noise_is_seeded(example2):
    a = signals.sample(example2, 1000.0, 0.0, 0.1, noise_std=5.0, seed=7)
    b = signals.sample(example2, 1000.0, 0.0, 0.1, noise_std=5.0, seed=7)
    c = signals.sample(example2, 1000.0, 0.0, 0.1, noise_std=5.0, seed=8)
    np.testing.assert_array_equal(a.samples, b.samples)
    assert not np.array_equal(a.samples, c.samples)
    with pytest.raises(ParameterError):
        signals.sample(example2, 1000.0, 0.0, 0.1, noise_std=-1.0)


def test_dc_signal_is_constant():
    sampled = signals.sample(signals.exponential_dc(100.0), 1000.0, 0.0, 1.0)
    assert sampled.n_samples == 1000
    assert np.all(sampled.samples == 100.0)


def test_stationary_view_keeps_frequency(example3_dq):
    stationary = signals.inverse_park(example3_dq, OMEGA0, theta0=0.4)
    assert stationary.channels == ("alpha", "beta")
    for t in [0.0, 0.3, 1.7]:
        a = generalized_frequency(*example3_dq.evaluate(t))
        b = generalized_frequency(*stationary.evaluate(t))
        assert b.rho == pytest.approx(a.rho, rel=1e-10, abs=1e-12)
        assert b.omega_mag == pytest.approx(a.omega_mag, rel=1e-12)


def test_fault_scenario_matches_balanced_outside_the_fault(example2):
    fault = signals.fault_scenario(V_EX, OMEGA0, t_fault=0.2, t_clear=0.3)
    before = np.linspace(0.0, 0.199, 50)
    after = np.linspace(0.302, 0.5, 50)
    np.testing.assert_array_equal(fault.value(before), example2.value(before))
    np.testing.assert_allclose(fault.value(after), example2.value(after), rtol=0, atol=1e-9 * V_EX)
    during = fault.value(np.array([0.25]))[0]
    assert not np.allclose(during, example2.value(0.25))


@pytest.mark.parametrize(
    "kwargs",
    [
        {"sag": 1.0},
        {"t_fault": 0.3, "t_clear": 0.2},
        {"harmonic3": -0.1},
        {"ramp": 0.5},
    ],
)
def test_fault_scenario_rejects_bad_parameters(kwargs):
    with pytest.raises(ParameterError):
        signals.fault_scenario(V_EX, OMEGA0, **kwargs)


def test_capacitor_current_is_c_times_derivative(example1):
    C = 2e-6
    current = signals.sample_capacitor_current(example1, C, 10_000.0, 0.0, 0.01)
    assert current.channels == ("i_e1", "i_e2")
    np.testing.assert_allclose(current.samples, C * example1.derivative(current.t), rtol=1e-15)


def test_clarke_park_of_balanced_set(example2):
    t = np.linspace(0.0, 0.05, 101)
    alpha, beta = clarke(example2.value(t))
    np.testing.assert_allclose(np.hypot(alpha, beta), V_EX, rtol=1e-12)
    d, q = park(alpha, beta, OMEGA0 * t - math.pi / 2)
    np.testing.assert_allclose(d, V_EX, rtol=1e-12)
    np.testing.assert_allclose(q, 0.0, atol=1e-8 * V_EX)
    a2, b2 = inverse_park(d, q, OMEGA0 * t - math.pi / 2)
    np.testing.assert_allclose(a2, alpha, atol=1e-8 * V_EX)
    np.testing.assert_allclose(b2, beta, atol=1e-8 * V_EX)


def test_balanced_phases_sum_to_zero(example2):
    t = np.linspace(0.0, 1.0, 10_001)
    assert np.max(np.abs(example2.value(t).sum(axis=1))) <= 1e-9 * V_EX
    assert np.max(np.abs(example2.derivative(t).sum(axis=1))) <= 1e-9 * OMEGA0 * V_EX


@pytest.mark.parametrize("edge", [0.2, 0.201, 0.3, 0.301])
def test_fault_ramps_are_continuously_differentiable(edge):
    fault = signals.fault_scenario(V_EX, OMEGA0, t_fault=0.2, t_clear=0.3, ramp=1e-3)
    eps = 1e-12
    around = np.array([edge - eps, edge + eps])
    value, deriv = fault.evaluate(around)
    assert np.max(np.abs(value[1] - value[0])) <= 1e-6 * V_EX
    assert np.max(np.abs(deriv[1] - deriv[0])) <= 1e-6 * OMEGA0 * V_EX


def test_noise_is_zero_mean_with_the_requested_spread(example2):
    sigma = 0.01 * V_EX
    clean = signals.sample(example2, 10_000.0, 0.0, 1.0)
    noisy = signals.sample(example2, 10_000.0, 0.0, 1.0, noise_std=sigma, seed=5)
    noise = (noisy.samples - clean.samples).ravel()
    assert abs(np.mean(noise)) <= 3.0 * sigma / math.sqrt(noise.size)
    assert np.std(noise) == pytest.approx(sigma, rel=0.05)
