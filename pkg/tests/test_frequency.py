import math

import numpy as np
import pytest

from genfreq.curve_geometry import CurveState, arc_speed, curvature
from genfreq.exceptions import DegenerateCurveError, DimensionMismatchError, ParameterError
from genfreq.frequency import (
    current_frequency,
    frequency_from_power,
    frequency_series,
    generalized_frequency,
    omega_bivector,
    omega_mag,
    plane_angle,
    power_frequency_series,
    power_pair,
    rho,
    rotation_plane,
)
from genfreq.ga_core import Bivector, apply_orthogonal, inner

from tests.conftest import OMEGA0, V_EX


def test_example1_is_pure_rotation(example1):
    t = np.linspace(0.0, 0.1, 1000)
    values, derivatives = example1.evaluate(t)
    for v, vdot in zip(values, derivatives):
        freq = generalized_frequency(v, vdot)
        assert abs(freq.rho) <= 1e-10 * OMEGA0
        assert freq.omega_mag == pytest.approx(OMEGA0, rel=1e-10)
        assert freq.signed_omega == pytest.approx(OMEGA0, rel=1e-10)


def test_example1_hz():
    freq = generalized_frequency([V_EX, 0.0], [0.0, OMEGA0 * V_EX])
    assert freq.omega_hz == pytest.approx(60.0, rel=1e-12)


def test_negative_rotation_keeps_its_sign():
    freq = generalized_frequency([1.0, 0.0], [0.0, -5.0])
    assert freq.signed_omega == pytest.approx(-5.0)
    assert freq.omega_mag == pytest.approx(5.0)


def test_example2_balanced_three_phase(example2):
    t = np.linspace(0.0, 0.1, 200)
    values, derivatives = example2.evaluate(t)
    for v, vdot in zip(values, derivatives):
        assert inner(v, v) == pytest.approx(1.5 * V_EX**2, rel=1e-12)
        freq = generalized_frequency(v, vdot)
        assert freq.omega_mag == pytest.approx(OMEGA0, rel=1e-10)
        assert abs(freq.rho) <= 1e-10 * OMEGA0
        assert freq.signed_omega is None


def test_example3_matches_dq_closed_forms(example3_dq):
    scale, wm = 1e3, 2.0 * math.pi
    t = np.linspace(0.0, 5.0, 501)
    e = np.exp(-t)
    vd = scale * (10.0 + e * np.cos(wm * t))
    vq = scale * e * np.sin(wm * t)
    vd_dot = scale * e * (-np.cos(wm * t) - wm * np.sin(wm * t))
    vq_dot = scale * e * (-np.sin(wm * t) + wm * np.cos(wm * t))
    v2 = vd**2 + vq**2
    rho_want = (vd * vd_dot + vq * vq_dot) / v2
    omega_want = OMEGA0 + (vq_dot * vd - vd_dot * vq) / v2

    values, derivatives = example3_dq.evaluate(t)
    for k in range(t.size):
        freq = generalized_frequency(values[k], derivatives[k])
        assert freq.rho == pytest.approx(rho_want[k], rel=1e-10, abs=1e-10 * OMEGA0)
        assert freq.omega_mag == pytest.approx(omega_want[k], rel=1e-10)


def test_example3_spot_value(example3_dq):
    v, vdot = example3_dq.evaluate(0.0)
    freq = generalized_frequency(v, vdot)
    assert freq.omega_mag == pytest.approx(OMEGA0 + 2.0 * math.pi / 11.0, rel=1e-12)
    assert freq.rho == pytest.approx(-1.0 / 11.0, rel=1e-12)


def test_dim_one_is_pure_amplitude_rate():
    for v, vdot in [(100.0, -3.0), (-2.5, 7.0), (1e-3, 1e3)]:
        freq = generalized_frequency([v], [vdot])
        assert freq.omega_mag == 0.0
        assert freq.rho == pytest.approx(vdot / v, rel=1e-12)


def test_resistive_duality(rng):
    R = 7.3
    for _ in range(50):
        i, idot = rng.normal(size=3), rng.normal(size=3)
        from_v = generalized_frequency(R * i, R * idot)
        from_i = current_frequency(i, idot)
        assert from_v.rho == pytest.approx(from_i.rho, rel=1e-12, abs=1e-12)
        np.testing.assert_allclose(from_v.omega.coeffs, from_i.omega.coeffs, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("capacitance", [1e-6, 1.0])
def test_power_form_matches_direct_form(rng, example2, capacitance):
    cases = [tuple(rng.normal(size=(2, 4))) for _ in range(50)]
    cases += [example2.evaluate(t) for t in np.linspace(0.0, 0.02, 20)]
    for v, vdot in cases:
        direct = generalized_frequency(v, vdot)
        powered = frequency_from_power(v, capacitance * np.asarray(vdot), capacitance)
        scale = max(1.0, direct.omega_mag, abs(direct.rho))
        assert abs(powered.rho - direct.rho) <= 1e-14 * scale
        np.testing.assert_allclose(powered.omega.coeffs, direct.omega.coeffs, rtol=0, atol=1e-14 * scale)


def test_power_pair_orientation():
    pair = power_pair([1.0, 0.0], [0.0, 1.0])
    assert pair.p == 0.0
    assert pair.q.coeff(1, 2) == -1.0


def test_power_form_rejects_bad_capacitance():
    with pytest.raises(ParameterError):
        frequency_from_power([1.0, 0.0], [0.0, 1.0], 0.0)


def test_frequency_is_coordinate_invariant(rng, orthogonal):
    for _ in range(100):
        dim = int(rng.integers(2, 7))
        q = orthogonal(dim)
        v, vdot = rng.normal(size=dim), rng.normal(size=dim)
        base = generalized_frequency(v, vdot)
        rotated = generalized_frequency(apply_orthogonal(v, q), apply_orthogonal(vdot, q))
        assert rotated.rho == pytest.approx(base.rho, rel=1e-10, abs=1e-12)
        assert rotated.omega_mag == pytest.approx(base.omega_mag, rel=1e-10)


@pytest.mark.parametrize("scale", [1e-3, 0.5, 7.0, 1e4])
def test_frequency_is_amplitude_invariant(rng, scale):
    for _ in range(50):
        dim = int(rng.integers(1, 7))
        v, vdot = rng.normal(size=dim), rng.normal(size=dim)
        base = generalized_frequency(v, vdot)
        scaled = generalized_frequency(scale * v, scale * vdot)
        assert scaled.rho == pytest.approx(base.rho, rel=1e-12, abs=1e-12)
        assert scaled.omega_mag == pytest.approx(base.omega_mag, rel=1e-12, abs=1e-12)
        np.testing.assert_allclose(scaled.omega.coeffs, base.omega.coeffs, rtol=1e-12, atol=1e-12)


def test_rate_splits_into_amplitude_and_rotation(rng):
    for _ in range(100):
        dim = int(rng.integers(1, 7))
        v, vdot = rng.normal(size=dim), rng.normal(size=dim)
        freq = generalized_frequency(v, vdot)
        ratio = inner(vdot, vdot) / inner(v, v)
        assert freq.rho**2 + freq.omega_mag**2 == pytest.approx(ratio, rel=1e-10)


def test_frequency_is_amplitude_times_curvature(rng):
    for _ in range(100):
        dim = int(rng.integers(2, 7))
        v, vdot = rng.normal(size=dim), rng.normal(size=dim)
        freq = generalized_frequency(v, vdot)
        assert arc_speed(v) * curvature(CurveState(v, vdot)) == pytest.approx(freq.omega_mag, rel=1e-10)


def test_components_agree_with_combined_result(rng):
    v, vdot = rng.normal(size=4), rng.normal(size=4)
    freq = generalized_frequency(v, vdot)
    assert rho(v, vdot) == freq.rho
    assert omega_bivector(v, vdot) == freq.omega
    assert omega_mag(v, vdot) == freq.omega_mag
    assert freq.as_multivector().scalar == freq.rho


def test_zero_signal_is_degenerate():
    with pytest.raises(DegenerateCurveError):
        generalized_frequency([0.0, 0.0, 0.0], [1.0, 0.0, 0.0])


def test_mismatched_dims():
    with pytest.raises(DimensionMismatchError):
        generalized_frequency([1.0, 0.0], [1.0, 0.0, 0.0])


def test_rotation_plane_and_angle():
    xy = Bivector.from_dict(3, {(1, 2): 5.0})
    xz = Bivector.from_dict(3, {(1, 3): -2.0})
    np.testing.assert_allclose(rotation_plane(xy).coeffs, [1.0, 0.0, 0.0])
    assert plane_angle(xy, -xy) == 0.0
    assert plane_angle(xy, xz) == pytest.approx(math.pi / 2)
    with pytest.raises(DegenerateCurveError):
        rotation_plane(Bivector.zero(3))


def test_series_match_pointwise_and_mark_invalid_rows(rng):
    v, vdot = rng.normal(size=(10, 3)), rng.normal(size=(10, 3))
    valid = np.ones(10, dtype=bool)
    valid[3] = False
    rho_k, coeffs, mags = frequency_series(v, vdot, valid)
    assert np.isnan(rho_k[3]) and np.isnan(mags[3])
    freq = generalized_frequency(v[5], vdot[5])
    assert rho_k[5] == pytest.approx(freq.rho, rel=1e-14)
    np.testing.assert_allclose(coeffs[5], freq.omega.coeffs, rtol=1e-14)

    p_rho, p_coeffs, _ = power_frequency_series(v, 2.0 * vdot, 2.0)
    np.testing.assert_allclose(p_rho, frequency_series(v, vdot)[0], rtol=1e-12)
    np.testing.assert_allclose(p_coeffs, frequency_series(v, vdot)[1], rtol=1e-12, atol=1e-12)
