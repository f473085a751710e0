import math

import numpy as np
import pytest

from genfreq.curve_geometry import (
    CurveState,
    arc_acceleration,
    arc_speed,
    curvature,
    d2x_ds2,
    frame_curvature,
    frenet,
    unit_tangent,
)
from genfreq.exceptions import DegenerateCurveError, DimensionMismatchError
from genfreq.ga_core import apply_orthogonal, inner


def circle_state(radius: float, omega: float, t: float) -> CurveState:
    c, s = math.cos(omega * t), math.sin(omega * t)
    return CurveState(
        xdot=[-radius * omega * s, radius * omega * c],
        xddot=[-radius * omega**2 * c, -radius * omega**2 * s],
    )


@pytest.mark.parametrize("radius", [0.1, 1.0, 12000.0])
def test_circle_curvature_is_inverse_radius(radius):
    for t in np.linspace(0.0, 1.0, 7):
        state = circle_state(radius, 2.0 * math.pi * 3.0, t)
        assert curvature(state) == pytest.approx(1.0 / radius, rel=1e-12)


def test_straight_line_has_zero_curvature():
    state = CurveState(xdot=[1.0, 2.0, 3.0], xddot=[2.0, 4.0, 6.0])
    assert curvature(state) == 0.0


def test_arc_speed_and_acceleration():
    state = CurveState(xdot=[3.0, 4.0], xddot=[3.0, 0.0])
    assert arc_speed(state.xdot) == 5.0
    assert arc_acceleration(state) == pytest.approx(9.0 / 5.0)


def test_unit_tangent_is_unit():
    np.testing.assert_allclose(unit_tangent([3.0, 4.0]), [0.6, 0.8])


def test_arc_length_frame_is_normal_to_tangent(rng):
    state = CurveState(xdot=rng.normal(size=4), xddot=rng.normal(size=4))
    frame = frenet(state)
    assert inner(frame.unit_tangent, frame.d2x_ds2) == pytest.approx(0.0, abs=1e-12)
    assert np.linalg.norm(frame.d2x_ds2) == pytest.approx(frame.curvature, rel=1e-12)
    assert frame_curvature(frame) == pytest.approx(frame.curvature, rel=1e-12)


def test_curvature_is_coordinate_invariant(rng, orthogonal):
    for _ in range(100):
        dim = int(rng.integers(2, 7))
        q = orthogonal(dim)
        state = CurveState(xdot=rng.normal(size=dim), xddot=rng.normal(size=dim))
        rotated = CurveState(xdot=apply_orthogonal(state.xdot, q), xddot=apply_orthogonal(state.xddot, q))
        assert curvature(rotated) == pytest.approx(curvature(state), rel=1e-10)


@pytest.mark.parametrize("a", [1e-3, 0.5, 3.0, 1e3])
def test_curvature_ignores_time_scaling(rng, a):
    for _ in range(50):
        dim = int(rng.integers(2, 7))
        state = CurveState(xdot=rng.normal(size=dim), xddot=rng.normal(size=dim))
        scaled = CurveState(xdot=a * state.xdot, xddot=a**2 * state.xddot)
        assert curvature(scaled) == pytest.approx(curvature(state), rel=1e-10)
        np.testing.assert_allclose(d2x_ds2(scaled), d2x_ds2(state), rtol=1e-10, atol=1e-12)


def test_plane_curvature_times_speed_is_tangent_turn_rate():
    # ellipse (a cos t, b sin t); its tangent angle turns at a b / |x'|^2
    a, b = 3.0, 0.7
    for t in np.linspace(0.0, 2.0 * math.pi, 37):
        state = CurveState(
            xdot=[-a * math.sin(t), b * math.cos(t)],
            xddot=[-a * math.cos(t), -b * math.sin(t)],
        )
        turn_rate = a * b / (a**2 * math.sin(t) ** 2 + b**2 * math.cos(t) ** 2)
        assert curvature(state) * arc_speed(state.xdot) == pytest.approx(turn_rate, abs=1e-8)


@pytest.mark.parametrize("radius", [0.1, 1.0, 12000.0])
def test_circle_normal_points_to_the_centre(radius):
    omega = 2.0 * math.pi * 3.0
    for t in np.linspace(0.0, 1.0, 7):
        position = radius * np.array([math.cos(omega * t), math.sin(omega * t)])
        normal = d2x_ds2(circle_state(radius, omega, t))
        assert np.linalg.norm(normal) == pytest.approx(1.0 / radius, rel=1e-12)
        np.testing.assert_allclose(normal, -position / radius**2, rtol=0, atol=1e-12 / radius)


def test_zero_speed_is_degenerate():
    state = CurveState(xdot=[0.0, 0.0], xddot=[1.0, 0.0])
    with pytest.raises(DegenerateCurveError):
        curvature(state)
    with pytest.raises(DegenerateCurveError):
        d2x_ds2(state)
    with pytest.raises(DegenerateCurveError):
        unit_tangent([0.0, 0.0])


def test_mismatched_state_dims():
    with pytest.raises(DimensionMismatchError):
        CurveState(xdot=[1.0, 0.0], xddot=[1.0, 0.0, 0.0])
