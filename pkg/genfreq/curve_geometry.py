"""
Differential geometry of time-parameterized curves.

Everything is computed from the first and second time derivatives of the
curve; arc-length quantities follow from the chain rule, so no finite
differencing happens here.
"""

from dataclasses import dataclass
from typing import Optional

from genfreq.exceptions import DegenerateCurveError, DimensionMismatchError
from genfreq.ga_core import VecN, as_vec, bivector_magnitude, inner, magnitude, wedge

SPEED_EPS = 1e-12


@dataclass(frozen=True, eq=False)
class CurveState:
    xdot: VecN
    xddot: VecN

    def __post_init__(self):
        xdot = as_vec(self.xdot)
        xddot = as_vec(self.xddot)
        if xdot.size != xddot.size:
            raise DimensionMismatchError(xdot.size, xddot.size)
        object.__setattr__(self, "xdot", xdot)
        object.__setattr__(self, "xddot", xddot)

    @property
    def dim(self) -> int:
        return self.xdot.size


@dataclass(frozen=True, eq=False)
class FrenetData:
    speed: float
    unit_tangent: VecN
    d2x_ds2: VecN
    curvature: float


def _require_speed(xdot: VecN, xddot: Optional[VecN] = None) -> float:
    speed = magnitude(xdot)
    scale = 1.0 if xddot is None else 1.0 + magnitude(xddot)
    if speed < SPEED_EPS * scale:
        raise DegenerateCurveError(f"arc speed {speed:.3e} is degenerate")
    return speed


def arc_speed(xdot: VecN) -> float:
    """s' = |x'|"""
    return magnitude(xdot)


def arc_acceleration(state: CurveState) -> float:
    """s'' = (x' · x'') / s'"""
    speed = _require_speed(state.xdot, state.xddot)
    return inner(state.xdot, state.xddot) / speed


def unit_tangent(xdot: VecN) -> VecN:
    xdot = as_vec(xdot)
    speed = _require_speed(xdot)
    return as_vec(xdot / speed)


def d2x_ds2(state: CurveState) -> VecN:
    speed = _require_speed(state.xdot, state.xddot)
    s2 = inner(state.xdot, state.xddot) / speed
    return as_vec(state.xddot / speed**2 - (s2 * state.xdot) / speed**3)


def curvature(state: CurveState) -> float:
    """κ = |x' ∧ x''| / s'^3"""
    speed = _require_speed(state.xdot, state.xddot)
    return bivector_magnitude(wedge(state.xdot, state.xddot)) / speed**3


def frenet(state: CurveState) -> FrenetData:
    speed = _require_speed(state.xdot, state.xddot)
    tangent = as_vec(state.xdot / speed)
    normal_rate = d2x_ds2(state)
    return FrenetData(
        speed=speed,
        unit_tangent=tangent,
        d2x_ds2=normal_rate,
        curvature=curvature(state),
    )


def frame_curvature(frame: FrenetData) -> float:
    """κ from the arc-length frame, |dx/ds ∧ d²x/ds²|"""
    return bivector_magnitude(wedge(frame.unit_tangent, frame.d2x_ds2))
