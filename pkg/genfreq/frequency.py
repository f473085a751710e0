"""
Generalized frequency of a signal vector.

For a signal v with time derivative v' the generalized frequency is the
pair

    rho   = (v · v') / |v|^2         (rate of change of log |v|)
    Omega = (v ∧ v') / |v|^2         (rotation rate, a bivector)

and omega = |Omega|. If v is read as the tangent of the flux curve, |v| is
the curve's arc speed and omega = |v| κ. Nothing here assumes sinusoids,
a number of phases or a coordinate system.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from genfreq.exceptions import DegenerateCurveError, DimensionMismatchError, ParameterError
from genfreq.ga_core import (
    Bivector,
    Multivector,
    VecN,
    as_vec,
    bivector_magnitude,
    inner,
    inner_batch,
    wedge,
    wedge_batch,
)


@dataclass(frozen=True)
class GeneralizedFrequency:
    rho: float
    omega: Bivector
    omega_mag: float

    @property
    def dim(self) -> int:
        return self.omega.dim

    @property
    def signed_omega(self) -> Optional[float]:
        """b_12 for planar signals, so negative-sequence rotation keeps its sign."""
        if self.omega.dim != 2:
            return None
        return float(self.omega.coeffs[0])

    @property
    def omega_hz(self) -> float:
        return self.omega_mag / (2.0 * np.pi)

    def as_multivector(self) -> Multivector:
        return Multivector(scalar=self.rho, bivector=self.omega)


@dataclass(frozen=True)
class PowerPair:
    p: float
    q: Bivector


def _checked(v: VecN, vdot: VecN) -> Tuple[VecN, VecN, float]:
    v = as_vec(v)
    vdot = as_vec(vdot)
    if v.size != vdot.size:
        raise DimensionMismatchError(v.size, vdot.size)
    vv = inner(v, v)
    if not vv > 0.0:
        raise DegenerateCurveError("signal magnitude is zero, frequency is undefined")
    return v, vdot, vv


def rho(v: VecN, vdot: VecN) -> float:
    v, vdot, vv = _checked(v, vdot)
    return inner(v, vdot) / vv


def omega_bivector(v: VecN, vdot: VecN) -> Bivector:
    v, vdot, vv = _checked(v, vdot)
    b = wedge(v, vdot)
    return Bivector(b.dim, b.coeffs / vv)


def omega_mag(v: VecN, vdot: VecN) -> float:
    return bivector_magnitude(omega_bivector(v, vdot))


def generalized_frequency(v: VecN, vdot: VecN) -> GeneralizedFrequency:
    v, vdot, vv = _checked(v, vdot)
    omega = Bivector(v.size, wedge(v, vdot).coeffs / vv)
    return GeneralizedFrequency(
        rho=inner(v, vdot) / vv,
        omega=omega,
        omega_mag=bivector_magnitude(omega),
    )


def current_frequency(i: VecN, idot: VecN) -> GeneralizedFrequency:
    """Same construction on the current, read as the tangent of the charge curve."""
    return generalized_frequency(i, idot)


def power_pair(v: VecN, i: VecN) -> PowerPair:
    """p = v · i and Q = i ∧ v"""
    return PowerPair(p=inner(v, i), q=wedge(i, v))


def frequency_from_power(v: VecN, i: VecN, capacitance: float) -> GeneralizedFrequency:
    """
    Frequency of the voltage across a capacitance from v and i = C v'.

    eta = (p - Q) / (C v^2), with p = v · i and Q = i ∧ v. No time
    derivative of the measurements is required.
    """
    if not capacitance > 0.0:
        raise ParameterError(f"capacitance must be positive, got {capacitance}")
    v, i, vv = _checked(v, i)
    power = power_pair(v, i)
    scale = capacitance * vv
    omega = Bivector(v.size, -power.q.coeffs / scale)
    return GeneralizedFrequency(
        rho=power.p / scale,
        omega=omega,
        omega_mag=bivector_magnitude(omega),
    )


def rotation_plane(omega: Bivector) -> Bivector:
    """Unit bivector of the rotation plane."""
    mag = bivector_magnitude(omega)
    if not mag > 0.0:
        raise DegenerateCurveError("zero bivector has no rotation plane")
    return Bivector(omega.dim, omega.coeffs / mag)


def plane_angle(a: Bivector, b: Bivector) -> float:
    """Angle in [0, pi/2] between the planes of two simple bivectors, orientation ignored."""
    if a.dim != b.dim:
        raise DimensionMismatchError(a.dim, b.dim)
    ua = rotation_plane(a)
    ub = rotation_plane(b)
    cos = abs(float(np.sum(ua.coeffs * ub.coeffs)))
    return float(np.arccos(min(cos, 1.0)))


def frequency_series(
    v: np.ndarray, vdot: np.ndarray, valid: Optional[np.ndarray] = None
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Row-wise generalized frequency over ``(N, dim)`` arrays.

    Returns ``(rho, omega_coeffs, omega_mag)``; rows where ``valid`` is
    False or |v| is zero come back as NaN.
    """
    if v.shape != vdot.shape:
        raise DimensionMismatchError(v.shape[-1], vdot.shape[-1])
    vv = inner_batch(v, v)
    ok = vv > 0.0
    if valid is not None:
        ok &= valid
    denom = np.where(ok, vv, np.nan)
    rho_k = inner_batch(v, vdot) / denom
    coeffs = wedge_batch(v, vdot) / denom[:, None]
    return rho_k, coeffs, np.sqrt(np.sum(coeffs * coeffs, axis=-1))


def power_frequency_series(
    v: np.ndarray, i: np.ndarray, capacitance: float, valid: Optional[np.ndarray] = None
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    if not capacitance > 0.0:
        raise ParameterError(f"capacitance must be positive, got {capacitance}")
    if v.shape != i.shape:
        raise DimensionMismatchError(v.shape[-1], i.shape[-1])
    vv = inner_batch(v, v)
    ok = vv > 0.0
    if valid is not None:
        ok &= valid
    scale = capacitance * np.where(ok, vv, np.nan)
    rho_k = inner_batch(v, i) / scale
    coeffs = -wedge_batch(i, v) / scale[:, None]
    return rho_k, coeffs, np.sqrt(np.sum(coeffs * coeffs, axis=-1))
