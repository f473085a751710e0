"""
Frequency estimation from sampled waveforms.

``estimate_geometric`` applies the generalized frequency to every sample
using numerically differentiated voltages; ``estimate_from_power`` does
the same from voltage and capacitor current without differentiating;
``srf_pll`` is the synchronous-reference-frame PLL used as a baseline.
"""

import math
from typing import Optional, Tuple

import numpy as np
import structlog
from scipy.signal import lfilter

from genfreq.exceptions import (
    DegenerateCurveError,
    DimensionMismatchError,
    ParameterError,
    TimeBaseError,
)
from genfreq.frequency import frequency_series, power_frequency_series
from genfreq.ga_core import inner_batch
from genfreq.transforms import clarke, park
from models.estimator_model import ComparisonReport, EstimatorConfig, PllConfig
from models.signal_model import SampledSignal
from models.trace_model import FrequencyTrace

logger = structlog.get_logger()

SETTLE_BAND = 0.01
SETTLE_TAIL = 0.1
TIME_TOL = 1e-12


def differentiate(sig: SampledSignal, scheme: str = "central") -> SampledSignal:
    """Second-order central differences; the scheme picks the end-point stencil."""
    if sig.n_samples < 3:
        raise ParameterError(f"differentiation needs at least 3 samples, got {sig.n_samples}")
    if scheme == "central":
        edge_order = 2
    elif scheme == "one_sided_start_end":
        edge_order = 1
    else:
        raise ParameterError(f"unknown differentiation scheme {scheme!r}")
    derivative = np.gradient(sig.samples, sig.dt, axis=0, edge_order=edge_order)
    return sig.with_samples(derivative)


def lowpass(series: np.ndarray, f_s: float, tau: float) -> np.ndarray:
    """
    Discrete first-order filter along the first axis:
    y[0] = u[0], y[k] = y[k-1] + alpha (u[k] - y[k-1]), alpha = dt / (tau + dt).
    """
    if not f_s > 0:
        raise ParameterError(f"sample rate must be positive, got {f_s}")
    if tau < 0:
        raise ParameterError(f"time constant must be non-negative, got {tau}")
    u = np.array(series, dtype=np.float64)
    if tau == 0 or u.size == 0:
        return u
    dt = 1.0 / f_s
    alpha = dt / (tau + dt)
    y, _ = lfilter([alpha], [1.0, alpha - 1.0], u, axis=0, zi=(1.0 - alpha) * u[:1])
    return y


def _hold(x: np.ndarray, ok: np.ndarray) -> np.ndarray:
    """Replace rows where ``ok`` is False by the last good row (first good row at the start)."""
    if ok.all():
        return x
    idx = np.where(ok, np.arange(ok.size), -1)
    idx = np.maximum.accumulate(idx)
    idx[idx < 0] = int(np.argmax(ok))
    return x[idx]


def _magnitude_mask(v: np.ndarray, cfg: EstimatorConfig) -> np.ndarray:
    mag = np.sqrt(inner_batch(v, v))
    threshold = cfg.mask_threshold if cfg.mask_threshold is not None else cfg.mask_ratio * mag.max()
    ok = mag > threshold
    if not ok.any():
        raise DegenerateCurveError(f"every sample has |v| <= {threshold:.3e}")
    return ok


def _smoothed_trace(
    method: str,
    sig: SampledSignal,
    rho: np.ndarray,
    coeffs: np.ndarray,
    ok: np.ndarray,
    valid: np.ndarray,
    cfg: EstimatorConfig,
) -> FrequencyTrace:
    if cfg.filter_stage in ("frequency", "both") and cfg.filter_tau > 0:
        rho = lowpass(_hold(rho, ok), sig.sample_rate, cfg.filter_tau)
        coeffs = lowpass(_hold(coeffs, ok), sig.sample_rate, cfg.filter_tau)
        rho[~ok] = np.nan
        coeffs[~ok] = np.nan
    omega_mag = np.sqrt(np.sum(coeffs * coeffs, axis=-1))
    logger.debug(
        "Frequency trace computed",
        method=method,
        n_samples=sig.n_samples,
        masked=int((~ok).sum()),
        filter_tau=cfg.filter_tau,
        filter_stage=cfg.filter_stage,
    )
    return FrequencyTrace(
        method=method,
        signal_dim=sig.dim,
        t=sig.t,
        rho=rho,
        omega_mag=omega_mag,
        omega_biv=coeffs,
        valid=valid,
    )


def estimate_geometric(sig: SampledSignal, cfg: Optional[EstimatorConfig] = None) -> FrequencyTrace:
    cfg = cfg or EstimatorConfig()
    vdot = differentiate(sig, cfg.diff_scheme).samples
    if cfg.filter_stage in ("derivative", "both"):
        vdot = lowpass(vdot, sig.sample_rate, cfg.filter_tau)
    ok = _magnitude_mask(sig.samples, cfg)
    rho, coeffs, _ = frequency_series(sig.samples, vdot, ok)
    valid = ok.copy()
    valid[[0, -1]] = False
    return _smoothed_trace("geometric", sig, rho, coeffs, ok, valid, cfg)


def _check_same_time_base(a: SampledSignal, b: SampledSignal):
    if a.dim != b.dim:
        raise DimensionMismatchError(a.dim, b.dim)
    if a.n_samples != b.n_samples:
        raise TimeBaseError(f"{a.n_samples} voltage samples but {b.n_samples} current samples")
    if a.sample_rate != b.sample_rate or abs(a.t0 - b.t0) > TIME_TOL:
        raise TimeBaseError("voltage and current records do not share a time base")


def estimate_from_power(
    v_sig: SampledSignal,
    i_sig: SampledSignal,
    capacitance: float,
    cfg: Optional[EstimatorConfig] = None,
) -> FrequencyTrace:
    """Frequency of the voltage across a capacitance from sampled v and i = C v'."""
    cfg = cfg or EstimatorConfig()
    _check_same_time_base(v_sig, i_sig)
    current = i_sig.samples
    if cfg.filter_stage in ("derivative", "both"):
        current = lowpass(current, v_sig.sample_rate, cfg.filter_tau)
    ok = _magnitude_mask(v_sig.samples, cfg)
    rho, coeffs, _ = power_frequency_series(v_sig.samples, current, capacitance, ok)
    return _smoothed_trace("power", v_sig, rho, coeffs, ok, ok.copy(), cfg)


def srf_pll(sig: SampledSignal, cfg: Optional[PllConfig] = None) -> FrequencyTrace:
    """
    Synchronous-reference-frame PLL on an abc record.

    Each step: Clarke to alpha-beta, Park by the current angle estimate,
    PI on the per-unit q component, forward-Euler angle update.
    """
    cfg = cfg or PllConfig()
    if sig.dim != 3:
        raise DimensionMismatchError(sig.dim, 3)
    alpha, beta = clarke(sig.samples)
    v_base = cfg.v_base or float(np.median(np.hypot(alpha, beta)))
    if not v_base > 0:
        raise DegenerateCurveError("alpha-beta magnitude is zero, the PLL has no reference")

    dt = sig.dt
    theta = cfg.theta_init
    integral = 0.0
    omega = np.empty(sig.n_samples)
    for k in range(sig.n_samples):
        _, vq = park(float(alpha[k]), float(beta[k]), theta)
        error = vq / v_base
        integral += cfg.ki * error * dt
        omega[k] = cfg.omega_init + integral + cfg.kp * error
        theta = math.remainder(theta + omega[k] * dt, 2.0 * math.pi)

    logger.debug("SRF-PLL run complete", n_samples=sig.n_samples, v_base=v_base, kp=cfg.kp, ki=cfg.ki)
    return FrequencyTrace(
        method="pll",
        signal_dim=3,
        t=sig.t,
        rho=np.zeros(sig.n_samples),
        omega_mag=np.abs(omega),
        omega_biv=None,
        valid=omega >= 0,
    )


def settle_time(t: np.ndarray, omega: np.ndarray) -> Optional[float]:
    """First instant after which omega stays within 1% of its final value."""
    tail = max(1, int(math.ceil(SETTLE_TAIL * omega.size)))
    final = float(np.mean(omega[-tail:]))
    outside = np.abs(omega - final) >= SETTLE_BAND * abs(final)
    if not outside.any():
        return float(t[0])
    last = int(np.flatnonzero(outside)[-1])
    if last == omega.size - 1:
        return None
    return float(t[last + 1])


def compare(
    trace_a: FrequencyTrace, trace_b: FrequencyTrace, t_window: Tuple[float, float]
) -> ComparisonReport:
    start, end = t_window
    if not end > start:
        raise ParameterError(f"empty comparison window [{start}, {end}]")
    in_a = trace_a.in_window(start, end)
    in_b = trace_b.in_window(start, end)
    if not in_a.any() or not in_b.any():
        raise TimeBaseError(f"window [{start}, {end}] does not overlap both traces")
    t_a, t_b = trace_a.t[in_a], trace_b.t[in_b]
    if t_a.size != t_b.size or np.max(np.abs(t_a - t_b)) > TIME_TOL:
        raise TimeBaseError("traces do not share a time base on the comparison window")
    both = trace_a.valid[in_a] & trace_b.valid[in_b]
    if not both.any():
        raise TimeBaseError("no jointly valid samples in the comparison window")

    t = t_a[both]
    w_a = trace_a.omega_mag[in_a][both]
    w_b = trace_b.omega_mag[in_b][both]
    diff = w_a - w_b
    return ComparisonReport(
        window=(start, end),
        n_samples=int(both.sum()),
        rmse_omega=float(np.sqrt(np.mean(diff * diff))),
        max_abs_dev=float(np.max(np.abs(diff))),
        mean_hz_a=float(np.mean(w_a) / (2.0 * np.pi)),
        mean_hz_b=float(np.mean(w_b) / (2.0 * np.pi)),
        settle_time_a=settle_time(t, w_a),
        settle_time_b=settle_time(t, w_b),
    )


def plane_tilt(trace: FrequencyTrace, reference: Tuple[float, float]) -> np.ndarray:
    """
    Angle (rad, in [0, pi/2]) between each sample's rotation plane and the
    mean plane over the ``reference`` window. NaN where the plane is undefined.
    """
    if trace.omega_biv is None or trace.signal_dim < 2:
        raise ParameterError(f"{trace.method} trace of dim {trace.signal_dim} has no rotation plane")
    coeffs = trace.omega_biv
    mags = np.sqrt(np.sum(coeffs * coeffs, axis=-1))
    usable = trace.valid & np.isfinite(mags) & (mags > 0)
    ref = usable & trace.in_window(*reference)
    if not ref.any():
        raise ParameterError(f"no usable samples in reference window {reference}")

    units = np.where(usable[:, None], coeffs / np.where(usable, mags, 1.0)[:, None], 0.0)
    ref_units = units[ref]
    signs = np.sign(ref_units @ ref_units[0])
    mean = np.sum(ref_units * signs[:, None], axis=0)
    mean /= np.linalg.norm(mean)
    angle = np.arccos(np.clip(np.abs(units @ mean), 0.0, 1.0))
    angle[~usable] = np.nan
    return angle
