"""
Analytic test signals with exact derivatives, and a sampler.

Every generator returns an ``AnalyticSignal`` whose ``evaluate(t)`` gives
the value and the closed-form time derivative. ``t`` may be a scalar
(vectors of shape ``(dim,)``) or a 1-D array (shape ``(N, dim)``).
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple, Union

import numpy as np
import structlog

from genfreq.exceptions import ParameterError
from models.signal_model import SampledSignal

logger = structlog.get_logger()

TimeLike = Union[float, np.ndarray]
Evaluator = Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray]]
ScalarFn = Callable[[np.ndarray], Union[float, np.ndarray]]

PHASE_SHIFT = 2.0 * np.pi / 3.0
RAMP_SECONDS = 1e-3


@dataclass(frozen=True)
class AnalyticSignal:
    dim: int
    fn: Evaluator = field(repr=False)
    description: str = ""
    channels: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise ParameterError("signal dimension must be positive")
        if not self.channels:
            object.__setattr__(self, "channels", tuple(f"x{k + 1}" for k in range(self.dim)))
        elif len(self.channels) != self.dim:
            raise ParameterError(f"{len(self.channels)} channel labels for a dim {self.dim} signal")

    def evaluate(self, t: TimeLike) -> Tuple[np.ndarray, np.ndarray]:
        scalar = np.ndim(t) == 0
        ts = np.atleast_1d(np.asarray(t, dtype=np.float64))
        value, derivative = self.fn(ts)
        if scalar:
            return value[0], derivative[0]
        return value, derivative

    def value(self, t: TimeLike) -> np.ndarray:
        return self.evaluate(t)[0]

    def derivative(self, t: TimeLike) -> np.ndarray:
        return self.evaluate(t)[1]


def _broadcast(fn: ScalarFn, t: np.ndarray) -> np.ndarray:
    return np.broadcast_to(np.asarray(fn(t), dtype=np.float64), t.shape)


def _require_amplitude(V: float):
    if not V > 0:
        raise ParameterError(f"amplitude must be positive, got {V}")


def single_phase(V: float, omega0: float, phi: float = 0.0) -> AnalyticSignal:
    """A phasor V e^{j(omega0 t + phi)} written as a dim-2 vector."""
    _require_amplitude(V)

    def fn(t):
        theta = omega0 * t + phi
        c, s = np.cos(theta), np.sin(theta)
        value = np.stack([V * c, V * s], axis=-1)
        derivative = np.stack([-omega0 * V * s, omega0 * V * c], axis=-1)
        return value, derivative

    return AnalyticSignal(2, fn, f"single phase V={V:g} omega0={omega0:g}", ("e1", "e2"))


def _balanced_phases(omega0: float, t: np.ndarray) -> np.ndarray:
    theta_a = omega0 * t
    return np.stack([theta_a, theta_a - PHASE_SHIFT, theta_a + PHASE_SHIFT], axis=-1)


def three_phase_balanced(V: float, omega0: float) -> AnalyticSignal:
    _require_amplitude(V)

    def fn(t):
        theta = _balanced_phases(omega0, t)
        return V * np.sin(theta), omega0 * V * np.cos(theta)

    return AnalyticSignal(3, fn, f"balanced three phase V={V:g} omega0={omega0:g}", ("a", "b", "c"))


def dq_signal(
    vd: ScalarFn,
    vq: ScalarFn,
    vd_dot: ScalarFn,
    vq_dot: ScalarFn,
    omega0: float,
) -> AnalyticSignal:
    """
    dq components in a frame rotating at omega0, q leading d.

    The derivative carries the frame rotation: (v_d' - omega0 v_q, v_q' + omega0 v_d).
    """

    def fn(t):
        d, q = _broadcast(vd, t), _broadcast(vq, t)
        dd, dq = _broadcast(vd_dot, t), _broadcast(vq_dot, t)
        value = np.stack([d, q], axis=-1)
        derivative = np.stack([dd - omega0 * q, dq + omega0 * d], axis=-1)
        return value, derivative

    return AnalyticSignal(2, fn, f"dq rotating frame omega0={omega0:g}", ("d", "q"))


def damped_dq_transient(
    scale: float,
    omega0: float,
    offset: float = 10.0,
    decay: float = 1.0,
    mod_freq: float = 1.0,
) -> AnalyticSignal:
    """v_d = scale (offset + e^{-decay t} cos 2 pi f t), v_q = scale e^{-decay t} sin 2 pi f t"""
    _require_amplitude(scale)
    wm = 2.0 * np.pi * mod_freq

    def vd(t):
        return scale * (offset + np.exp(-decay * t) * np.cos(wm * t))

    def vq(t):
        return scale * np.exp(-decay * t) * np.sin(wm * t)

    def vd_dot(t):
        e = np.exp(-decay * t)
        return scale * e * (-decay * np.cos(wm * t) - wm * np.sin(wm * t))

    def vq_dot(t):
        e = np.exp(-decay * t)
        return scale * e * (-decay * np.sin(wm * t) + wm * np.cos(wm * t))

    sig = dq_signal(vd, vq, vd_dot, vq_dot, omega0)
    return AnalyticSignal(2, sig.fn, f"damped dq transient scale={scale:g}", sig.channels)


def inverse_park(sig: AnalyticSignal, omega0: float, theta0: float = 0.0) -> AnalyticSignal:
    """Stationary (alpha, beta) view of a rotating-frame dq signal."""
    if sig.dim != 2:
        raise ParameterError("inverse Park rotation needs a dim-2 dq signal")

    def fn(t):
        value, derivative = sig.fn(t)
        theta = omega0 * t + theta0
        c, s = np.cos(theta), np.sin(theta)

        def rotate(u):
            return np.stack([c * u[:, 0] - s * u[:, 1], s * u[:, 0] + c * u[:, 1]], axis=-1)

        return rotate(value), rotate(derivative)

    return AnalyticSignal(2, fn, f"stationary frame of {sig.description}", ("alpha", "beta"))


def dc_signal(v: ScalarFn, vdot: ScalarFn) -> AnalyticSignal:
    def fn(t):
        return _broadcast(v, t)[:, None], _broadcast(vdot, t)[:, None]

    return AnalyticSignal(1, fn, "dc", ("dc",))


def exponential_dc(V: float, rate: float = 0.0) -> AnalyticSignal:
    """V e^{rate t}; rate 0 gives a constant."""
    return dc_signal(lambda t: V * np.exp(rate * t), lambda t: rate * V * np.exp(rate * t))


def _raised_cosine(t: np.ndarray, start: float, width: float) -> Tuple[np.ndarray, np.ndarray]:
    """0 before ``start``, 1 after ``start + width``, C1 in between."""
    s = np.clip((t - start) / width, 0.0, 1.0)
    w = 0.5 * (1.0 - np.cos(np.pi * s))
    inside = (t > start) & (t < start + width)
    dw = np.where(inside, 0.5 * np.pi / width * np.sin(np.pi * s), 0.0)
    return w, dw


def fault_weight(
    t: np.ndarray, t_fault: float, t_clear: float, ramp: float = RAMP_SECONDS
) -> Tuple[np.ndarray, np.ndarray]:
    rise, drise = _raised_cosine(t, t_fault, ramp)
    fall, dfall = _raised_cosine(t, t_clear, ramp)
    return rise - fall, drise - dfall


def fault_scenario(
    V: float,
    omega0: float,
    t_fault: float = 0.2,
    t_clear: float = 0.3,
    sag: float = 0.4,
    phase_jump: float = 0.3,
    harmonic3: float = 0.05,
    ramp: float = RAMP_SECONDS,
) -> AnalyticSignal:
    """
    Balanced three-phase voltage with an unbalanced disturbance between
    ``t_fault`` and ``t_clear``: phases b and c sag by ``sag``, phase b
    jumps by ``phase_jump`` and every phase picks up a third harmonic of
    relative amplitude ``harmonic3``. Entry and exit follow raised-cosine
    ramps of ``ramp`` seconds.
    """
    _require_amplitude(V)
    if not 0.0 <= sag < 1.0:
        raise ParameterError(f"sag must be in [0, 1), got {sag}")
    if not t_fault < t_clear:
        raise ParameterError(f"fault start {t_fault} must precede clearing {t_clear}")
    if not ramp > 0 or ramp > t_clear - t_fault:
        raise ParameterError(f"ramp {ramp} must be positive and fit inside the fault window")
    if harmonic3 < 0:
        raise ParameterError(f"harmonic amplitude must be non-negative, got {harmonic3}")

    sags = np.array([0.0, sag, sag])
    jumps = np.array([0.0, phase_jump, 0.0])

    def fn(t):
        w, dw = fault_weight(t, t_fault, t_clear, ramp)
        w, dw = w[:, None], dw[:, None]
        phi = _balanced_phases(omega0, t) + w * jumps
        dphi = omega0 + dw * jumps
        amp = V * (1.0 - w * sags)
        damp = -V * dw * sags
        shape = np.sin(phi) + w * harmonic3 * np.sin(3.0 * phi)
        dshape = np.cos(phi) * dphi + harmonic3 * (
            dw * np.sin(3.0 * phi) + 3.0 * w * np.cos(3.0 * phi) * dphi
        )
        return amp * shape, damp * shape + amp * dshape

    return AnalyticSignal(
        3,
        fn,
        f"fault scenario sag={sag:g} jump={phase_jump:g} h3={harmonic3:g} [{t_fault:g}, {t_clear:g}]",
        ("a", "b", "c"),
    )


def _time_base(sample_rate: float, t_start: float, t_end: float) -> np.ndarray:
    if not sample_rate > 0:
        raise ParameterError(f"sample rate must be positive, got {sample_rate}")
    if not t_end > t_start:
        raise ParameterError(f"empty time range [{t_start}, {t_end})")
    n = int(round((t_end - t_start) * sample_rate))
    if n < 2:
        raise ParameterError(f"range [{t_start}, {t_end}) at {sample_rate} Hz gives {n} samples")
    return t_start + np.arange(n) / sample_rate


def _with_noise(clean: np.ndarray, noise_std: float, seed: Optional[int]) -> np.ndarray:
    if noise_std < 0:
        raise ParameterError(f"noise std must be non-negative, got {noise_std}")
    if noise_std == 0:
        return clean
    rng = np.random.default_rng(seed)
    return clean + rng.normal(0.0, noise_std, size=clean.shape)


def sample(
    sig: AnalyticSignal,
    sample_rate: float,
    t_start: float,
    t_end: float,
    noise_std: float = 0.0,
    seed: Optional[int] = 0,
) -> SampledSignal:
    """Uniform samples of the signal value on [t_start, t_end) with optional white Gaussian noise."""
    t = _time_base(sample_rate, t_start, t_end)
    samples = _with_noise(sig.value(t), noise_std, seed)
    logger.debug(
        "Sampled analytic signal",
        description=sig.description,
        n_samples=t.size,
        noise_std=noise_std,
    )
    return SampledSignal(sample_rate=sample_rate, t0=t_start, channels=sig.channels, samples=samples)


def sample_capacitor_current(
    sig: AnalyticSignal,
    capacitance: float,
    sample_rate: float,
    t_start: float,
    t_end: float,
    noise_std: float = 0.0,
    seed: Optional[int] = 0,
) -> SampledSignal:
    """Samples of i = C v' for the voltage ``sig`` across a capacitance."""
    if not capacitance > 0:
        raise ParameterError(f"capacitance must be positive, got {capacitance}")
    t = _time_base(sample_rate, t_start, t_end)
    samples = _with_noise(capacitance * sig.derivative(t), noise_std, seed)
    return SampledSignal(
        sample_rate=sample_rate,
        t0=t_start,
        channels=tuple(f"i_{c}" for c in sig.channels),
        samples=samples,
    )
