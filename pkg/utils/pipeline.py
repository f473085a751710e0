"""
generate / estimate / compare runners shared by the CLI and the MCP tools.

Each runner reads and computes everything first, then hands all of its
outputs to ``write_texts`` at once, so an error never leaves a partial
output behind.
"""

import math
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np
import structlog

from config.settings import settings
from config.strings import POWER_INPUTS_MESSAGE
from genfreq import signals
from genfreq.estimators import compare, estimate_from_power, estimate_geometric, srf_pll
from genfreq.exceptions import ParameterError, TimeBaseError
from models.estimator_model import ComparisonReport, EstimatorConfig, PllConfig
from models.pipeline_model import EstimateResult, GenerateRequest, GenerateResult, Method
from models.trace_model import FrequencyTrace
from utils.helper import layered, read_config_file, resolve_seed
from utils.waveform_io import (
    read_trace,
    read_waveform,
    render_curve,
    render_report,
    render_trace,
    render_waveform,
    write_texts,
)

logger = structlog.get_logger()

PathLike = Union[str, Path]

DEFAULT_AMPLITUDE = {
    "example1": 12e3,
    "example2": 12e3,
    "example3": 1e3,
    "dc": 100.0,
    "fault": 12e3,
}

DEFAULT_DURATION = {
    "example1": 0.1,
    "example2": 0.1,
    "example3": 1.0,
    "dc": 0.1,
    "fault": 0.6,
}

CONFIG_KEYS = set(EstimatorConfig.model_fields) | set(PllConfig.model_fields)


def build_signal(req: GenerateRequest) -> signals.AnalyticSignal:
    V = req.v if req.v is not None else DEFAULT_AMPLITUDE[req.scenario]
    omega0 = 2.0 * math.pi * req.f
    if req.scenario == "example1":
        return signals.single_phase(V, omega0, req.phi)
    if req.scenario == "example2":
        return signals.three_phase_balanced(V, omega0)
    if req.scenario == "example3":
        return signals.inverse_park(signals.damped_dq_transient(V, omega0), omega0)
    if req.scenario == "dc":
        return signals.exponential_dc(V, req.decay)
    return signals.fault_scenario(
        V,
        omega0,
        t_fault=req.t_fault,
        t_clear=req.t_clear,
        sag=req.sag,
        phase_jump=req.phase_jump,
        harmonic3=req.harmonic3,
    )


def run_generate(
    req: GenerateRequest, out_path: PathLike, current_out: Optional[PathLike] = None
) -> GenerateResult:
    if req.capacitance is not None and current_out is None:
        raise ParameterError("a capacitance needs an output path for the current waveform")
    sig = build_signal(req)
    seed = resolve_seed(req.seed)
    V = req.v if req.v is not None else DEFAULT_AMPLITUDE[req.scenario]
    t_end = req.t0 + (req.dur if req.dur is not None else DEFAULT_DURATION[req.scenario])
    sampled = signals.sample(sig, req.fs, req.t0, t_end, req.noise * V, seed)
    metadata: Dict[str, Any] = {"scenario": req.scenario, "seed": seed, "description": sig.description}
    texts = [(out_path, render_waveform(sampled, metadata))]

    if current_out is not None:
        if req.capacitance is None:
            raise ParameterError("a current waveform needs a capacitance")
        current = signals.sample_capacitor_current(
            sig, req.capacitance, req.fs, req.t0, t_end, req.noise * V * req.capacitance * _rate_scale(req), seed + 1
        )
        texts.append((current_out, render_waveform(current, {**metadata, "capacitance": req.capacitance})))

    write_texts(texts)
    logger.info(
        "Waveform generated",
        scenario=req.scenario,
        path=str(out_path),
        n_samples=sampled.n_samples,
        seed=seed,
    )
    return GenerateResult(
        path=str(out_path),
        current_path=str(current_out) if current_out is not None else None,
        scenario=req.scenario,
        n_samples=sampled.n_samples,
        channels=list(sampled.channels),
        seed=seed,
    )


def _rate_scale(req: GenerateRequest) -> float:
    """Nominal |v'| / |v|, so current noise is relative to the current amplitude."""
    return 2.0 * math.pi * req.f if req.scenario != "dc" else max(abs(req.decay), 1.0)


def estimator_config(
    config_path: Optional[PathLike] = None, **overrides: Any
) -> Tuple[EstimatorConfig, PllConfig]:
    """Flags > config file > settings defaults."""
    from_file = read_config_file(config_path, CONFIG_KEYS) if config_path else {}
    pll_defaults = {**settings.pll_defaults, "omega_init": 2.0 * math.pi * settings.NOMINAL_FREQUENCY}
    est = EstimatorConfig.model_validate(
        layered(settings.estimator_defaults, from_file, overrides, EstimatorConfig.model_fields)
    )
    pll = PllConfig.model_validate(layered(pll_defaults, from_file, overrides, PllConfig.model_fields))
    return est, pll


def estimate_trace(
    in_path: PathLike,
    method: Method,
    est: EstimatorConfig,
    pll: PllConfig,
    current_path: Optional[PathLike] = None,
    capacitance: Optional[float] = None,
):
    sig, _ = read_waveform(in_path)
    if method == "geo":
        return sig, estimate_geometric(sig, est)
    if method == "pll":
        return sig, srf_pll(sig, pll)
    if current_path is None or capacitance is None:
        raise ParameterError(POWER_INPUTS_MESSAGE)
    current, _ = read_waveform(current_path)
    return sig, estimate_from_power(sig, current, capacitance, est)


def run_estimate(
    in_path: PathLike,
    out_path: PathLike,
    method: Method = "geo",
    est: Optional[EstimatorConfig] = None,
    pll: Optional[PllConfig] = None,
    current_path: Optional[PathLike] = None,
    capacitance: Optional[float] = None,
    curve_path: Optional[PathLike] = None,
) -> EstimateResult:
    if est is None or pll is None:
        default_est, default_pll = estimator_config()
        est, pll = est or default_est, pll or default_pll
    sig, trace = estimate_trace(in_path, method, est, pll, current_path, capacitance)

    texts = [(out_path, render_trace(trace, {"source": Path(in_path).name}, report_hz=est.report_hz))]
    if curve_path is not None:
        texts.append((curve_path, render_curve(sig, trace)))
    write_texts(texts)

    result = EstimateResult(
        path=str(out_path),
        method=method,
        n_samples=trace.n_samples,
        n_valid=int(trace.valid.sum()),
        mean_hz=_mean_hz(trace),
        curve_path=str(curve_path) if curve_path is not None else None,
    )
    logger.info("Frequency estimated", **result.model_dump())
    return result


def _mean_hz(trace: FrequencyTrace) -> Optional[float]:
    values = trace.omega_hz[trace.valid]
    values = values[np.isfinite(values)]
    return float(values.mean()) if values.size else None


def run_compare(
    trace_a_path: PathLike,
    trace_b_path: PathLike,
    window: Optional[Tuple[float, float]] = None,
    out_path: Optional[PathLike] = None,
) -> ComparisonReport:
    trace_a = read_trace(trace_a_path)
    trace_b = read_trace(trace_b_path)
    if window is None:
        window = shared_span(trace_a, trace_b)
    report = compare(trace_a, trace_b, window)
    if out_path is not None:
        write_texts([(out_path, render_report(report))])
    logger.info("Traces compared", a=str(trace_a_path), b=str(trace_b_path), rmse_omega=report.rmse_omega)
    return report


def shared_span(trace_a: FrequencyTrace, trace_b: FrequencyTrace) -> Tuple[float, float]:
    """Default comparison window: where both traces have samples, less half a sample at each edge."""
    start = max(float(trace_a.t[0]), float(trace_b.t[0]))
    end = min(float(trace_a.t[-1]), float(trace_b.t[-1]))
    half = 0.5 * min(_spacing(trace_a), _spacing(trace_b))
    if not end - start > 2.0 * half:
        raise TimeBaseError(
            f"traces do not overlap: [{trace_a.t[0]:g}, {trace_a.t[-1]:g}] and [{trace_b.t[0]:g}, {trace_b.t[-1]:g}] s"
        )
    return start + half, end - half


def _spacing(trace: FrequencyTrace) -> float:
    return float(trace.t[1] - trace.t[0]) if trace.n_samples > 1 else 0.0
