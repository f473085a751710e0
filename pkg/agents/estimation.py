from typing import Annotated, Literal, Optional

import structlog
from fastmcp import FastMCP
from pydantic import Field, ValidationError

from config.strings import PLL_CHANNELS_MESSAGE, UNEXPECTED_TOOL_ERROR_MESSAGE
from genfreq.exceptions import DimensionMismatchError, GenFreqError
from models.frequency_model import (
    CompareTracesResponse,
    EstimateFrequencyResponse,
    GenerateWaveformResponse,
)
from models.pipeline_model import GenerateRequest, Scenario
from utils.helper import resolve_data_path
from utils.pipeline import estimator_config, run_compare, run_estimate, run_generate

logger = structlog.get_logger()


class EstimationAgent:
    """
    File-based tools wrapping the same generate / estimate / compare runners
    as the CLI. Every path is relative to DATA_DIR.
    """

    def __init__(self, mcp: FastMCP):
        self.mcp = mcp
        self.register_tools()

    def register_tools(self):
        @self.mcp.tool()
        async def generate_waveform(
            scenario: Annotated[Scenario, Field(description="example1, example2, example3, dc or fault")],
            out_path: Annotated[str, Field(description="Waveform CSV to write, relative to DATA_DIR")],
            amplitude: Annotated[Optional[float], Field(description="Amplitude (V)", gt=0)] = None,
            frequency: Annotated[Optional[float], Field(description="Fundamental frequency (Hz)", gt=0)] = None,
            sample_rate: Annotated[Optional[float], Field(description="Sample rate (Hz)", gt=0)] = None,
            duration: Annotated[Optional[float], Field(description="Record length (s)", gt=0)] = None,
            noise: Annotated[float, Field(description="Noise std as a fraction of the amplitude", ge=0)] = 0.0,
            seed: Annotated[Optional[int], Field(description="RNG seed; GENFREQ_SEED when omitted")] = None,
        ) -> dict:
            """Sample one of the example waveforms and write it as CSV."""
            try:
                given = {"v": amplitude, "f": frequency, "fs": sample_rate, "dur": duration, "seed": seed}
                req = GenerateRequest(
                    scenario=scenario,
                    noise=noise,
                    **{key: value for key, value in given.items() if value is not None},
                )
                result = run_generate(req, resolve_data_path(out_path))
                return GenerateWaveformResponse(success=True, result=result).model_dump()
            except (GenFreqError, ValidationError, OSError) as e:
                logger.warning("Waveform generation rejected", scenario=scenario, error=str(e))
                return GenerateWaveformResponse(success=False, error=str(e)).model_dump()
            except Exception as e:
                logger.error("Waveform generation failed", scenario=scenario, error=str(e))
                return GenerateWaveformResponse(success=False, error=UNEXPECTED_TOOL_ERROR_MESSAGE).model_dump()

        @self.mcp.tool()
        async def estimate_frequency(
            in_path: Annotated[str, Field(description="Waveform CSV to read, relative to DATA_DIR")],
            out_path: Annotated[str, Field(description="Trace CSV to write")],
            method: Annotated[Literal["geo", "pll", "power"], Field(description="Estimator")] = "geo",
            filter_tau: Annotated[Optional[float], Field(description="Filter time constant (s)", ge=0)] = None,
            current_path: Annotated[Optional[str], Field(description="Current CSV (power method)")] = None,
            capacitance: Annotated[Optional[float], Field(description="Capacitance (F)", gt=0)] = None,
        ) -> dict:
            """Estimate the frequency trace of a waveform file."""
            try:
                est, pll = estimator_config(filter_tau=filter_tau)
                result = run_estimate(
                    resolve_data_path(in_path),
                    resolve_data_path(out_path),
                    method,
                    est,
                    pll,
                    resolve_data_path(current_path) if current_path is not None else None,
                    capacitance,
                )
                return EstimateFrequencyResponse(success=True, result=result).model_dump()
            except DimensionMismatchError as e:
                logger.warning("Estimation rejected", method=method, error=str(e))
                message = PLL_CHANNELS_MESSAGE if method == "pll" else str(e)
                return EstimateFrequencyResponse(success=False, error=message).model_dump()
            except (GenFreqError, ValidationError, OSError) as e:
                logger.warning("Estimation rejected", method=method, error=str(e))
                return EstimateFrequencyResponse(success=False, error=str(e)).model_dump()
            except Exception as e:
                logger.error("Estimation failed", method=method, error=str(e))
                return EstimateFrequencyResponse(success=False, error=UNEXPECTED_TOOL_ERROR_MESSAGE).model_dump()

        @self.mcp.tool()
        async def compare_traces(
            trace_a: Annotated[str, Field(description="First trace CSV")],
            trace_b: Annotated[str, Field(description="Second trace CSV")],
            window_start: Annotated[Optional[float], Field(description="Window start (s)")] = None,
            window_end: Annotated[Optional[float], Field(description="Window end (s)")] = None,
            out_path: Annotated[Optional[str], Field(description="CSV report to write")] = None,
        ) -> dict:
            """RMSE, maximum deviation, mean frequency and settle times of two traces."""
            try:
                window = None
                if window_start is not None and window_end is not None:
                    window = (window_start, window_end)
                report = run_compare(
                    resolve_data_path(trace_a),
                    resolve_data_path(trace_b),
                    window,
                    resolve_data_path(out_path) if out_path is not None else None,
                )
                return CompareTracesResponse(success=True, report=report).model_dump()
            except (GenFreqError, OSError) as e:
                logger.warning("Comparison rejected", error=str(e))
                return CompareTracesResponse(success=False, error=str(e)).model_dump()
            except Exception as e:
                logger.error("Comparison failed", error=str(e))
                return CompareTracesResponse(success=False, error=UNEXPECTED_TOOL_ERROR_MESSAGE).model_dump()
