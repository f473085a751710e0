from typing import Annotated, List

import structlog
from fastmcp import FastMCP
from pydantic import Field

from config.strings import DEGENERATE_SIGNAL_MESSAGE, UNEXPECTED_TOOL_ERROR_MESSAGE
from genfreq.curve_geometry import CurveState, arc_acceleration, arc_speed, curvature
from genfreq.exceptions import DegenerateCurveError, GenFreqError
from genfreq.frequency import GeneralizedFrequency, frequency_from_power, generalized_frequency
from models.frequency_model import CurvatureResponse, GeneralizedFrequencyResponse

logger = structlog.get_logger()

Vector = List[float]


def _frequency_response(freq: GeneralizedFrequency) -> GeneralizedFrequencyResponse:
    return GeneralizedFrequencyResponse(
        success=True,
        rho=freq.rho,
        omega_mag=freq.omega_mag,
        omega_hz=freq.omega_hz,
        omega=dict(zip(freq.omega.labels(), (float(c) for c in freq.omega.coeffs))),
        signed_omega=freq.signed_omega,
    )


def _error_message(e: Exception) -> str:
    if isinstance(e, DegenerateCurveError):
        return DEGENERATE_SIGNAL_MESSAGE
    return str(e)


class FrequencyAgent:
    """Pointwise tools: generalized frequency, its power form, and curvature."""

    def __init__(self, mcp: FastMCP):
        self.mcp = mcp
        self.register_tools()

    def register_tools(self):
        @self.mcp.tool(name="generalized_frequency")
        async def generalized_frequency_tool(
            v: Annotated[Vector, Field(description="Signal value, one entry per channel", min_length=1)],
            vdot: Annotated[Vector, Field(description="Time derivative of the signal", min_length=1)],
        ) -> dict:
            """
            Generalized frequency of a signal at one instant.

            Returns rho (amplitude rate), the rotation bivector Omega and
            omega = |Omega| in rad/s and Hz.
            """
            try:
                response = _frequency_response(generalized_frequency(v, vdot))
                logger.info("Generalized frequency computed", dim=len(v), omega_mag=response.omega_mag)
                return response.model_dump()
            except GenFreqError as e:
                logger.warning("Generalized frequency rejected", error=str(e))
                return GeneralizedFrequencyResponse(success=False, error=_error_message(e)).model_dump()
            except Exception as e:
                logger.error("Generalized frequency failed", error=str(e))
                return GeneralizedFrequencyResponse(
                    success=False, error=UNEXPECTED_TOOL_ERROR_MESSAGE
                ).model_dump()

        @self.mcp.tool(name="frequency_from_power")
        async def frequency_from_power_tool(
            v: Annotated[Vector, Field(description="Capacitor voltage (V)", min_length=1)],
            i: Annotated[Vector, Field(description="Capacitor current (A)", min_length=1)],
            capacitance: Annotated[float, Field(description="Capacitance (F)", gt=0)],
        ) -> dict:
            """Generalized frequency of the capacitor voltage from v, i = C v' and C."""
            try:
                response = _frequency_response(frequency_from_power(v, i, capacitance))
                logger.info("Frequency from power computed", dim=len(v), omega_mag=response.omega_mag)
                return response.model_dump()
            except GenFreqError as e:
                logger.warning("Frequency from power rejected", error=str(e))
                return GeneralizedFrequencyResponse(success=False, error=_error_message(e)).model_dump()
            except Exception as e:
                logger.error("Frequency from power failed", error=str(e))
                return GeneralizedFrequencyResponse(
                    success=False, error=UNEXPECTED_TOOL_ERROR_MESSAGE
                ).model_dump()

        @self.mcp.tool(name="curvature")
        async def curvature_tool(
            xdot: Annotated[Vector, Field(description="First derivative of the curve", min_length=1)],
            xddot: Annotated[Vector, Field(description="Second derivative of the curve", min_length=1)],
        ) -> dict:
            """Curvature, arc speed and arc acceleration of a curve at one point."""
            try:
                state = CurveState(xdot=xdot, xddot=xddot)
                return CurvatureResponse(
                    success=True,
                    curvature=curvature(state),
                    arc_speed=arc_speed(state.xdot),
                    arc_acceleration=arc_acceleration(state),
                ).model_dump()
            except GenFreqError as e:
                logger.warning("Curvature rejected", error=str(e))
                return CurvatureResponse(success=False, error=str(e)).model_dump()
            except Exception as e:
                logger.error("Curvature failed", error=str(e))
                return CurvatureResponse(success=False, error=UNEXPECTED_TOOL_ERROR_MESSAGE).model_dump()

