from typing import Dict, Optional

from pydantic import BaseModel, Field

from models.estimator_model import ComparisonReport
from models.pipeline_model import EstimateResult, GenerateResult


class ToolResponse(BaseModel):
    success: bool
    error: Optional[str] = None


# -------------------------
# Pointwise frequency
# -------------------------
class GeneralizedFrequencyResponse(ToolResponse):
    rho: Optional[float] = Field(default=None, description="(v . v') / |v|^2 (1/s)")
    omega_mag: Optional[float] = Field(default=None, description="|Omega| (rad/s)")
    omega_hz: Optional[float] = None
    omega: Dict[str, float] = Field(
        default_factory=dict, description="Omega coefficients keyed b_ij with i < j (rad/s)"
    )
    signed_omega: Optional[float] = Field(default=None, description="b_12 for two-channel signals")


class CurvatureResponse(ToolResponse):
    curvature: Optional[float] = Field(default=None, description="|x' ^ x''| / |x'|^3")
    arc_speed: Optional[float] = None
    arc_acceleration: Optional[float] = None


# -------------------------
# Pipeline
# -------------------------
class GenerateWaveformResponse(ToolResponse):
    result: Optional[GenerateResult] = None


class EstimateFrequencyResponse(ToolResponse):
    result: Optional[EstimateResult] = None


class CompareTracesResponse(ToolResponse):
    report: Optional[ComparisonReport] = None
