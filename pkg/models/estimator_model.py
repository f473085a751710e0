import math
from typing import Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field


# -------------------------
# Shared Parent (configs reject unknown keys)
# -------------------------
class Parent(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


# -------------------------
# Geometric estimator
# -------------------------
class EstimatorConfig(Parent):
    diff_scheme: Literal["central", "one_sided_start_end"] = Field(
        default="central",
        description="central: 3-point one-sided stencils at the ends; one_sided_start_end: 2-point ends",
    )
    filter_tau: float = Field(default=0.0, ge=0, description="First-order filter time constant (s)")
    filter_stage: Literal["frequency", "derivative", "both"] = Field(
        default="frequency", description="Where the first-order filter is applied"
    )
    mask_threshold: Optional[float] = Field(
        default=None, ge=0, description="|v| at or below this is degenerate (V); None = mask_ratio * max|v|"
    )
    mask_ratio: float = Field(default=1e-6, ge=0)
    report_hz: bool = Field(default=True, description="Write the omega_hz column (omega / 2pi) to trace files")


# -------------------------
# SRF-PLL
# -------------------------
class PllConfig(Parent):
    kp: float = Field(default=92.0, gt=0, description="Proportional gain on per-unit v_q (rad/s)")
    ki: float = Field(default=4230.0, gt=0, description="Integral gain on per-unit v_q (rad/s^2)")
    omega_init: float = Field(default=120.0 * math.pi, description="Initial frequency estimate (rad/s)")
    theta_init: float = Field(default=-math.pi / 2, description="Initial angle estimate (rad)")
    v_base: Optional[float] = Field(
        default=None, gt=0, description="Per-unit base for v_q (V); None = median |v_alpha_beta|"
    )


# -------------------------
# Trace comparison
# -------------------------
class ComparisonReport(BaseModel):
    window: Tuple[float, float]
    n_samples: int
    rmse_omega: float = Field(..., description="RMS of omega_a - omega_b over jointly valid samples (rad/s)")
    max_abs_dev: float = Field(..., description="Max |omega_a - omega_b| (rad/s)")
    mean_hz_a: float
    mean_hz_b: float
    settle_time_a: Optional[float] = None
    settle_time_b: Optional[float] = None

    def as_row(self) -> dict:
        row = self.model_dump()
        row["window_start"], row["window_end"] = row.pop("window")
        return row
