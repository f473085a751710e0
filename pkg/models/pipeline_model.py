from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from config.settings import settings

Scenario = Literal["example1", "example2", "example3", "dc", "fault"]
Method = Literal["geo", "pll", "power"]


class Parent(BaseModel):
    model_config = ConfigDict(extra="forbid")


# -------------------------
# Generate
# -------------------------
class GenerateRequest(Parent):
    scenario: Scenario
    v: Optional[float] = Field(default=None, gt=0, description="Amplitude (V); scenario default when omitted")
    f: float = Field(default_factory=lambda: settings.NOMINAL_FREQUENCY, gt=0, description="Fundamental frequency (Hz)")
    fs: float = Field(default_factory=lambda: settings.DEFAULT_SAMPLE_RATE, gt=0, description="Sample rate (Hz)")
    dur: Optional[float] = Field(default=None, gt=0, description="Record length (s); scenario default when omitted")
    t0: float = Field(default=0.0, description="Start time (s)")
    phi: float = Field(default=0.0, description="Initial phase of example1 (rad)")
    noise: float = Field(default=0.0, ge=0, description="Noise std per channel, as a fraction of the amplitude")
    seed: Optional[int] = Field(default=None, description="RNG seed; GENFREQ_SEED when omitted")
    decay: float = Field(default=0.0, description="Exponential rate of the dc scenario (1/s)")
    sag: float = Field(default=0.4, ge=0, lt=1)
    t_fault: float = Field(default=0.2)
    t_clear: float = Field(default=0.3)
    phase_jump: float = Field(default=0.3, description="Phase-b jump during the fault (rad)")
    harmonic3: float = Field(default=0.05, ge=0, description="Relative third-harmonic amplitude during the fault")
    capacitance: Optional[float] = Field(default=None, gt=0, description="Also sample i = C v' when set (F)")

    @model_validator(mode="after")
    def check_fault_window(self) -> "GenerateRequest":
        if self.scenario == "fault" and not self.t_fault < self.t_clear:
            raise ValueError("t_fault must precede t_clear")
        return self


class GenerateResult(Parent):
    path: str
    current_path: Optional[str] = None
    scenario: Scenario
    n_samples: int
    channels: List[str]
    seed: int


# -------------------------
# Estimate
# -------------------------
class EstimateResult(Parent):
    path: str
    method: Method
    n_samples: int
    n_valid: int
    mean_hz: Optional[float] = Field(default=None, description="Mean omega/2pi over valid samples")
    curve_path: Optional[str] = None
