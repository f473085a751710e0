from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from genfreq.ga_core import check_orthogonal


# -------------------------
# Shared Parent (numpy payloads, immutable)
# -------------------------
class ArrayModel(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True, extra="forbid")


def frozen_array(value, ndim: int) -> np.ndarray:
    arr = np.array(value, dtype=np.float64)
    if arr.ndim != ndim:
        raise ValueError(f"expected a {ndim}-D array, got shape {arr.shape}")
    arr.flags.writeable = False
    return arr


# -------------------------
# Sampled signal
# -------------------------
class SampledSignal(ArrayModel):
    sample_rate: float = Field(..., gt=0, description="Samples per second (Hz)")
    t0: float = Field(default=0.0, description="Time of the first sample (s)")
    channels: Tuple[str, ...] = Field(..., min_length=1, description="One label per column")
    samples: np.ndarray = Field(..., description="Array [n_samples x dim]")

    @field_validator("samples", mode="before")
    @classmethod
    def freeze_samples(cls, v):
        return frozen_array(v, 2)

    @model_validator(mode="after")
    def check_shape(self) -> "SampledSignal":
        n, dim = self.samples.shape
        if n < 2:
            raise ValueError("a sampled signal needs at least 2 samples")
        if dim != len(self.channels):
            raise ValueError(f"{dim} sample columns but {len(self.channels)} channel labels")
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("samples must be finite")
        if not np.isfinite(self.t0):
            raise ValueError("t0 must be finite")
        return self

    @property
    def dim(self) -> int:
        return self.samples.shape[1]

    @property
    def n_samples(self) -> int:
        return self.samples.shape[0]

    @property
    def dt(self) -> float:
        return 1.0 / self.sample_rate

    @property
    def t(self) -> np.ndarray:
        return self.t0 + np.arange(self.n_samples) / self.sample_rate

    def with_samples(self, samples: np.ndarray) -> "SampledSignal":
        return SampledSignal(
            sample_rate=self.sample_rate, t0=self.t0, channels=self.channels, samples=samples
        )

    def rotated(self, q: np.ndarray) -> "SampledSignal":
        """Apply a fixed orthogonal change of basis to every sample."""
        q = check_orthogonal(q)
        return self.with_samples(self.samples @ q.T)
