from typing import Literal, Optional, Tuple

import numpy as np
from pydantic import Field, field_validator, model_validator

from genfreq.ga_core import n_pairs, pair_labels
from models.signal_model import ArrayModel, frozen_array


class FrequencyTrace(ArrayModel):
    method: Literal["geometric", "power", "pll"]
    signal_dim: int = Field(..., ge=1)
    t: np.ndarray
    rho: np.ndarray
    omega_mag: np.ndarray
    omega_biv: Optional[np.ndarray] = Field(
        default=None, description="Bivector coefficients [n_samples x dim(dim-1)/2]; None for PLL traces"
    )
    valid: np.ndarray

    @field_validator("t", "rho", "omega_mag", mode="before")
    @classmethod
    def freeze_series(cls, v):
        return frozen_array(v, 1)

    @field_validator("omega_biv", mode="before")
    @classmethod
    def freeze_bivectors(cls, v):
        return None if v is None else frozen_array(v, 2)

    @field_validator("valid", mode="before")
    @classmethod
    def freeze_flags(cls, v):
        arr = np.array(v, dtype=bool)
        arr.flags.writeable = False
        return arr

    @model_validator(mode="after")
    def check_lengths(self) -> "FrequencyTrace":
        n = self.t.size
        for name in ("rho", "omega_mag", "valid"):
            if getattr(self, name).shape != (n,):
                raise ValueError(f"{name} has {getattr(self, name).size} entries, expected {n}")
        if self.omega_biv is not None and self.omega_biv.shape != (n, n_pairs(self.signal_dim)):
            raise ValueError(
                f"omega_biv must have shape ({n}, {n_pairs(self.signal_dim)}), got {self.omega_biv.shape}"
            )
        return self

    @property
    def n_samples(self) -> int:
        return self.t.size

    @property
    def omega_hz(self) -> np.ndarray:
        return self.omega_mag / (2.0 * np.pi)

    @property
    def bivector_labels(self) -> Tuple[str, ...]:
        if self.omega_biv is None:
            return ()
        return tuple(pair_labels(self.signal_dim))

    def in_window(self, start: float, end: float) -> np.ndarray:
        return (self.t >= start) & (self.t <= end)
