"""
Curve file models using Pydantic
"""
import math
from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from elastic_match.config import settings
from elastic_match.matching.curves import PlCurve


def _finite(values) -> bool:
    return all(math.isfinite(v) for v in values)


class CurveFile(BaseModel):
    """
    Piecewise-linear curve as stored on disk

    Validation mirrors the PlCurve invariants so that a model that
    validates always converts:
    - breakpoints strictly increasing from 0 to 1
    - one value row per breakpoint, each of length dim
    - every number finite
    """
    model_config = ConfigDict(extra="forbid")

    dim: int = Field(..., ge=1, description="Dimension of the ambient space")
    breakpoints: List[float] = Field(..., min_length=2, description="Parameter values t_0 = 0 < ... < t_m = 1")
    values: List[List[float]] = Field(..., description="Curve value at each breakpoint")

    @field_validator("breakpoints")
    @classmethod
    def validate_breakpoints(cls, v):
        """Endpoints 0 and 1, strictly increasing, finite"""
        if not _finite(v):
            raise ValueError("breakpoints must be finite")
        if abs(v[0]) > settings.knot_tol or abs(v[-1] - 1.0) > settings.knot_tol:
            raise ValueError("breakpoints must run from 0 to 1")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        return v

    @model_validator(mode="after")
    def validate_values(self):
        """One finite row of length dim per breakpoint"""
        if len(self.values) != len(self.breakpoints):
            raise ValueError(f"expected {len(self.breakpoints)} value rows, got {len(self.values)}")
        for k, row in enumerate(self.values):
            if len(row) != self.dim:
                raise ValueError(f"value row {k} has length {len(row)}, expected dim={self.dim}")
            if not _finite(row):
                raise ValueError(f"value row {k} is not finite")
        return self

    def to_curve(self) -> PlCurve:
        return PlCurve(self.breakpoints, self.values)

    @classmethod
    def from_curve(cls, curve: PlCurve) -> "CurveFile":
        return cls(dim=curve.dim, breakpoints=curve.breakpoints.tolist(), values=curve.values.tolist())


class SampleSet(BaseModel):
    """
    Sampled function: (t, value) pairs read as their PL interpolant

    With rescale the sample times are mapped affinely onto [0, 1];
    without it they must already span [0, 1].
    """
    samples: List[Tuple[float, List[float]]] = Field(..., min_length=2, description="(t, value) pairs")
    rescale: bool = Field(default=True, description="Map the sample times affinely onto [0, 1]")

    @field_validator("samples")
    @classmethod
    def validate_samples(cls, v):
        """Increasing times and values of one common dimension"""
        ts = [t for t, _ in v]
        if not _finite(ts) or any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("sample times must be finite and strictly increasing")
        dims = {len(x) for _, x in v}
        if len(dims) != 1 or 0 in dims:
            raise ValueError("sample values must share one non-zero dimension")
        return v

    def to_curve(self) -> PlCurve:
        ts = [t for t, _ in self.samples]
        values = [x for _, x in self.samples]
        if self.rescale:
            return PlCurve.from_samples(ts, values)
        return PlCurve(ts, values)
