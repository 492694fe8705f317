"""
Result, request and error models using Pydantic

Every float is rounded to settings.json_digits significant digits when a
model is serialized, so the same inputs always give byte-identical JSON.
"""
from datetime import datetime, timezone
from typing import Any, List, Literal, Optional

from pydantic import BaseModel, Field, model_serializer

from elastic_match.config import settings
from elastic_match.matching.curves import PlReparam
from elastic_match.matching.grid import WeightGrid
from elastic_match.schemas.curve_io import CurveFile


def round_floats(data: Any, digits: int = None) -> Any:
    """Round every float in a nested structure to the given number of significant digits"""
    digits = settings.json_digits if digits is None else digits
    if isinstance(data, float):
        return float(f"{data:.{digits}g}")
    if isinstance(data, dict):
        return {k: round_floats(v, digits) for k, v in data.items()}
    if isinstance(data, (list, tuple)):
        return [round_floats(v, digits) for v in data]
    return data


class RoundedModel(BaseModel):
    """Base for models whose floats are rounded on output"""

    @model_serializer(mode="wrap")
    def _round(self, handler):
        return round_floats(handler(self))


# ============================================================================
# Matching Results
# ============================================================================

class SegmentModel(RoundedModel):
    """One piece of a matching path"""
    type: Literal["P", "N", "DP"]
    points: List[List[float]] = Field(..., description="[s, t] points along the segment")

    @classmethod
    def from_segment(cls, segment) -> "SegmentModel":
        return cls(type=segment.kind, points=[[float(s), float(t)] for s, t in segment.points])


class ReparamModel(RoundedModel):
    """Piecewise-linear reparametrization as [z, gamma(z)] knots"""
    knots: List[List[float]]
    strict: bool = Field(..., description="True when gamma is strictly increasing")

    @classmethod
    def from_reparam(cls, gamma: PlReparam) -> "ReparamModel":
        return cls(knots=gamma.knots.tolist(), strict=gamma.is_strict)

    def to_reparam(self) -> PlReparam:
        return PlReparam([z for z, _ in self.knots], [g for _, g in self.knots])


class GridDump(RoundedModel):
    """Partitions and weight matrix of a matching grid"""
    s_breaks: List[float]
    t_breaks: List[float]
    W: List[List[float]]

    @classmethod
    def from_grid(cls, grid: WeightGrid) -> "GridDump":
        return cls(**grid.to_dump())


class MatchReport(RoundedModel):
    """Optimal matching of two curves"""
    value: float = Field(..., description="Inner product of the matched SRVFs")
    distance: float = Field(..., description="Distance after alignment")
    before: float = Field(..., description="L2 distance of the SRVFs before alignment")
    engine: Literal["exact", "dp"]
    gamma1: ReparamModel
    gamma2: ReparamModel
    path: List[SegmentModel]
    grid: Optional[GridDump] = None


class DistanceReport(RoundedModel):
    """Distances before and after alignment"""
    before: float
    after: float
    value: float
    engine: Literal["exact", "dp"]


class GeodesicReport(RoundedModel):
    """Curves along the geodesic between matched SRVFs"""
    mode: Literal["linear", "sphere"]
    steps: int
    curves: List[CurveFile]


class DpComparisonReport(RoundedModel):
    """Exact and grid-restricted DP distances of the same pair"""
    before: float
    exact: float
    dp: float
    refinement: int
    label: str


# ============================================================================
# Worked Examples
# ============================================================================

class ExampleSummary(BaseModel):
    """Entry of the example listing"""
    id: str
    description: str
    samples: int


class ExampleReport(RoundedModel):
    """Distances of a closed-form example pair, with the caption values for reference"""
    id: str
    description: str
    samples: int
    before: float
    after: float
    caption_before: Optional[float] = None
    caption_after: Optional[float] = None
    engine: Literal["exact", "dp"]
    files: List[str] = Field(default_factory=list)


# ============================================================================
# API Requests
# ============================================================================

class PairRequest(BaseModel):
    """Two curves plus engine options"""
    curve1: CurveFile
    curve2: CurveFile
    engine: Literal["exact", "dp"] = Field(default="exact", description="Matching engine")
    dp_refine: int = Field(default=1, ge=1, le=16, description="Lattice refinement for the DP engine")
    pareto: bool = Field(default=False, description="Keep all slope states per vertex")
    normalize: bool = Field(default=False, description="Scale both curves to unit length first")


class GeodesicRequest(PairRequest):
    """Pair request plus geodesic sampling"""
    steps: int = Field(default=5, ge=2, le=100, description="Number of curves along the geodesic")
    mode: Literal["linear", "sphere"] = Field(default="linear", description="Geodesic in L2 or on the unit sphere")


# ============================================================================
# Error Response
# ============================================================================

class ErrorResponse(BaseModel):
    """Standard error response"""
    error: str
    detail: Optional[str] = None
    timestamp: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))
