"""
The matching grid on I x I.

Indexing: documentation of the matching theory counts pieces from 1, the
code counts from 0. Block (i, j) here is the rectangle
[s_i, s_{i+1}] x [t_j, t_{j+1}], i.e. the 1-based block G_{i+1, j+1}, and
W[i, j] = u_i . v_j where u_i is the i-th piece of q1 (horizontal, s axis)
and v_j the j-th piece of q2 (vertical, t axis). Vertices are (i, j) with
0 <= i <= m, 0 <= j <= n and sit at (s_i, t_j).
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, NamedTuple

import numpy as np

from elastic_match.errors import DimensionMismatchError, FlatPieceError
from elastic_match.matching.curves import StepSrvf


class GridLists(NamedTuple):
    """Plain-float copies of the grid for the tracing hot loops"""
    W: List[List[float]]
    ds: List[float]
    dt: List[float]
    s: List[float]
    t: List[float]


def rect_value(w: float, ds: float, dt: float) -> float:
    """Inner-product contribution of a straight traversal of a ds x dt rectangle of weight w"""
    if ds < 0 or dt < 0:
        raise ValueError("rectangle sides must be non-negative")
    return float(w * np.sqrt(ds) * np.sqrt(dt))


@dataclass(frozen=True)
class WeightGrid:
    """
    Partitions of both SRVFs and the weight matrix W

    Weights equal to zero count as non-positive.
    """
    s_breaks: np.ndarray
    t_breaks: np.ndarray
    u: np.ndarray
    v: np.ndarray
    W: np.ndarray = field(init=False)
    positive: np.ndarray = field(init=False, repr=False)
    _prefix: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        W = self.u @ self.v.T
        positive = W > 0
        prefix = np.zeros((W.shape[0] + 1, W.shape[1] + 1), dtype=np.int64)
        prefix[1:, 1:] = np.cumsum(np.cumsum(positive, axis=0), axis=1)
        for name, value in (("W", W), ("positive", positive), ("_prefix", prefix)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @property
    def m(self) -> int:
        return self.W.shape[0]

    @property
    def n(self) -> int:
        return self.W.shape[1]

    @property
    def ds(self) -> np.ndarray:
        return np.diff(self.s_breaks)

    @property
    def dt(self) -> np.ndarray:
        return np.diff(self.t_breaks)

    @cached_property
    def lists(self) -> GridLists:
        return GridLists(
            self.W.tolist(), self.ds.tolist(), self.dt.tolist(),
            self.s_breaks.tolist(), self.t_breaks.tolist(),
        )

    def has_block(self, i: int, j: int) -> bool:
        return 0 <= i < self.m and 0 <= j < self.n

    def vertex_point(self, i: int, j: int):
        return float(self.s_breaks[i]), float(self.t_breaks[j])

    def count_positive(self, i_lo: int, i_hi: int, j_lo: int, j_hi: int) -> int:
        """Number of positive blocks with i_lo <= i <= i_hi and j_lo <= j <= j_hi, clipped to the grid"""
        i_lo, j_lo = max(i_lo, 0), max(j_lo, 0)
        i_hi, j_hi = min(i_hi, self.m - 1), min(j_hi, self.n - 1)
        if i_lo > i_hi or j_lo > j_hi:
            return 0
        p = self._prefix
        return int(p[i_hi + 1, j_hi + 1] - p[i_lo, j_hi + 1] - p[i_hi + 1, j_lo] + p[i_lo, j_lo])

    def transpose(self) -> "WeightGrid":
        return WeightGrid(self.t_breaks, self.s_breaks, self.v, self.u)

    def to_dump(self) -> Dict[str, List]:
        return {
            "s_breaks": self.s_breaks.tolist(),
            "t_breaks": self.t_breaks.tolist(),
            "W": self.W.tolist(),
        }


def build_grid(q1: StepSrvf, q2: StepSrvf) -> WeightGrid:
    """
    Build the weight grid of two nowhere-zero step functions

    Raises:
        DimensionMismatchError: q1 and q2 live in different dimensions
        FlatPieceError: either function has a zero piece
    """
    if q1.dim != q2.dim:
        raise DimensionMismatchError(f"dimension mismatch: {q1.dim} vs {q2.dim}")
    if not (q1.is_nowhere_zero and q2.is_nowhere_zero):
        raise FlatPieceError("flat piece not allowed")
    return WeightGrid(
        np.array(q1.breakpoints), np.array(q2.breakpoints),
        np.array(q1.pieces), np.array(q2.pieces),
    )
