"""
Grid-restricted dynamic-programming baseline.

Paths are restricted to a lattice that subdivides every piece of both
partitions into r equal parts, and move between lattice points by a fixed
set of integer steps. Each move is scored with the exact inner-product
contribution of the straight chord it draws in I x I, so the DP optimum is
the value of an admissible matching and never exceeds the exact optimum.
"""
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Tuple

import numpy as np

from elastic_match.errors import MatchError
from elastic_match.logger import setup_logger
from elastic_match.matching.curves import StepSrvf
from elastic_match.matching.exact_match import MatchResult, Point, finalize_match
from elastic_match.matching.grid import WeightGrid, build_grid

logger = setup_logger(__name__)

DEFAULT_MOVES: FrozenSet[Tuple[int, int]] = frozenset(
    [(a, b) for a in range(1, 4) for b in range(1, 4)] + [(1, 0), (0, 1)]
)


@dataclass(frozen=True)
class DpConfig:
    """
    Lattice refinement and move set of the baseline

    Attributes:
        refinement: number of equal parts each piece is split into
        moves: lattice steps (a, b), both non-negative and not both zero
    """
    refinement: int = 1
    moves: FrozenSet[Tuple[int, int]] = field(default=DEFAULT_MOVES)

    def __post_init__(self):
        if int(self.refinement) != self.refinement or self.refinement < 1:
            raise ValueError(f"refinement must be a positive integer, got {self.refinement}")
        moves = frozenset((int(a), int(b)) for a, b in self.moves)
        if any(a < 0 or b < 0 or (a, b) == (0, 0) for a, b in moves):
            raise ValueError("moves must be monotone and non-zero")
        if (1, 1) not in moves:
            raise ValueError("move set must contain (1, 1)")
        object.__setattr__(self, "moves", moves)


@dataclass(frozen=True)
class DpSegment:
    """One lattice move; a straight chord in I x I"""
    start: Point
    end: Point
    value: float
    kind: str = field(default="DP", init=False)

    @property
    def points(self) -> Tuple[Point, Point]:
        return self.start, self.end


def _lattice(breaks: np.ndarray, r: int) -> np.ndarray:
    steps = np.arange(r) / r
    inner = (breaks[:-1, None] + np.diff(breaks)[:, None] * steps[None, :]).ravel()
    return np.append(inner, breaks[-1])


def chord_value(grid: WeightGrid, p0: Point, p1: Point) -> float:
    """
    Exact inner-product contribution of the straight chord from p0 to p1

    The chord is split where it crosses grid lines; each piece inside block
    (i, j) contributes W[i, j] * sqrt(ds) * sqrt(dt), negative weights
    included. Axis-parallel chords are worth 0.
    """
    (s0, t0), (s1, t1) = p0, p1
    if s1 < s0 or t1 < t0:
        raise ValueError("chord must be monotone")
    span_s, span_t = s1 - s0, t1 - t0
    if span_s == 0 or span_t == 0:
        return 0.0

    s_lines = grid.s_breaks[(grid.s_breaks > s0) & (grid.s_breaks < s1)]
    t_lines = grid.t_breaks[(grid.t_breaks > t0) & (grid.t_breaks < t1)]
    lam = np.unique(np.concatenate([[0.0, 1.0], (s_lines - s0) / span_s, (t_lines - t0) / span_t]))
    dlam = np.diff(lam)
    mid = 0.5 * (lam[:-1] + lam[1:])
    i = np.clip(np.searchsorted(grid.s_breaks, s0 + mid * span_s, side="right") - 1, 0, grid.m - 1)
    j = np.clip(np.searchsorted(grid.t_breaks, t0 + mid * span_t, side="right") - 1, 0, grid.n - 1)
    return float(np.sum(grid.W[i, j] * dlam) * np.sqrt(span_s) * np.sqrt(span_t))


def dp_match(q1: StepSrvf, q2: StepSrvf, cfg: DpConfig = None,
             grid: Optional[WeightGrid] = None) -> MatchResult:
    """
    Best lattice path under the move set

    Args:
        q1, q2: SRVFs of the two curves
        cfg: refinement and move set; defaults to DpConfig()
        grid: weight grid of q1 and q2 when the caller already built it

    Returns:
        MatchResult with engine "dp"

    Raises:
        DimensionMismatchError, FlatPieceError: invalid inputs
    """
    cfg = cfg or DpConfig()
    grid = grid if grid is not None else build_grid(q1, q2)
    xs = _lattice(grid.s_breaks, cfg.refinement)
    ys = _lattice(grid.t_breaks, cfg.refinement)
    nx, ny = len(xs), len(ys)
    moves = sorted(cfg.moves)
    logger.info(f"DP matching on a {nx}x{ny} lattice with {len(moves)} moves (refinement {cfg.refinement})")

    score = np.full((nx, ny), -np.inf)
    traceback = np.full((nx, ny), -1, dtype=np.int16)
    score[0, 0] = 0.0

    # Row by row so that every predecessor is final before it is used
    for j in range(ny):
        for i in range(nx):
            if i == 0 and j == 0:
                continue
            best, best_move = -np.inf, -1
            for k, (a, b) in enumerate(moves):
                pi, pj = i - a, j - b
                if pi < 0 or pj < 0 or score[pi, pj] == -np.inf:
                    continue
                value = score[pi, pj] + chord_value(grid, (xs[pi], ys[pj]), (xs[i], ys[j]))
                if value > best:
                    best, best_move = value, k
            score[i, j] = best
            traceback[i, j] = best_move

    if score[-1, -1] == -np.inf:
        raise MatchError("move set cannot reach (1, 1) on this lattice")

    # Trace back from (1, 1)
    i, j = nx - 1, ny - 1
    path: List[DpSegment] = []
    while i > 0 or j > 0:
        a, b = moves[traceback[i, j]]
        start = (float(xs[i - a]), float(ys[j - b]))
        end = (float(xs[i]), float(ys[j]))
        path.append(DpSegment(start, end, float(score[i, j] - score[i - a, j - b])))
        i, j = i - a, j - b
    path.reverse()

    result = finalize_match(q1, q2, tuple(path), float(score[-1, -1]), "dp")
    logger.info(f"DP matching done: value={result.value:.12g} distance={result.distance:.12g}")
    return result
