"""
Exact optimal matching of two step functions.

An optimal matching can always be written as a path in I x I made of
P-segments (vertex to vertex, diagonal in positive blocks with squared
weight-ratio slope changes, axis-parallel in non-positive blocks) and
N-segments (horizontal then vertical through non-positive blocks), with no
two N-segments in a row and a slope constraint at each junction between
consecutive P-segments. This module enumerates those pieces and sweeps the
grid vertices row by row keeping the best path into each vertex.

Vertex and block indices are 0-based; see grid.py for the convention.

P-segment enumeration works on a straightened picture of the grid: each
column and row the trace enters gets a scale chosen so that the trace is a
straight ray of its initial slope h from the start vertex. Columns crossed
horizontally and rows crossed vertically get scale 0. A vertex (k, l) with
straightened coordinates (X, Y) is hit exactly at h = Y / X, which gives
every vertex-hitting initial slope without probing.
"""
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from elastic_match.config import settings
from elastic_match.errors import MatchError
from elastic_match.logger import setup_logger
from elastic_match.matching.curves import PlReparam, StepSrvf
from elastic_match.matching.grid import WeightGrid, build_grid, rect_value
from elastic_match.matching.quotient import group_action, inner, norm_sq

logger = setup_logger(__name__)

Vertex = Tuple[int, int]
Point = Tuple[float, float]

INF = math.inf
_EPS = np.finfo(float).eps

# Traversal modes inside a block
DIAGONAL, HORIZONTAL, VERTICAL = "D", "H", "V"


@dataclass(frozen=True)
class Slope:
    """
    dy/dx stored as a pair so that 0 = (0, 1) and infinity = (1, 0) are exact

    Normalized so that max(dy, dx) = 1.
    """
    dy: float
    dx: float

    def __post_init__(self):
        if self.dy < 0 or self.dx < 0 or (self.dy == 0 and self.dx == 0):
            raise ValueError(f"invalid slope ({self.dy}, {self.dx})")
        top = max(self.dy, self.dx)
        object.__setattr__(self, "dy", self.dy / top)
        object.__setattr__(self, "dx", self.dx / top)

    @classmethod
    def of(cls, h: float) -> "Slope":
        if h == INF:
            return cls(1.0, 0.0)
        return cls(h, 1.0)

    @property
    def value(self) -> float:
        return INF if self.dx == 0 else self.dy / self.dx

    @property
    def is_zero(self) -> bool:
        return self.dy == 0

    @property
    def is_infinite(self) -> bool:
        return self.dx == 0


@dataclass(frozen=True)
class PSegment:
    """
    Vertex-to-vertex piece of a matching path through at least one positive block

    points holds the start vertex, one point per block-boundary crossing and
    the end vertex; blocks[k] and slopes[k] describe the piece from
    points[k] to points[k + 1].
    """
    start: Vertex
    end: Vertex
    points: Tuple[Point, ...]
    blocks: Tuple[Vertex, ...]
    slopes: Tuple[Slope, ...]
    value: float
    kind: str = field(default="P", init=False)

    @property
    def initial_slope(self) -> float:
        return self.slopes[0].value

    @property
    def final_slope(self) -> float:
        return self.slopes[-1].value


@dataclass(frozen=True)
class NSegment:
    """Horizontal run to the corner, then vertical run to the end; worth 0"""
    start: Vertex
    corner: Vertex
    end: Vertex
    points: Tuple[Point, ...]
    value: float = 0.0
    kind: str = field(default="N", init=False)


Segment = Union[PSegment, NSegment]


@dataclass(frozen=True)
class MatchResult:
    """
    An optimal (or baseline) matching path with its reparametrization pair

    value is the inner product of q1 * gamma1 and q2 * gamma2 computed by
    exact integration; path_value is the sum of the segment values.
    """
    path: Tuple[Segment, ...]
    gamma1: PlReparam
    gamma2: PlReparam
    value: float
    distance: float
    path_value: float
    engine: str = "exact"
    pareto: bool = False


@dataclass(frozen=True)
class MuInterval:
    """Admissible range of sqrt(H_next / H_prev) at a junction; lo > hi means empty"""
    lo: float
    hi: float

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi * (1.0 + settings.target_tol)

    def slope_range(self, h_prev: float) -> Tuple[float, float]:
        hi = INF if self.hi == INF else self.hi ** 2 * h_prev
        return self.lo ** 2 * h_prev, hi

    def contains(self, mu: float, slack: float = 1e-9) -> bool:
        return self.lo * (1.0 - slack) <= mu <= (INF if self.hi == INF else self.hi * (1.0 + slack))


def mu_interval(A: float, B: float, C: float, D: float) -> MuInterval:
    """
    Junction constraint between consecutive P-segments

    A: weight of the block where the first P-segment ends
    B: weight of the block where the next one begins
    C: weight of the block above A's column and B's row
    D: weight of the block in B's column and A's row

    Raises:
        MatchError: A or B is not positive
    """
    if A <= 0 or B <= 0:
        raise MatchError(f"junction weights must be positive, got A={A}, B={B}")
    lo = D * D / (A * B) if D > 0 else 0.0
    hi = A * B / (C * C) if C > 0 else INF
    return MuInterval(lo, hi)


# ============================================================================
# Tracing
# ============================================================================

@dataclass
class _Trace:
    """Raw trace in straightened coordinates"""
    start: Vertex
    h: float
    # (kind, gridline index, row or column index, entered block or None, entered mode)
    events: List[tuple]
    # (ratio, event order, vertex)
    candidates: List[Tuple[float, int, Vertex]]
    # (number of events before the hit, vertex)
    hit: Optional[Tuple[int, Vertex]]
    sx: List[float]
    ty: List[float]
    a: List[float]
    b: List[float]


def _run_trace(grid: WeightGrid, start: Vertex, h: float, stop_at_vertex: bool,
               target: Optional[Vertex] = None) -> _Trace:
    """
    Follow the slope-transition rules from start with initial slope h

    With stop_at_vertex the trace ends at the first vertex it meets.
    Otherwise vertices are passed on their upper-left side, which is the
    limit of traces with slopes just above h, and the trace runs until it
    leaves through s = 1 or t = 1.
    """
    W, ds, dt, _, _ = grid.lists
    m, n = grid.m, grid.n
    tol, target_tol = settings.tol, settings.target_tol
    i0, j0 = start

    sx = [0.0] * (m + 1)
    ty = [0.0] * (n + 1)
    a = [0.0] * m
    b = [0.0] * n
    c, r = i0, j0
    a[c] = b[r] = 1.0
    sx[c + 1] = ds[c]
    ty[r + 1] = dt[r]
    mode = DIAGONAL
    ref_c, ref_r = c, r

    events: List[tuple] = []
    candidates: List[Tuple[float, int, Vertex]] = []
    hit = None

    while True:
        if mode == DIAGONAL:
            y_right = h * sx[c + 1]
            top = ty[r + 1]
            rel = target_tol if target == (c + 1, r + 1) else tol
            slack = rel * max(top - ty[r], h * (sx[c + 1] - sx[c])) + 8.0 * _EPS * abs(top)
            diff = y_right - top
            if abs(diff) <= slack:
                if hit is None:
                    hit = (len(events), (c + 1, r + 1))
                if stop_at_vertex:
                    break
                go_top = True
            else:
                go_top = diff > 0
        else:
            go_top = mode == VERTICAL

        if go_top:
            l = r + 1
            ratio = ty[l] / sx[c] if sx[c] > 0 else INF
            candidates.append((ratio, len(events), (c, l)))
            if l == n:
                events.append(("h", l, c, None, None))
                break
            w_new = W[c][l]
            if w_new > 0:
                w_ref = W[ref_c][ref_r]
                b[l] = b[ref_r] * (w_new / w_ref) ** 2
                mode = DIAGONAL
                ref_c, ref_r = c, l
            else:
                b[l] = 0.0
                mode = VERTICAL
            ty[l + 1] = ty[l] + b[l] * dt[l]
            r = l
            events.append(("h", l, c, (c, r), mode))
        else:
            k = c + 1
            candidates.append((ty[r + 1] / sx[k], len(events), (k, r + 1)))
            if k == m:
                events.append(("v", k, r, None, None))
                break
            w_new = W[k][r]
            if w_new > 0:
                w_ref = W[ref_c][ref_r]
                a[k] = a[ref_c] * (w_new / w_ref) ** 2
                mode = DIAGONAL
                ref_c, ref_r = k, r
            else:
                a[k] = 0.0
                mode = HORIZONTAL
            sx[k + 1] = sx[k] + a[k] * ds[k]
            c = k
            events.append(("v", k, r, (c, r), mode))

    return _Trace(start, h, events, candidates, hit, sx, ty, a, b)


def _event_point(grid: WeightGrid, trace: _Trace, event: tuple) -> Point:
    """Real coordinates of a gridline crossing"""
    _, _, _, s, t = grid.lists
    kind, line, index = event[0], event[1], event[2]
    h = trace.h
    if kind == "v":
        row = index
        y = t[row] + (h * trace.sx[line] - trace.ty[row]) / trace.b[row]
        return s[line], min(max(y, t[row]), t[row + 1])
    col = index
    x = s[col] + (trace.ty[line] / h - trace.sx[col]) / trace.a[col]
    return min(max(x, s[col]), s[col + 1]), t[line]


def _assemble(grid: WeightGrid, trace: _Trace, n_events: int, end_point: Point):
    """Points, blocks, slopes and value of the first n_events crossings plus the end point"""
    W = grid.lists.W
    start_point = grid.vertex_point(*trace.start)
    points = [start_point]
    blocks = [trace.start]
    modes = [DIAGONAL]
    for event in trace.events[:n_events]:
        points.append(_event_point(grid, trace, event))
        blocks.append(event[3])
        modes.append(event[4])
    points.append(end_point)

    slopes = []
    value = 0.0
    for k, ((c, r), mode) in enumerate(zip(blocks, modes)):
        if mode == DIAGONAL:
            slopes.append(Slope.of(trace.h * trace.a[c] / trace.b[r]))
            d_s = max(points[k + 1][0] - points[k][0], 0.0)
            d_t = max(points[k + 1][1] - points[k][1], 0.0)
            value += rect_value(W[c][r], d_s, d_t)
        elif mode == HORIZONTAL:
            slopes.append(Slope(0.0, 1.0))
        else:
            slopes.append(Slope(1.0, 0.0))
    return tuple(points), tuple(blocks), tuple(slopes), value


def _segment_from_trace(grid: WeightGrid, trace: _Trace) -> PSegment:
    n_events, vertex = trace.hit
    points, blocks, slopes, value = _assemble(grid, trace, n_events, grid.vertex_point(*vertex))
    return PSegment(trace.start, vertex, points, blocks, slopes, value)


@dataclass(frozen=True)
class TraceResult:
    """
    Outcome of following the slope rules from a vertex

    end_vertex is None when the trace leaves through s = 1 or t = 1 away
    from a vertex; points then ends at that exit point.
    """
    start: Vertex
    initial_slope: Slope
    points: Tuple[Point, ...]
    blocks: Tuple[Vertex, ...]
    slopes: Tuple[Slope, ...]
    value: float
    end_vertex: Optional[Vertex]

    @property
    def terminates(self) -> bool:
        return self.end_vertex is not None

    def to_segment(self) -> PSegment:
        if self.end_vertex is None:
            raise MatchError("trace does not end at a vertex")
        return PSegment(self.start, self.end_vertex, self.points, self.blocks, self.slopes, self.value)


def _check_start(grid: WeightGrid, start: Vertex):
    i, j = start
    if not grid.has_block(i, j) or grid.W[i, j] <= 0:
        raise MatchError(f"block above-right of vertex {start} must exist and have positive weight")


def trace_p_segment(grid: WeightGrid, start: Vertex, h0: Union[Slope, float]) -> TraceResult:
    """
    Deterministic trace from start with initial slope h0

    Args:
        grid: the weight grid
        start: start vertex (i, j); block (i, j) must have positive weight
        h0: initial slope, strictly positive and finite

    Returns:
        TraceResult, terminating if the trace meets a vertex

    Raises:
        MatchError: the start block is not positive
    """
    h = h0.value if isinstance(h0, Slope) else float(h0)
    if not 0 < h < INF:
        raise ValueError(f"initial slope must be positive and finite, got {h}")
    _check_start(grid, start)
    trace = _run_trace(grid, start, h, stop_at_vertex=True)
    if trace.hit is not None:
        n_events, vertex = trace.hit
        end_point, end_vertex = grid.vertex_point(*vertex), vertex
    else:
        n_events = len(trace.events) - 1
        end_point, end_vertex = _event_point(grid, trace, trace.events[-1]), None
    points, blocks, slopes, value = _assemble(grid, trace, n_events, end_point)
    return TraceResult(start, Slope.of(h), points, blocks, slopes, value, end_vertex)


def _next_candidate(trace: _Trace, threshold: float) -> Optional[Tuple[float, Vertex]]:
    """Smallest finite vertex ratio above threshold; near-ties go to the vertex met first"""
    tol = settings.tol
    best = None
    for ratio, _, vertex in trace.candidates:
        if not threshold < ratio < INF:
            continue
        if best is None or ratio < best[0] * (1.0 - tol):
            best = (ratio, vertex)
    return best


def enumerate_p_segments(grid: WeightGrid, start: Vertex,
                         slope_range: Tuple[float, float] = (0.0, INF)) -> List[PSegment]:
    """
    All P-segments from start whose initial slope lies in slope_range

    Starting at the low end of the range, each trace yields the exact
    initial slope at which the next vertex is met; the trace at that slope
    gives the segment and the candidates for the one after it.

    Returns:
        Segments in increasing order of initial slope
    """
    lo, hi = slope_range
    i, j = start
    if not grid.has_block(i, j) or grid.W[i, j] <= 0:
        logger.debug(f"No P-segments from {start}: block above-right is not positive")
        return []
    slack = settings.target_tol
    if lo > hi * (1.0 + slack):
        return []
    lo_ok, hi_ok = lo * (1.0 - slack), hi * (1.0 + slack)

    segments: List[PSegment] = []
    h = lo_ok
    target = None
    for _ in range((grid.m + 1) * (grid.n + 1) + 2):
        trace = _run_trace(grid, start, h, stop_at_vertex=False, target=target)
        if trace.hit is not None and h > 0 and lo_ok <= h <= hi_ok:
            segments.append(_segment_from_trace(grid, trace))
        nxt = _next_candidate(trace, h * (1.0 + settings.tol))
        if nxt is None or nxt[0] > hi_ok:
            break
        h, target = nxt
    else:
        logger.warning(f"Searchlight from {start} stopped at the iteration limit")

    logger.debug(f"Searchlight from {start} in [{lo:.6g}, {hi:.6g}]: {len(segments)} P-segment(s)")
    return segments


def enumerate_n_segments(grid: WeightGrid, start: Vertex, live_only: bool = False) -> List[NSegment]:
    """
    All N-segments from start, in sweep order of their end vertex

    With live_only, ends from which no P-segment can leave are dropped
    unless the end is (1, 1); two N-segments never follow each other, so
    a path cannot continue from them.

    The end (i1, j1) is admissible when every block (i, j) with
    i0 <= i < i1, j0 - 1 <= j <= j1 and every block with
    i0 - 1 <= i <= i1, j0 <= j < j1 is non-positive; blocks outside the grid
    are ignored.
    """
    i0, j0 = start
    m, n = grid.m, grid.n
    P = grid._prefix
    I1 = np.arange(i0, m + 1)[:, None]
    J1 = np.arange(j0, n + 1)[None, :]

    # columns i0..i1-1, rows j0-1..j1
    jl = max(j0 - 1, 0)
    jh = np.minimum(J1, n - 1) + 1
    first = P[I1, jh] - P[i0, jh] - P[I1, jl] + P[i0, jl]
    # columns i0-1..i1, rows j0..j1-1
    il = max(i0 - 1, 0)
    ih = np.minimum(I1, m - 1) + 1
    second = P[ih, J1] - P[il, J1] - P[ih, j0] + P[il, j0]

    ok = (first == 0) & (second == 0)
    ok[0, 0] = False
    if live_only:
        inside = (I1 < m) & (J1 < n)
        positive = grid.positive[np.minimum(I1, m - 1), np.minimum(J1, n - 1)]
        ok &= (inside & positive) | ((I1 == m) & (J1 == n))
    s, t = grid.lists.s, grid.lists.t
    segments = []
    for dj, di in sorted(zip(*np.nonzero(ok.T))):
        i1, j1 = i0 + int(di), j0 + int(dj)
        pts = [(s[i0], t[j0])]
        if i1 > i0:
            pts.append((s[i1], t[j0]))
        if j1 > j0:
            pts.append((s[i1], t[j1]))
        segments.append(NSegment(start, (i1, j0), (i1, j1), tuple(pts)))
    return segments


# ============================================================================
# Vertex sweep
# ============================================================================

@dataclass(frozen=True)
class _State:
    value: float
    slope: float
    anchor: Optional[Vertex]
    last: str
    segment: Optional[Segment]
    prev: Optional["_State"]


def _slope_range(grid: WeightGrid, state: _State, vertex: Vertex) -> Optional[Tuple[float, float]]:
    """Admissible initial slopes for a P-segment leaving vertex, None if empty"""
    if state.anchor is None:
        return 0.0, INF
    W = grid.lists.W
    (ai, aj), (i, j) = state.anchor, vertex
    interval = mu_interval(W[ai - 1][aj - 1], W[i][j], W[ai - 1][j], W[i][aj - 1])
    if interval.is_empty:
        return None
    return interval.slope_range(state.slope)


def _in_range(h: float, rng: Tuple[float, float]) -> bool:
    slack = settings.target_tol
    return rng[0] * (1.0 - slack) <= h <= rng[1] * (1.0 + slack)


class _Table:
    """Per-vertex DP states: one best state, or the best per (anchor, slope, last) key"""

    def __init__(self, pareto: bool):
        self.pareto = pareto
        self.states: Dict[Vertex, Dict[tuple, _State]] = {}

    def offer(self, vertex: Vertex, state: _State) -> bool:
        bucket = self.states.setdefault(vertex, {})
        key = (state.anchor, float(f"{state.slope:.12g}"), state.last) if self.pareto else ()
        current = bucket.get(key)
        margin = settings.value_tol * max(1.0, abs(current.value)) if current else 0.0
        if current is None or state.value > current.value + margin:
            bucket[key] = state
            return True
        return False

    def at(self, vertex: Vertex) -> List[_State]:
        return list(self.states.get(vertex, {}).values())


def _sweep(grid: WeightGrid, pareto: bool) -> Optional[_State]:
    m, n = grid.m, grid.n
    W = grid.lists.W
    table = _Table(pareto)
    table.offer((0, 0), _State(0.0, 0.0, None, "", None, None))

    for j in range(n + 1):
        for i in range(m + 1):
            vertex = (i, j)
            states = table.at(vertex)
            if not states or vertex == (m, n):
                continue

            if i < m and j < n and W[i][j] > 0:
                if pareto:
                    ranges = [(st, _slope_range(grid, st, vertex)) for st in states]
                    ranges = [(st, rng) for st, rng in ranges if rng is not None]
                    if not ranges:
                        continue
                    lo = min(rng[0] for _, rng in ranges)
                    hi = max(rng[1] for _, rng in ranges)
                    segments = enumerate_p_segments(grid, vertex, (lo, hi))
                    for st, rng in ranges:
                        for seg in segments:
                            if _in_range(seg.initial_slope, rng):
                                table.offer(seg.end, _State(st.value + seg.value, seg.final_slope,
                                                            seg.end, "P", seg, st))
                else:
                    st = states[0]
                    rng = _slope_range(grid, st, vertex)
                    if rng is None:
                        continue
                    for seg in enumerate_p_segments(grid, vertex, rng):
                        table.offer(seg.end, _State(st.value + seg.value, seg.final_slope,
                                                    seg.end, "P", seg, st))
            else:
                open_states = [st for st in states if st.last != "N"]
                if not open_states:
                    continue
                for seg in enumerate_n_segments(grid, vertex, live_only=True):
                    for st in open_states:
                        table.offer(seg.end, _State(st.value, st.slope, st.anchor, "N", seg, st))

    finals = table.at((m, n))
    if not finals:
        return None
    return max(finals, key=lambda st: st.value)


def _backtrack(state: _State) -> Tuple[Segment, ...]:
    path = []
    while state is not None and state.segment is not None:
        path.append(state.segment)
        state = state.prev
    return tuple(reversed(path))


def extract_reparams(path: Sequence) -> Tuple[PlReparam, PlReparam]:
    """
    Reparametrization pair traced out by a path from (0, 0) to (1, 1)

    The common parameter is z = (s + t) / 2, i.e. proportional to the
    Manhattan length along the path. Corners of N-segments become knots.
    """
    pts = [(0.0, 0.0)]
    for segment in path:
        pts.extend(segment.points)
    pts.append((1.0, 1.0))
    z_knots, s_knots, t_knots = [], [], []
    for s, t in pts:
        z = 0.5 * (s + t)
        if z_knots and z - z_knots[-1] <= settings.knot_tol:
            continue
        z_knots.append(z)
        s_knots.append(s)
        t_knots.append(t)
    z_knots[-1] = s_knots[-1] = t_knots[-1] = 1.0
    s_knots = np.maximum.accumulate(np.clip(s_knots, 0.0, 1.0))
    t_knots = np.maximum.accumulate(np.clip(t_knots, 0.0, 1.0))
    return PlReparam(np.array(z_knots), s_knots), PlReparam(np.array(z_knots), t_knots)


def finalize_match(q1: StepSrvf, q2: StepSrvf, path: Tuple[Segment, ...], path_value: float,
                   engine: str, pareto: bool = False) -> MatchResult:
    """Extract gammas from a path, recompute its value exactly and package the result"""
    gamma1, gamma2 = extract_reparams(path)
    value = inner(group_action(q1, gamma1), group_action(q2, gamma2))
    if abs(value - path_value) > 1e-9 * max(1.0, abs(value)):
        logger.warning(f"Path value {path_value:.15g} differs from recomputed value {value:.15g}")
    distance = math.sqrt(max(norm_sq(q1) + norm_sq(q2) - 2.0 * value, 0.0))
    return MatchResult(path, gamma1, gamma2, value, distance, path_value, engine, pareto)


def optimal_match(q1: StepSrvf, q2: StepSrvf, pareto: Optional[bool] = None,
                  grid: Optional[WeightGrid] = None) -> MatchResult:
    """
    Globally optimal matching of two nowhere-zero step functions

    Args:
        q1, q2: SRVFs of the two curves
        pareto: keep every (anchor, slope, last segment) state per vertex
            instead of the single best; defaults to settings.pareto
        grid: weight grid of q1 and q2 when the caller already built it

    Returns:
        MatchResult with the canonical path, gamma pair, value and distance

    Raises:
        DimensionMismatchError, FlatPieceError: invalid inputs
        MatchError: no canonical path reaches (1, 1)
    """
    pareto = settings.pareto if pareto is None else pareto
    grid = grid if grid is not None else build_grid(q1, q2)
    logger.info(f"Exact matching on a {grid.m}x{grid.n} grid ({'pareto' if pareto else 'single-best'} states)")

    final = _sweep(grid, pareto)
    if final is None and not pareto:
        logger.warning("Single-best sweep did not reach (1, 1); rerunning with Pareto states")
        pareto = True
        final = _sweep(grid, pareto)
    if final is None:
        raise MatchError("no canonical matching path reached (1, 1)")

    path = _backtrack(final)
    result = finalize_match(q1, q2, path, final.value, "exact", pareto)
    logger.info(f"Exact matching done: value={result.value:.12g} distance={result.distance:.12g}")
    return result


def match_distance(q1: StepSrvf, q2: StepSrvf, pareto: Optional[bool] = None) -> float:
    return optimal_match(q1, q2, pareto).distance


# ============================================================================
# Canonical-form audit
# ============================================================================

def _audit_p_segment(grid: WeightGrid, seg: PSegment, tol: float) -> List[str]:
    W = grid.lists.W
    issues = []
    (i0, j0), (i1, j1) = seg.start, seg.end
    if grid.vertex_point(i0, j0) != seg.points[0] or grid.vertex_point(i1, j1) != seg.points[-1]:
        issues.append(f"P-segment {seg.start}->{seg.end} does not start and end at its vertices")
    if seg.blocks[0] != (i0, j0) or W[i0][j0] <= 0:
        issues.append(f"P-segment {seg.start}->{seg.end} does not start in a positive block")
    if seg.blocks[-1] != (i1 - 1, j1 - 1) or W[i1 - 1][j1 - 1] <= 0:
        issues.append(f"P-segment {seg.start}->{seg.end} does not end in a positive block")

    ref = None
    for k, ((c, r), slope) in enumerate(zip(seg.blocks, seg.slopes)):
        w = W[c][r]
        (x0, y0), (x1, y1) = seg.points[k], seg.points[k + 1]
        if w > 0:
            if slope.is_zero or slope.is_infinite:
                issues.append(f"axis-parallel piece in positive block {(c, r)}")
            elif abs((y1 - y0) - slope.value * (x1 - x0)) > tol * max(1.0, slope.value):
                issues.append(f"piece in block {(c, r)} does not follow its slope")
        if k > 0:
            pc, pr = seg.blocks[k - 1]
            vertical = (c, r) == (pc + 1, pr)
            horizontal = (c, r) == (pc, pr + 1)
            if not (vertical or horizontal):
                issues.append(f"blocks {(pc, pr)} -> {(c, r)} are not adjacent")
            elif w > 0 and ref is not None:
                rc, rr = ref
                factor = (w / W[rc][rr]) ** 2
                expected = ref_slope * factor if vertical else ref_slope / factor
                if abs(slope.value - expected) > tol * expected:
                    issues.append(f"slope transition into block {(c, r)} is {slope.value:.12g}, "
                                  f"expected {expected:.12g}")
            elif vertical and not slope.is_zero:
                issues.append(f"non-positive block {(c, r)} entered from the left is not horizontal")
            elif horizontal and not slope.is_infinite:
                issues.append(f"non-positive block {(c, r)} entered from below is not vertical")
        if w > 0:
            ref, ref_slope = (c, r), slope.value
    return issues


def _audit_n_segment(grid: WeightGrid, seg: NSegment) -> List[str]:
    (i0, j0), (i1, j1) = seg.start, seg.end
    if seg.corner != (i1, j0) or i1 < i0 or j1 < j0:
        return [f"N-segment {seg.start}->{seg.end} is not horizontal-then-vertical"]
    if grid.count_positive(i0, i1 - 1, j0 - 1, j1) or grid.count_positive(i0 - 1, i1, j0, j1 - 1):
        return [f"N-segment {seg.start}->{seg.end} borders a positive block"]
    return []


def audit_path(grid: WeightGrid, path: Union[MatchResult, Sequence[Segment]], tol: float = 1e-9) -> List[str]:
    """
    Check a path (or the path of a MatchResult) against the canonical form of optimal matchings

    Returns:
        Human-readable violations; empty when the path passes
    """
    if isinstance(path, MatchResult):
        path = path.path
    W = grid.lists.W
    issues: List[str] = []
    if not path:
        return ["empty path"]
    if path[0].start != (0, 0) or path[-1].end != (grid.m, grid.n):
        issues.append("path does not run from (0, 0) to (1, 1)")

    last_p: Optional[PSegment] = None
    for k, seg in enumerate(path):
        if k > 0 and path[k - 1].end != seg.start:
            issues.append(f"segments {k - 1} and {k} are not contiguous")
        if isinstance(seg, NSegment):
            if k > 0 and isinstance(path[k - 1], NSegment):
                issues.append(f"consecutive N-segments at position {k}")
            issues.extend(_audit_n_segment(grid, seg))
            continue
        if not isinstance(seg, PSegment):
            issues.append(f"segment {k} of kind {seg.kind!r} is neither P nor N")
            continue
        issues.extend(_audit_p_segment(grid, seg, tol))
        if last_p is not None:
            (ai, aj), (i, j) = last_p.end, seg.start
            interval = mu_interval(W[ai - 1][aj - 1], W[i][j], W[ai - 1][j], W[i][aj - 1])
            mu = math.sqrt(seg.initial_slope / last_p.final_slope)
            if not interval.contains(mu, tol):
                issues.append(f"junction at {seg.start}: mu={mu:.12g} outside "
                              f"[{interval.lo:.12g}, {interval.hi:.12g}]")
        last_p = seg

    if issues:
        logger.warning(f"Canonical-form audit found {len(issues)} issue(s)")
    return issues
