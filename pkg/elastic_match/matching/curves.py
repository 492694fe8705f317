"""
Piecewise-linear curves, their square-root velocity functions, and
piecewise-linear reparametrizations.

All three types are immutable. Arrays are copied on construction and
marked read-only so values can be shared freely.
"""
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from elastic_match.config import settings
from elastic_match.errors import CurveError
from elastic_match.logger import setup_logger

logger = setup_logger(__name__)


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


def _check_partition(breakpoints: np.ndarray, what: str) -> np.ndarray:
    """Validate a partition of [0, 1] and snap its endpoints to exactly 0 and 1"""
    if breakpoints.ndim != 1 or breakpoints.size < 2:
        raise CurveError(f"{what}: need at least two breakpoints")
    if not np.all(np.isfinite(breakpoints)):
        raise CurveError(f"{what}: breakpoints must be finite")
    if abs(breakpoints[0]) > settings.knot_tol or abs(breakpoints[-1] - 1.0) > settings.knot_tol:
        raise CurveError(f"{what}: breakpoints must run from 0 to 1")
    breakpoints = breakpoints.copy()
    breakpoints[0], breakpoints[-1] = 0.0, 1.0
    if np.any(np.diff(breakpoints) <= 0):
        raise CurveError(f"{what}: breakpoints must be strictly increasing")
    return breakpoints


@dataclass(frozen=True)
class PlCurve:
    """
    Continuous piecewise-linear function I -> R^N

    Attributes:
        breakpoints: t_0 = 0 < t_1 < ... < t_m = 1
        values: (m+1, N) array, the curve value at each breakpoint
    """
    breakpoints: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        breakpoints = _check_partition(np.asarray(self.breakpoints, dtype=float), "curve")
        values = np.asarray(self.values, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        if values.ndim != 2 or values.shape[0] != breakpoints.size or values.shape[1] < 1:
            raise CurveError(
                f"curve: expected {breakpoints.size} values, got array of shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise CurveError("curve: values must be finite")
        object.__setattr__(self, "breakpoints", _frozen(breakpoints))
        object.__setattr__(self, "values", _frozen(values))

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @property
    def n_pieces(self) -> int:
        return self.breakpoints.size - 1

    @property
    def segment_vectors(self) -> np.ndarray:
        return np.diff(self.values, axis=0)

    @property
    def slopes(self) -> np.ndarray:
        return self.segment_vectors / np.diff(self.breakpoints)[:, None]

    def __call__(self, t) -> np.ndarray:
        """Evaluate the curve at one or more parameter values; returns shape (k, N)"""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        return np.column_stack([
            np.interp(t, self.breakpoints, self.values[:, d]) for d in range(self.dim)
        ])

    @classmethod
    def from_samples(cls, ts: Sequence[float], values) -> "PlCurve":
        """
        PL interpolant of (t, value) samples

        The sample range is mapped affinely onto [0, 1].

        Raises:
            CurveError: fewer than two samples or non-increasing sample times
        """
        ts = np.asarray(ts, dtype=float)
        if ts.ndim != 1 or ts.size < 2:
            raise CurveError("samples: need at least two sample times")
        span = ts[-1] - ts[0]
        if not span > 0:
            raise CurveError("samples: sample times must be increasing")
        return cls((ts - ts[0]) / span, values)


@dataclass(frozen=True)
class StepSrvf:
    """
    Step function I -> R^N: constant vector pieces[i] on (breakpoints[i], breakpoints[i+1])
    """
    breakpoints: np.ndarray
    pieces: np.ndarray

    def __post_init__(self):
        breakpoints = _check_partition(np.asarray(self.breakpoints, dtype=float), "step function")
        pieces = np.asarray(self.pieces, dtype=float)
        if pieces.ndim == 1:
            pieces = pieces[:, None]
        if pieces.ndim != 2 or pieces.shape[0] != breakpoints.size - 1 or pieces.shape[1] < 1:
            raise CurveError(
                f"step function: expected {breakpoints.size - 1} pieces, got shape {pieces.shape}"
            )
        if not np.all(np.isfinite(pieces)):
            raise CurveError("step function: pieces must be finite")
        object.__setattr__(self, "breakpoints", _frozen(breakpoints))
        object.__setattr__(self, "pieces", _frozen(pieces))

    @property
    def dim(self) -> int:
        return self.pieces.shape[1]

    @property
    def n_pieces(self) -> int:
        return self.pieces.shape[0]

    @property
    def lengths(self) -> np.ndarray:
        return np.diff(self.breakpoints)

    @property
    def zero_pieces(self) -> np.ndarray:
        """Mask of pieces that are exactly the zero vector"""
        return ~np.any(self.pieces != 0.0, axis=1)

    @property
    def is_nowhere_zero(self) -> bool:
        return not bool(np.any(self.zero_pieces))

    def piece_index(self, t) -> np.ndarray:
        """Index of the piece containing each t (right-continuous, last piece owns t=1)"""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        idx = np.searchsorted(self.breakpoints, t, side="right") - 1
        return np.clip(idx, 0, self.n_pieces - 1)

    def __call__(self, t) -> np.ndarray:
        return self.pieces[self.piece_index(t)]

    @classmethod
    def constant(cls, vector) -> "StepSrvf":
        vector = np.atleast_1d(np.asarray(vector, dtype=float))
        return cls(np.array([0.0, 1.0]), vector[None, :])


@dataclass(frozen=True)
class PlReparam:
    """
    Weakly increasing PL map I -> I through the knots (z_k, g_k)

    z is strictly increasing, g weakly increasing, both run from 0 to 1.
    Strictly increasing g means the map lies in the group, otherwise only
    in the semigroup of weakly increasing maps.
    """
    z: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        z = _check_partition(np.asarray(self.z, dtype=float), "reparametrization knots")
        g = np.asarray(self.g, dtype=float)
        if g.shape != z.shape:
            raise CurveError("reparametrization: z and g must have the same length")
        if not np.all(np.isfinite(g)):
            raise CurveError("reparametrization: values must be finite")
        if abs(g[0]) > settings.knot_tol or abs(g[-1] - 1.0) > settings.knot_tol:
            raise CurveError("reparametrization must fix 0 and 1")
        g = g.copy()
        g[0], g[-1] = 0.0, 1.0
        if np.any(np.diff(g) < 0):
            raise CurveError("reparametrization must be weakly increasing")
        object.__setattr__(self, "z", _frozen(z))
        object.__setattr__(self, "g", _frozen(g))

    @property
    def knots(self) -> np.ndarray:
        return np.column_stack([self.z, self.g])

    @property
    def is_strict(self) -> bool:
        return bool(np.all(np.diff(self.g) > 0))

    @property
    def slopes(self) -> np.ndarray:
        return np.diff(self.g) / np.diff(self.z)

    def __call__(self, z) -> np.ndarray:
        return np.interp(np.atleast_1d(np.asarray(z, dtype=float)), self.z, self.g)

    def preimage(self, values) -> np.ndarray:
        """
        One point z with gamma(z) = v for each v

        Where gamma is flat at height v the left end of the flat stretch is used.
        """
        values = np.atleast_1d(np.asarray(values, dtype=float))
        k = np.clip(np.searchsorted(self.g, values, side="left"), 0, self.g.size - 1)
        out = np.empty_like(values)
        for n, (v, kk) in enumerate(zip(values, k)):
            if self.g[kk] == v or kk == 0:
                out[n] = self.z[kk]
            else:
                g0, g1 = self.g[kk - 1], self.g[kk]
                z0, z1 = self.z[kk - 1], self.z[kk]
                out[n] = z0 + (v - g0) * (z1 - z0) / (g1 - g0)
        return out

    @classmethod
    def identity(cls) -> "PlReparam":
        return cls(np.array([0.0, 1.0]), np.array([0.0, 1.0]))


def merge_knots(*arrays: np.ndarray, tol: float = None) -> np.ndarray:
    """Sorted union of knot arrays in [0, 1]; points closer than tol collapse onto the first"""
    tol = settings.knot_tol if tol is None else tol
    merged = np.sort(np.concatenate([np.ravel(a) for a in arrays] + [np.array([0.0, 1.0])]))
    merged = merged[(merged >= 0.0) & (merged <= 1.0)]
    keep = [0.0]
    for x in merged[1:]:
        if x - keep[-1] > tol:
            keep.append(float(x))
    keep[-1] = 1.0
    return np.array(keep)


def _srvf_map(vectors: np.ndarray) -> np.ndarray:
    """x -> x / sqrt(|x|), zero stays zero"""
    norms = np.linalg.norm(vectors, axis=1)
    out = np.zeros_like(vectors)
    nz = norms > 0
    out[nz] = vectors[nz] / np.sqrt(norms[nz])[:, None]
    return out


def srvf(f: PlCurve) -> StepSrvf:
    """
    Square-root velocity function of a PL curve

    Pieces where the curve is constant are cut out and the remaining
    domain is stretched back onto [0, 1]; adjacent equal pieces are kept
    separate.

    Raises:
        CurveError: the curve is constant ("degenerate curve")
    """
    vectors = f.segment_vectors
    flat = ~np.any(vectors != 0.0, axis=1)
    if np.all(flat):
        raise CurveError("degenerate curve")
    if not np.any(flat):
        return StepSrvf(f.breakpoints, _srvf_map(f.slopes))

    lengths = np.diff(f.breakpoints)[~flat]
    total = float(lengths.sum())
    logger.warning(
        f"Excising {int(flat.sum())} flat piece(s) of total length {1.0 - total:.6g}"
    )
    breakpoints = np.concatenate([[0.0], np.cumsum(lengths) / total])
    slopes = vectors[~flat] / (lengths / total)[:, None]
    return StepSrvf(breakpoints, _srvf_map(slopes))


def inverse_srvf(q: StepSrvf) -> PlCurve:
    """Origin-anchored PL curve whose SRVF is q: slope q_i |q_i| on piece i"""
    norms = np.linalg.norm(q.pieces, axis=1)
    slopes = q.pieces * norms[:, None]
    values = np.vstack([np.zeros((1, q.dim)), np.cumsum(slopes * q.lengths[:, None], axis=0)])
    return PlCurve(q.breakpoints, values)


def arc_length(f: PlCurve) -> float:
    return float(np.linalg.norm(f.segment_vectors, axis=1).sum())


def normalize_to_unit_length(f: PlCurve) -> PlCurve:
    """
    Scale a curve to unit length

    Raises:
        CurveError: the curve has zero length
    """
    length = arc_length(f)
    if length <= 0:
        raise CurveError("cannot normalize a curve of zero length")
    return PlCurve(f.breakpoints, f.values / length)


def constant_speed(f: PlCurve) -> Tuple[PlCurve, PlReparam]:
    """
    Constant-speed parametrization of f

    Breakpoints move to the cumulative arc-length fractions, so every piece
    of the returned curve g has speed equal to the total length. The
    returned gamma has knots (tau_k, t_k) so f(gamma(tau_k)) = g(tau_k).
    Curves with flat pieces lose those pieces (tau repeats; the first
    occurrence is kept) and then gamma only matches at the knots.

    Raises:
        CurveError: the curve has zero length
    """
    seg = np.linalg.norm(f.segment_vectors, axis=1)
    length = float(seg.sum())
    if length <= 0:
        raise CurveError("cannot reparametrize a curve of zero length")
    tau = np.concatenate([[0.0], np.cumsum(seg) / length])
    tau[-1] = 1.0
    keep = np.concatenate([[True], np.diff(tau) > 0])
    if not np.all(keep):
        logger.debug(f"constant_speed dropped {int((~keep).sum())} flat piece(s)")
    curve = PlCurve(tau[keep], f.values[keep])
    gamma = PlReparam(tau[keep], f.breakpoints[keep])
    return curve, gamma


def arclength_reparam(f: PlCurve) -> PlReparam:
    """
    Normalized arc-length function of f as an element of the semigroup

    constant_speed(f)[0] composed with this map gives back f; the map is
    flat exactly where f is.
    """
    seg = np.linalg.norm(f.segment_vectors, axis=1)
    length = float(seg.sum())
    if length <= 0:
        raise CurveError("cannot reparametrize a curve of zero length")
    return PlReparam(f.breakpoints, np.concatenate([[0.0], np.cumsum(seg) / length]))


def apply_reparam(f: PlCurve, gamma: PlReparam) -> PlCurve:
    """f composed with gamma, exact on the knots of gamma and the preimages of f's breakpoints"""
    knots = merge_knots(gamma.z, gamma.preimage(f.breakpoints[1:-1]))
    return PlCurve(knots, f(gamma(knots)))


def compose_reparam(a: PlReparam, b: PlReparam) -> PlReparam:
    """a after b"""
    knots = merge_knots(b.z, b.preimage(a.z[1:-1]))
    return PlReparam(knots, a(b(knots)))


def invert_reparam(gamma: PlReparam) -> PlReparam:
    """
    Group inverse of a strictly increasing reparametrization

    Raises:
        CurveError: gamma is flat somewhere
    """
    if not gamma.is_strict:
        raise CurveError("only strictly increasing reparametrizations are invertible")
    return PlReparam(gamma.g, gamma.z)


def identity_reparam() -> PlReparam:
    return PlReparam.identity()
