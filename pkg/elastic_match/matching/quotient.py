"""
Exact L2 geometry on step functions.

Every integrand here is piecewise constant, so inner products are finite
sums over the common refinement of the partitions involved; no quadrature.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from elastic_match.config import settings
from elastic_match.errors import CurveError, DimensionMismatchError, GeodesicError, NotUnitError
from elastic_match.logger import setup_logger
from elastic_match.matching.curves import PlReparam, StepSrvf, merge_knots

logger = setup_logger(__name__)


@dataclass(frozen=True)
class RefinedPair:
    """Two step functions written on their merged partition"""
    breakpoints: np.ndarray
    a: np.ndarray
    b: np.ndarray

    @property
    def lengths(self) -> np.ndarray:
        return np.diff(self.breakpoints)


def _check_dims(q1: StepSrvf, q2: StepSrvf):
    if q1.dim != q2.dim:
        raise DimensionMismatchError(f"dimension mismatch: {q1.dim} vs {q2.dim}")


def refine(q1: StepSrvf, q2: StepSrvf) -> RefinedPair:
    _check_dims(q1, q2)
    breakpoints = merge_knots(q1.breakpoints, q2.breakpoints)
    mids = 0.5 * (breakpoints[:-1] + breakpoints[1:])
    return RefinedPair(breakpoints, q1(mids), q2(mids))


def inner(q1: StepSrvf, q2: StepSrvf) -> float:
    """
    L2 inner product of two step functions

    Raises:
        DimensionMismatchError: q1 and q2 have different dimensions
    """
    pair = refine(q1, q2)
    return float(np.einsum("ij,ij->i", pair.a, pair.b) @ pair.lengths)


def norm_sq(q: StepSrvf) -> float:
    return float(np.einsum("ij,ij->i", q.pieces, q.pieces) @ q.lengths)


def norm(q: StepSrvf) -> float:
    return float(np.sqrt(norm_sq(q)))


def l2_distance(q1: StepSrvf, q2: StepSrvf) -> float:
    squared = norm_sq(q1) + norm_sq(q2) - 2.0 * inner(q1, q2)
    return float(np.sqrt(max(squared, 0.0)))


def scale(q: StepSrvf, c: float) -> StepSrvf:
    return StepSrvf(q.breakpoints, c * q.pieces)


def add(q1: StepSrvf, q2: StepSrvf) -> StepSrvf:
    pair = refine(q1, q2)
    return StepSrvf(pair.breakpoints, pair.a + pair.b)


def unit(q: StepSrvf) -> StepSrvf:
    """
    q scaled to unit L2 norm

    Raises:
        CurveError: q is zero
    """
    n = norm(q)
    if n == 0:
        raise CurveError("cannot normalize the zero function")
    return scale(q, 1.0 / n)


def group_action(q: StepSrvf, gamma: PlReparam) -> StepSrvf:
    """
    (q * gamma)(t) = q(gamma(t)) sqrt(gamma'(t))

    Where gamma is flat the result is the zero vector; such pieces are kept.
    """
    knots = merge_knots(gamma.z, gamma.preimage(q.breakpoints[1:-1]))
    images = gamma(knots)
    slopes = np.diff(images) / np.diff(knots)
    mid_images = gamma(0.5 * (knots[:-1] + knots[1:]))
    pieces = q(mid_images) * np.sqrt(np.maximum(slopes, 0.0))[:, None]
    pieces[slopes <= 0] = 0.0
    return StepSrvf(knots, pieces)


def _check_unit(q: StepSrvf, name: str):
    n = norm(q)
    if abs(n - 1.0) > settings.unit_norm_tol:
        raise NotUnitError(f"{name} must have unit norm, got {n:.12g}")


def sphere_distance(q1: StepSrvf, q2: StepSrvf) -> float:
    """
    Great-circle distance on the unit sphere of L2

    Raises:
        NotUnitError: either input is off the unit sphere
    """
    _check_unit(q1, "q1")
    _check_unit(q2, "q2")
    return float(np.arccos(np.clip(inner(q1, q2), -1.0, 1.0)))


def _check_tau(tau: float):
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"geodesic parameter must lie in [0, 1], got {tau}")


def geodesic_l2(q1: StepSrvf, q2: StepSrvf, tau: float) -> StepSrvf:
    """Point at parameter tau on the straight line from q1 to q2"""
    _check_dims(q1, q2)
    _check_tau(tau)
    return add(scale(q1, 1.0 - tau), scale(q2, tau))


def geodesic_sphere(q1: StepSrvf, q2: StepSrvf, tau: float) -> StepSrvf:
    """
    Point at parameter tau on the great-circle arc from q1 to q2

    Raises:
        NotUnitError: either input is off the unit sphere
        GeodesicError: q1 and q2 are antipodal
    """
    _check_dims(q1, q2)
    _check_tau(tau)
    _check_unit(q1, "q1")
    _check_unit(q2, "q2")
    pair = refine(q1, q2)
    cos_theta = float(np.einsum("ij,ij->i", pair.a, pair.b) @ pair.lengths)
    if cos_theta <= -1.0 + settings.unit_norm_tol:
        raise GeodesicError("antipodal pair: the great-circle geodesic is not unique")
    theta = float(np.arccos(np.clip(cos_theta, -1.0, 1.0)))
    if theta < 1e-12:
        return StepSrvf(pair.breakpoints, (1.0 - tau) * pair.a + tau * pair.b)
    sin_theta = np.sin(theta)
    alpha = np.sin((1.0 - tau) * theta) / sin_theta
    beta = np.sin(tau * theta) / sin_theta
    return StepSrvf(pair.breakpoints, alpha * pair.a + beta * pair.b)


def constant_match_value(q: StepSrvf, w0, length_j: float = 1.0) -> Tuple[float, Tuple[PlReparam, PlReparam]]:
    """
    Best inner product between the orbit of q and the orbit of a constant piece

    Args:
        q: step function on [0, 1]
        w0: the constant vector
        length_j: length of the interval the constant piece lives on

    Returns:
        (value, (gamma_q, gamma_w)). gamma_q is the identity; gamma_w
        realizes the value on the constant sqrt(length_j) * w0 over [0, 1],
        and is flat where q . w0 <= 0. When q . w0 <= 0 everywhere the
        value is 0 and both maps are the identity.
    """
    w0 = np.atleast_1d(np.asarray(w0, dtype=float))
    if w0.size != q.dim:
        raise DimensionMismatchError(f"dimension mismatch: {q.dim} vs {w0.size}")
    if length_j < 0:
        raise ValueError("length_j must be non-negative")
    proj = q.pieces @ w0
    weights = np.where(proj > 0, proj ** 2, 0.0) * q.lengths
    total = float(weights.sum())
    if total == 0.0:
        return 0.0, (PlReparam.identity(), PlReparam.identity())
    value = float(np.sqrt(total) * np.sqrt(length_j))
    gamma = PlReparam(q.breakpoints, np.concatenate([[0.0], np.cumsum(weights) / total]))
    return value, (PlReparam.identity(), gamma)


def standard_form_step(a: float, positive_first: bool = True) -> StepSrvf:
    """
    The +-1 step function that is +1 on a set of measure a

    Args:
        a: measure of the positive part, in [0, 1]
        positive_first: put the +1 piece on [0, a] rather than [1 - a, 1]
    """
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"a must lie in [0, 1], got {a}")
    if a in (0.0, 1.0):
        return StepSrvf.constant([1.0 if a == 1.0 else -1.0])
    if positive_first:
        return StepSrvf(np.array([0.0, a, 1.0]), np.array([[1.0], [-1.0]]))
    return StepSrvf(np.array([0.0, 1.0 - a, 1.0]), np.array([[-1.0], [1.0]]))


def standard_form_distance(a: float) -> float:
    """Orbit distance between the constant 1 and a +-1 step function positive on measure a"""
    return float(np.sqrt(max(2.0 - 2.0 * np.sqrt(a), 0.0)))


def orthogonal_witness() -> Tuple[PlReparam, PlReparam]:
    """
    Reparametrizations making any two functions orthogonal

    gamma1 is flat on [0, 1/2] and gamma2 on [1/2, 1], so the supports of
    q1 * gamma1 and q2 * gamma2 overlap in a null set.
    """
    gamma1 = PlReparam(np.array([0.0, 0.5, 1.0]), np.array([0.0, 0.0, 1.0]))
    gamma2 = PlReparam(np.array([0.0, 0.5, 1.0]), np.array([0.0, 1.0, 1.0]))
    return gamma1, gamma2
