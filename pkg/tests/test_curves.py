"""
Tests for PL curves, SRVFs and reparametrizations
"""
import numpy as np
import pytest

from elastic_match.errors import CurveError
from elastic_match.matching.curves import (
    PlCurve,
    PlReparam,
    StepSrvf,
    apply_reparam,
    arc_length,
    arclength_reparam,
    compose_reparam,
    constant_speed,
    identity_reparam,
    inverse_srvf,
    invert_reparam,
    normalize_to_unit_length,
    srvf,
)
from elastic_match.matching.quotient import norm_sq


def random_partition(rng, pieces):
    increments = rng.uniform(0.2, 1.0, pieces)
    breakpoints = np.concatenate([[0.0], np.cumsum(increments) / increments.sum()])
    breakpoints[-1] = 1.0
    return breakpoints


def random_curve(rng, pieces, dim):
    """Steps of length between 0.2 and 1, so no piece is flat"""
    directions = rng.normal(size=(pieces, dim))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    steps = directions * rng.uniform(0.2, 1.0, (pieces, 1))
    return PlCurve(random_partition(rng, pieces), np.vstack([np.zeros(dim), np.cumsum(steps, axis=0)]))


def random_reparam(rng, knots):
    return PlReparam(random_partition(rng, knots), random_partition(rng, knots))


class TestPlCurve:
    """Construction and evaluation of PL curves"""

    @pytest.fixture
    def corner(self):
        """Unit step right then up, in half the time each"""
        return PlCurve([0.0, 0.5, 1.0], [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]])

    def test_basic_properties(self, corner):
        """dim, pieces and slopes"""
        assert corner.dim == 2
        assert corner.n_pieces == 2
        np.testing.assert_allclose(corner.slopes, [[2.0, 0.0], [0.0, 2.0]])

    def test_evaluation_interpolates(self, corner):
        """Evaluation is linear between breakpoints"""
        np.testing.assert_allclose(corner([0.25, 0.75]), [[0.5, 0.0], [1.0, 0.5]])

    def test_one_dimensional_values_are_promoted(self):
        """A flat list of values is a 1D curve"""
        curve = PlCurve([0.0, 1.0], [0.0, 2.0])
        assert curve.dim == 1
        assert curve.values.shape == (2, 1)

    @pytest.mark.parametrize("breakpoints", [
        [0.0, 0.6, 0.4, 1.0],
        [0.1, 0.5, 0.7, 1.0],
        [0.0, 0.5, 0.5, 1.0],
    ])
    def test_invalid_breakpoints_rejected(self, breakpoints):
        """Breakpoints must increase strictly from 0 to 1"""
        with pytest.raises(CurveError):
            PlCurve(breakpoints, np.zeros((4, 1)))

    def test_value_count_mismatch_rejected(self):
        """One value row per breakpoint"""
        with pytest.raises(CurveError):
            PlCurve([0.0, 1.0], [[0.0], [1.0], [2.0]])

    def test_arrays_are_read_only(self, corner):
        """Stored arrays cannot be modified in place"""
        with pytest.raises(ValueError):
            corner.values[0, 0] = 5.0

    def test_from_samples_rescales_times(self):
        """Sample times are mapped affinely onto [0, 1]"""
        curve = PlCurve.from_samples([2.0, 3.0, 4.0], [[0.0], [1.0], [0.0]])
        np.testing.assert_allclose(curve.breakpoints, [0.0, 0.5, 1.0])

    def test_arc_length_and_normalization(self, corner):
        """Length 2 corner scales down to length 1"""
        assert arc_length(corner) == pytest.approx(2.0)
        assert arc_length(normalize_to_unit_length(corner)) == pytest.approx(1.0)


class TestSrvf:
    """The SRVF map and its inverse"""

    def test_srvf_of_corner(self):
        """Velocity (2, 0) maps to (sqrt 2, 0)"""
        q = srvf(PlCurve([0.0, 0.5, 1.0], [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]]))
        np.testing.assert_allclose(q.pieces, [[np.sqrt(2), 0.0], [0.0, np.sqrt(2)]])
        np.testing.assert_allclose(q.breakpoints, [0.0, 0.5, 1.0])

    @pytest.mark.parametrize("breakpoints,values,expected", [
        ([0.0, 1.0], [[0.0], [1.0]], [[1.0]]),
        ([0.0, 0.5, 1.0], [[0.0], [1.0], [1.5]], [[np.sqrt(2)], [1.0]]),
        ([0.0, 1.0], [[0.0, 0.0], [3.0, 4.0]], [[3 / np.sqrt(5), 4 / np.sqrt(5)]]),
    ])
    def test_srvf_pieces(self, breakpoints, values, expected):
        """V(x) = x / sqrt|x| applied to each slope"""
        np.testing.assert_allclose(srvf(PlCurve(breakpoints, values)).pieces, expected)

    def test_inverse_recovers_translated_curve(self):
        """inverse_srvf(srvf(f)) = f - f(0)"""
        rng = np.random.default_rng(3)
        breakpoints = np.concatenate([[0.0], np.sort(rng.uniform(0.05, 0.95, 5)), [1.0]])
        values = rng.normal(size=(7, 3))
        f = PlCurve(breakpoints, values)
        g = inverse_srvf(srvf(f))
        np.testing.assert_allclose(g.values, values - values[0], atol=1e-12)

    def test_flat_pieces_are_excised(self):
        """A constant stretch is removed and the rest stretched onto [0, 1]"""
        f = PlCurve([0.0, 1 / 3, 2 / 3, 1.0], [[0.0], [1.0], [1.0], [2.0]])
        q = srvf(f)
        np.testing.assert_allclose(q.breakpoints, [0.0, 0.5, 1.0])
        np.testing.assert_allclose(q.pieces, [[np.sqrt(2)], [np.sqrt(2)]])
        assert q.is_nowhere_zero

    def test_constant_curve_is_degenerate(self):
        """No velocity anywhere"""
        with pytest.raises(CurveError, match="degenerate curve"):
            srvf(PlCurve([0.0, 1.0], [[1.0, 1.0], [1.0, 1.0]]))

    def test_step_function_evaluation(self):
        """Right-continuous pieces; the last piece owns t = 1"""
        q = StepSrvf([0.0, 0.5, 1.0], [[1.0], [2.0]])
        np.testing.assert_allclose(q([0.0, 0.5, 1.0]).ravel(), [1.0, 2.0, 2.0])
        np.testing.assert_allclose(q.lengths, [0.5, 0.5])

    def test_arc_length_is_squared_norm(self):
        """The SRVF of f has squared L2 norm equal to the length of f"""
        rng = np.random.default_rng(7)
        for _ in range(100):
            f = random_curve(rng, int(rng.integers(1, 9)), int(rng.integers(1, 4)))
            assert norm_sq(srvf(f)) == pytest.approx(arc_length(f), rel=1e-12)


class TestReparametrizations:
    """PL reparametrizations: evaluation, preimages, composition"""

    def test_preimage_uses_left_end_of_flat_stretch(self):
        """gamma flat at 0 on [0, 1/2]"""
        gamma = PlReparam([0.0, 0.5, 1.0], [0.0, 0.0, 1.0])
        np.testing.assert_allclose(gamma.preimage([0.0, 0.5]), [0.0, 0.75])
        assert not gamma.is_strict

    def test_decreasing_map_rejected(self):
        with pytest.raises(CurveError):
            PlReparam([0.0, 0.5, 1.0], [0.0, 0.7, 0.6])

    def test_inverse_composes_to_identity(self):
        """gamma after its inverse is the identity"""
        gamma = PlReparam([0.0, 0.5, 1.0], [0.0, 0.25, 1.0])
        inverse = invert_reparam(gamma)
        np.testing.assert_allclose(inverse.z, [0.0, 0.25, 1.0])
        composed = compose_reparam(gamma, inverse)
        z = np.linspace(0, 1, 11)
        np.testing.assert_allclose(composed(z), z, atol=1e-12)

    def test_invert_rejects_flat_map(self):
        """Only strictly increasing maps have inverses"""
        with pytest.raises(CurveError):
            invert_reparam(PlReparam([0.0, 0.5, 1.0], [0.0, 0.0, 1.0]))

    def test_identity(self):
        z = np.linspace(0, 1, 5)
        np.testing.assert_allclose(identity_reparam()(z), z)

    def test_constant_speed_factorization(self):
        """constant_speed(f) composed with the arc-length map gives back f"""
        f = PlCurve([0.0, 0.5, 1.0], [[0.0], [1.0], [3.0]])
        g, gamma = constant_speed(f)
        np.testing.assert_allclose(g.breakpoints, [0.0, 1 / 3, 1.0])
        np.testing.assert_allclose(gamma.g, [0.0, 0.5, 1.0])

        arclength = arclength_reparam(f)
        np.testing.assert_allclose(arclength.g, [0.0, 1 / 3, 1.0])
        back = apply_reparam(g, arclength)
        np.testing.assert_allclose(back(f.breakpoints), f.values, atol=1e-12)

    def test_constant_speed_example(self):
        """Total variation 1.5; the breakpoint moves from 1/2 to 2/3"""
        g, _ = constant_speed(PlCurve([0.0, 0.5, 1.0], [[0.0], [1.0], [1.5]]))
        np.testing.assert_allclose(g.breakpoints, [0.0, 2 / 3, 1.0])
        np.testing.assert_allclose(np.abs(g.slopes).ravel(), [1.5, 1.5])

    def test_constant_speed_has_one_speed(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            f = random_curve(rng, int(rng.integers(1, 9)), int(rng.integers(1, 4)))
            g, _ = constant_speed(f)
            speeds = np.linalg.norm(g.slopes, axis=1)
            length = arc_length(f)
            assert speeds.max() - speeds.min() <= 1e-12 * length
            np.testing.assert_allclose(speeds, length, rtol=1e-12)

    def test_composition_applies_inner_map_last(self):
        """f after (a after b) equals (f after a) after b"""
        rng = np.random.default_rng(11)
        z = np.linspace(0, 1, 41)
        for _ in range(100):
            f = PlCurve(random_partition(rng, 5), rng.normal(size=(6, 2)))
            a = random_reparam(rng, int(rng.integers(1, 6)))
            b = random_reparam(rng, int(rng.integers(1, 6)))
            direct = apply_reparam(f, compose_reparam(a, b))
            stepwise = apply_reparam(apply_reparam(f, a), b)
            at = np.union1d(z, np.union1d(direct.breakpoints, stepwise.breakpoints))
            np.testing.assert_allclose(direct(at), stepwise(at), atol=1e-10)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
