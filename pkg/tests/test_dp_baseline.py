"""
Tests for the grid-restricted DP baseline
"""
import math

import numpy as np
import pytest

from elastic_match.matching.curves import StepSrvf
from elastic_match.matching.dp_baseline import DEFAULT_MOVES, DpConfig, chord_value, dp_match
from elastic_match.matching.grid import build_grid
from elastic_match.matching.quotient import norm_sq

CROSS_MOVES = frozenset([(1, 1), (1, 0), (0, 1)])


def random_step(rng, pieces, dim):
    increments = rng.uniform(0.2, 1.0, pieces)
    breakpoints = np.concatenate([[0.0], np.cumsum(increments) / increments.sum()])
    breakpoints[-1] = 1.0
    return StepSrvf(breakpoints, rng.normal(size=(pieces, dim)))


class TestDpConfig:
    """Validation of refinement and moves"""

    def test_defaults(self):
        cfg = DpConfig()
        assert cfg.refinement == 1
        assert cfg.moves == DEFAULT_MOVES
        assert len(DEFAULT_MOVES) == 11

    @pytest.mark.parametrize("refinement", [0, -2, 1.5])
    def test_bad_refinement(self, refinement):
        with pytest.raises(ValueError):
            DpConfig(refinement=refinement)

    def test_moves_need_diagonal_step(self):
        with pytest.raises(ValueError):
            DpConfig(moves=frozenset([(1, 0), (0, 1)]))

    def test_moves_must_be_monotone(self):
        with pytest.raises(ValueError):
            DpConfig(moves=frozenset([(1, 1), (-1, 2)]))


class TestChordValue:
    """Exact chord integrals"""

    def test_inside_one_block(self):
        grid = build_grid(StepSrvf.constant([2.0]), StepSrvf.constant([1.0]))
        assert chord_value(grid, (0.0, 0.0), (0.25, 0.0625)) == pytest.approx(0.25)

    def test_axis_parallel_is_zero(self):
        grid = build_grid(StepSrvf.constant([2.0]), StepSrvf.constant([1.0]))
        assert chord_value(grid, (0.0, 0.2), (0.7, 0.2)) == 0.0

    def test_across_blocks(self):
        """Half the diagonal in weight 1, half in weight 2"""
        q1 = StepSrvf([0.0, 0.5, 1.0], [[1.0], [2.0]])
        grid = build_grid(q1, StepSrvf.constant([1.0]))
        assert chord_value(grid, (0.0, 0.0), (1.0, 1.0)) == pytest.approx(1.5)

    def test_negative_weights_count(self):
        q1 = StepSrvf([0.0, 0.5, 1.0], [[1.0], [-1.0]])
        grid = build_grid(q1, StepSrvf.constant([1.0]))
        assert chord_value(grid, (0.0, 0.0), (1.0, 1.0)) == pytest.approx(0.0, abs=1e-15)
        assert chord_value(grid, (0.5, 0.0), (1.0, 1.0)) == pytest.approx(-math.sqrt(0.5))

    def test_non_monotone_chord(self):
        grid = build_grid(StepSrvf.constant([1.0]), StepSrvf.constant([1.0]))
        with pytest.raises(ValueError):
            chord_value(grid, (0.5, 0.5), (0.2, 0.9))


class TestDpMatch:
    """Baseline matching"""

    def test_single_block(self):
        result = dp_match(StepSrvf.constant([3.0]), StepSrvf.constant([1.0]))
        assert result.value == pytest.approx(3.0)
        assert result.engine == "dp"
        assert [seg.kind for seg in result.path] == ["DP"]

    def test_identity_follows_diagonal(self):
        q = StepSrvf([0.0, 0.3, 0.55, 1.0], [[1.0, 0.5], [-0.2, 1.0], [0.7, -0.9]])
        result = dp_match(q, q)
        assert result.value == pytest.approx(norm_sq(q), rel=1e-12)
        assert result.distance < 1e-6

    def test_path_value_matches_recomputed_value(self):
        rng = np.random.default_rng(7)
        q1, q2 = random_step(rng, 4, 2), random_step(rng, 3, 2)
        result = dp_match(q1, q2, DpConfig(refinement=2))
        assert result.value == pytest.approx(result.path_value, rel=1e-9, abs=1e-12)

    def test_prebuilt_grid_is_used(self):
        rng = np.random.default_rng(9)
        q1, q2 = random_step(rng, 3, 2), random_step(rng, 5, 2)
        grid = build_grid(q1, q2)
        assert dp_match(q1, q2, grid=grid).value == pytest.approx(dp_match(q1, q2).value, rel=1e-12)

    def test_refinement_never_hurts(self):
        """Doubling the lattice keeps every coarser path available"""
        rng = np.random.default_rng(13)
        for _ in range(5):
            q1, q2 = random_step(rng, 3, 2), random_step(rng, 4, 2)
            values = [dp_match(q1, q2, DpConfig(refinement=r, moves=CROSS_MOVES)).value for r in (1, 2, 4)]
            assert values[0] <= values[1] + 1e-12
            assert values[1] <= values[2] + 1e-12


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
