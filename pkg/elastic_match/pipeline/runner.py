"""
Matching pipeline

Orchestrates the steps shared by the command line and the HTTP service:
1. Prepare: optional unit-length scaling, then SRVFs of both curves
2. Match: exact or DP engine
3. Report: pydantic result models, plus files and plots for the demos
"""
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np

from elastic_match.config import settings
from elastic_match.errors import ElasticMatchError, GeodesicError
from elastic_match.logger import setup_logger
from elastic_match.matching.curves import PlCurve, StepSrvf, inverse_srvf, normalize_to_unit_length, srvf
from elastic_match.matching.dp_baseline import DpConfig, dp_match
from elastic_match.matching.exact_match import MatchResult, optimal_match
from elastic_match.matching.grid import WeightGrid, build_grid
from elastic_match.matching.quotient import (
    geodesic_l2,
    geodesic_sphere,
    group_action,
    l2_distance,
    norm,
    scale,
    unit,
)
from elastic_match.pipeline.examples import DP_COMPARISON_LABEL, dp_comparison_pair, get_example
from elastic_match.pipeline.ingest import write_curve
from elastic_match.schemas.curve_io import CurveFile
from elastic_match.schemas.results import (
    DistanceReport,
    DpComparisonReport,
    ExampleReport,
    GeodesicReport,
    GridDump,
    MatchReport,
    ReparamModel,
    SegmentModel,
)

logger = setup_logger(__name__)

# Caption values are printed with four decimals
CAPTION_TOL = 2e-3


def _check_steps(steps: int) -> int:
    if steps < 2:
        raise GeodesicError(f"a geodesic needs at least two steps, got {steps}")
    return steps


@dataclass
class MatchOutcome:
    """Everything a report needs about one matched pair"""
    q1: StepSrvf
    q2: StepSrvf
    grid: WeightGrid
    result: MatchResult
    before: float


class MatchPipeline:
    """
    Runs matchings with one engine configuration

    Args:
        engine: "exact" or "dp"; defaults to settings.engine
        dp_refine: lattice refinement of the DP engine
        pareto: keep all slope states per vertex in the exact engine
        normalize: scale both curves to unit length before matching
    """

    def __init__(self, engine: Optional[str] = None, dp_refine: Optional[int] = None,
                 pareto: Optional[bool] = None, normalize: Optional[bool] = None):
        self.engine = engine or settings.engine
        self.dp_refine = settings.dp_refine if dp_refine is None else dp_refine
        self.pareto = settings.pareto if pareto is None else pareto
        self.normalize = settings.normalize if normalize is None else normalize
        if self.engine not in ("exact", "dp"):
            raise ValueError(f"unknown engine {self.engine!r}")
        if self.dp_refine < 1:
            raise ValueError(f"dp_refine must be at least 1, got {self.dp_refine}")

    def prepare(self, f1: PlCurve, f2: PlCurve) -> Tuple[StepSrvf, StepSrvf]:
        if self.normalize:
            f1, f2 = normalize_to_unit_length(f1), normalize_to_unit_length(f2)
        return srvf(f1), srvf(f2)

    def run_engine(self, q1: StepSrvf, q2: StepSrvf, engine: Optional[str] = None,
                   grid: Optional[WeightGrid] = None) -> MatchResult:
        engine = engine or self.engine
        if engine == "dp":
            return dp_match(q1, q2, DpConfig(refinement=self.dp_refine), grid=grid)
        return optimal_match(q1, q2, pareto=self.pareto, grid=grid)

    def match(self, f1: PlCurve, f2: PlCurve) -> MatchOutcome:
        """
        Match two curves

        Raises:
            ElasticMatchError: invalid curves or no matching found
        """
        try:
            logger.info(f"Phase 1: Prepare ({'unit length' if self.normalize else 'raw'} curves)")
            q1, q2 = self.prepare(f1, f2)
            grid = build_grid(q1, q2)
            before = l2_distance(q1, q2)
            logger.info(f"Phase 2: Match ({self.engine} engine, {grid.m}x{grid.n} grid)")
            result = self.run_engine(q1, q2, grid=grid)
            logger.info(f"Distance before alignment {before:.6f}, after {result.distance:.6f}")
            return MatchOutcome(q1, q2, grid, result, before)
        except ElasticMatchError as e:
            logger.error(f"Matching failed: {e}")
            raise

    def distance(self, f1: PlCurve, f2: PlCurve) -> DistanceReport:
        outcome = self.match(f1, f2)
        return DistanceReport(
            before=outcome.before,
            after=outcome.result.distance,
            value=outcome.result.value,
            engine=self.engine,
        )

    @staticmethod
    def match_report(outcome: MatchOutcome, include_grid: bool = True) -> MatchReport:
        result = outcome.result
        return MatchReport(
            value=result.value,
            distance=result.distance,
            before=outcome.before,
            engine=result.engine,
            gamma1=ReparamModel.from_reparam(result.gamma1),
            gamma2=ReparamModel.from_reparam(result.gamma2),
            path=[SegmentModel.from_segment(seg) for seg in result.path],
            grid=GridDump.from_grid(outcome.grid) if include_grid else None,
        )

    def geodesic(self, f1: PlCurve, f2: PlCurve, steps: Optional[int] = None,
                 mode: Optional[str] = None) -> Tuple[GeodesicReport, List[PlCurve], MatchOutcome]:
        """
        Curves along the geodesic between the matched SRVFs

        The matched representatives q1 * gamma1 and q2 * gamma2 are joined
        by a straight line in L2 or, in sphere mode, by the great-circle arc
        between their unit-norm versions with the norm interpolated
        linearly; each point is mapped back to a curve by inverse_srvf.

        Raises:
            GeodesicError: sphere mode with antipodal representatives
        """
        if steps is not None:
            _check_steps(steps)
        outcome = self.match(f1, f2)
        report, curves = self.geodesic_from(outcome, steps, mode)
        return report, curves, outcome

    @staticmethod
    def geodesic_from(outcome: MatchOutcome, steps: Optional[int] = None,
                      mode: Optional[str] = None) -> Tuple[GeodesicReport, List[PlCurve]]:
        steps = _check_steps(settings.geodesic_steps if steps is None else steps)
        mode = mode or settings.geodesic_mode
        a = group_action(outcome.q1, outcome.result.gamma1)
        b = group_action(outcome.q2, outcome.result.gamma2)

        logger.info(f"Phase 3: Geodesic ({mode}, {steps} steps)")
        taus = np.linspace(0.0, 1.0, steps)
        if mode == "sphere":
            na, nb = norm(a), norm(b)
            ua, ub = unit(a), unit(b)
            points = [scale(geodesic_sphere(ua, ub, tau), (1.0 - tau) * na + tau * nb) for tau in taus]
        elif mode == "linear":
            points = [geodesic_l2(a, b, tau) for tau in taus]
        else:
            raise ValueError(f"unknown geodesic mode {mode!r}")
        curves = [inverse_srvf(q) for q in points]
        report = GeodesicReport(mode=mode, steps=steps, curves=[CurveFile.from_curve(c) for c in curves])
        return report, curves

    def compare_dp(self, f1: PlCurve, f2: PlCurve, label: str = "") -> DpComparisonReport:
        """Exact and DP distances of one pair"""
        q1, q2 = self.prepare(f1, f2)
        before = l2_distance(q1, q2)
        exact = self.run_engine(q1, q2, "exact")
        dp = self.run_engine(q1, q2, "dp")
        logger.info(f"Exact distance {exact.distance:.6f}, DP distance {dp.distance:.6f} "
                    f"(refinement {self.dp_refine})")
        if dp.distance < exact.distance - 1e-9:
            logger.warning("DP distance is below the exact distance")
        return DpComparisonReport(
            before=before, exact=exact.distance, dp=dp.distance,
            refinement=self.dp_refine, label=label,
        )

    def compare_dp_standin(self) -> DpComparisonReport:
        f1, f2 = dp_comparison_pair()
        return self.compare_dp(f1, f2, DP_COMPARISON_LABEL)

    def example(self, example_id: str) -> Tuple[ExampleReport, MatchOutcome]:
        """
        Distances of a closed-form example

        Raises:
            KeyError: unknown example id
        """
        spec = get_example(example_id)
        f1, f2 = spec.curves()
        outcome = self.match(f1, f2)
        report = ExampleReport(
            id=spec.id,
            description=spec.description,
            samples=spec.samples,
            before=outcome.before,
            after=outcome.result.distance,
            caption_before=spec.caption_before,
            caption_after=spec.caption_after,
            engine=self.engine,
        )
        for name, got, caption in (("before", report.before, spec.caption_before),
                                   ("after", report.after, spec.caption_after)):
            if caption is not None and abs(got - caption) > CAPTION_TOL:
                logger.warning(f"{example_id}: distance {name} alignment {got:.4f} "
                               f"differs from caption value {caption:.4f}")
        return report, outcome

    def demo(self, example_id: str, outdir, plots: bool = True) -> ExampleReport:
        """
        Run an example and write its inputs, results and plots

        Files: curve1.json, curve2.json, match.json, geodesic.json and, with
        plots, alignment.svg, geodesic.svg and grid_path.svg.
        """
        from elastic_match import plotting

        outdir = Path(outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        logger.info("=" * 80)
        logger.info(f"Demo {example_id}")
        logger.info("=" * 80)

        spec = get_example(example_id)
        f1, f2 = spec.curves()
        report, outcome = self.example(example_id)
        geo_report, geo_curves = self.geodesic_from(outcome)
        match_report = self.match_report(outcome)

        files = [
            write_curve(f1, outdir / "curve1.json"),
            write_curve(f2, outdir / "curve2.json"),
            write_json(match_report, outdir / "match.json"),
            write_json(geo_report, outdir / "geodesic.json"),
        ]
        if plots:
            files += [
                plotting.plot_alignment(f1, f2, outcome.result.gamma1, outcome.result.gamma2,
                                        outdir / "alignment.svg"),
                plotting.plot_geodesic(geo_curves, outdir / "geodesic.svg"),
                plotting.plot_grid_path(match_report, match_report.grid, outdir / "grid_path.svg"),
            ]
        report = report.model_copy(update={"files": sorted(p.name for p in files)})
        write_json(report, outdir / "report.json")

        logger.info("=" * 80)
        logger.info(f"Demo {example_id} complete: before {report.before:.4f}, after {report.after:.4f}")
        logger.info("=" * 80)
        return report


def write_json(model, path) -> Path:
    """Serialize a pydantic model with rounded floats"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(model.model_dump_json(indent=2) + "\n")
    return path
