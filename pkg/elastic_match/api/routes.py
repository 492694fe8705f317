"""
API routes for matching endpoints
"""
from typing import List

from fastapi import APIRouter, HTTPException, Path
from fastapi.responses import JSONResponse

from elastic_match.errors import ElasticMatchError
from elastic_match.logger import setup_logger
from elastic_match.pipeline.examples import get_example, list_examples
from elastic_match.pipeline.runner import MatchPipeline
from elastic_match.schemas.results import (
    DistanceReport,
    ErrorResponse,
    ExampleReport,
    ExampleSummary,
    GeodesicReport,
    GeodesicRequest,
    MatchReport,
    PairRequest,
)

logger = setup_logger(__name__)
router = APIRouter()

ERROR_RESPONSES = {
    422: {"model": ErrorResponse, "description": "Invalid curves or no matching found"},
    500: {"model": ErrorResponse, "description": "Internal server error"},
}


def _pipeline(request: PairRequest) -> MatchPipeline:
    return MatchPipeline(
        engine=request.engine,
        dp_refine=request.dp_refine,
        pareto=request.pareto,
        normalize=request.normalize,
    )


def _unprocessable(e: ElasticMatchError) -> JSONResponse:
    body = ErrorResponse(error=type(e).__name__, detail=str(e))
    return JSONResponse(status_code=422, content=body.model_dump(mode="json"))


@router.post(
    "/distance",
    response_model=DistanceReport,
    responses=ERROR_RESPONSES,
    summary="Distance between two curves",
    description="Distances of the SRVFs before and after optimal alignment"
)
def post_distance(request: PairRequest):
    """
    Distance before and after alignment

    Body:
    - curve1, curve2: curves in the JSON curve format
    - engine: exact (default) or dp
    - dp_refine, pareto, normalize: engine options
    """
    try:
        return _pipeline(request).distance(request.curve1.to_curve(), request.curve2.to_curve())
    except ElasticMatchError as e:
        logger.warning(f"Rejected distance request: {e}")
        return _unprocessable(e)
    except Exception as e:
        logger.error(f"Error in post_distance: {e}")
        raise HTTPException(status_code=500, detail=f"Internal server error: {str(e)}")


@router.post(
    "/match",
    response_model=MatchReport,
    responses=ERROR_RESPONSES,
    summary="Optimal matching of two curves",
    description="Matching path on the grid, both reparametrizations, value and distance"
)
def post_match(request: PairRequest):
    """Full matching result including the weight grid"""
    try:
        pipeline = _pipeline(request)
        return pipeline.match_report(pipeline.match(request.curve1.to_curve(), request.curve2.to_curve()))
    except ElasticMatchError as e:
        logger.warning(f"Rejected match request: {e}")
        return _unprocessable(e)
    except Exception as e:
        logger.error(f"Error in post_match: {e}")
        raise HTTPException(status_code=500, detail=f"Internal server error: {str(e)}")


@router.post(
    "/geodesic",
    response_model=GeodesicReport,
    responses=ERROR_RESPONSES,
    summary="Geodesic between two curves",
    description="Curves sampled along the geodesic between the matched SRVFs"
)
def post_geodesic(request: GeodesicRequest):
    try:
        report, _, _ = _pipeline(request).geodesic(
            request.curve1.to_curve(), request.curve2.to_curve(), steps=request.steps, mode=request.mode
        )
        return report
    except ElasticMatchError as e:
        logger.warning(f"Rejected geodesic request: {e}")
        return _unprocessable(e)
    except Exception as e:
        logger.error(f"Error in post_geodesic: {e}")
        raise HTTPException(status_code=500, detail=f"Internal server error: {str(e)}")


@router.get(
    "/examples",
    response_model=List[ExampleSummary],
    summary="List closed-form examples"
)
def get_examples():
    return [
        ExampleSummary(id=spec.id, description=spec.description, samples=spec.samples)
        for spec in list_examples()
    ]


@router.get(
    "/examples/{example_id}",
    response_model=ExampleReport,
    responses={404: {"model": ErrorResponse, "description": "Unknown example"}, **ERROR_RESPONSES},
    summary="Run a closed-form example",
    description="Distances of the example pair with the exact engine, next to the caption values"
)
def get_example_report(example_id: str = Path(..., description="Example id, e.g. ex6")):
    try:
        get_example(example_id)
    except KeyError as e:
        raise HTTPException(status_code=404, detail=e.args[0])
    try:
        report, _ = MatchPipeline(engine="exact").example(example_id)
        return report
    except ElasticMatchError as e:
        return _unprocessable(e)
    except Exception as e:
        logger.error(f"Error in get_example_report: {e}")
        raise HTTPException(status_code=500, detail=f"Internal server error: {str(e)}")
