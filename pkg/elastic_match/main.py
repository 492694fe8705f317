"""
FastAPI application with the matching endpoints
"""
from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from elastic_match import __version__
from elastic_match.api import routes
from elastic_match.config import settings
from elastic_match.logger import setup_logger

logger = setup_logger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """
    Lifespan context manager for startup and shutdown events
    """
    logger.info("Starting up elastic matching API")
    logger.info(f"Vertex-hit tolerance {settings.tol:g}, default engine {settings.engine}")
    yield
    logger.info("Shutting down elastic matching API")


app = FastAPI(
    title="Elastic Matching API",
    description="Exact optimal matching of piecewise-linear curves under the square-root velocity metric",
    version=__version__,
    lifespan=lifespan,
    docs_url="/api/docs",
    redoc_url="/api/redoc",
    openapi_url="/api/openapi.json"
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(routes.router, prefix="/api/v1")


@app.get("/")
async def root():
    """Root endpoint with API information"""
    return {
        "message": "Elastic Matching API",
        "version": __version__,
        "docs": "/api/docs",
        "endpoints": {
            "distance": "/api/v1/distance",
            "match": "/api/v1/match",
            "geodesic": "/api/v1/geodesic",
            "examples": "/api/v1/examples",
            "example": "/api/v1/examples/{example_id}"
        }
    }


@app.get("/health")
async def health_check():
    """Health check endpoint"""
    return {"status": "healthy", "version": __version__}
