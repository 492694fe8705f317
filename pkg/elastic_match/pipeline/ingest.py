"""
Curve ingestion

This module handles:
1. Reading curves from JSON (CurveFile) or CSV (t column plus coordinates)
2. Validating them into PlCurve objects
3. Writing curves back as JSON
"""
import json
from pathlib import Path
from typing import Union

import pandas as pd
from pydantic import ValidationError

from elastic_match.errors import CurveError, CurveFileError
from elastic_match.logger import setup_logger
from elastic_match.matching.curves import PlCurve
from elastic_match.schemas.curve_io import CurveFile, SampleSet
from elastic_match.schemas.results import round_floats

logger = setup_logger(__name__)

PathLike = Union[str, Path]


def _read_json(path: Path) -> PlCurve:
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise CurveFileError(f"{path}: invalid JSON: {e}") from e
    try:
        if isinstance(data, dict) and "samples" in data:
            return SampleSet.model_validate(data).to_curve()
        return CurveFile.model_validate(data).to_curve()
    except ValidationError as e:
        raise CurveFileError(f"{path}: {e.error_count()} validation error(s): {e}") from e


def _has_header(path: Path) -> bool:
    first = path.read_text().lstrip().splitlines()[:1]
    if not first:
        raise CurveFileError(f"{path}: empty CSV file")
    try:
        [float(cell) for cell in first[0].split(",")]
        return False
    except ValueError:
        return True


def _read_csv(path: Path) -> PlCurve:
    """First column t, remaining columns coordinates; a header row is optional"""
    try:
        df = pd.read_csv(path, header=0 if _has_header(path) else None)
    except (pd.errors.EmptyDataError, pd.errors.ParserError) as e:
        raise CurveFileError(f"{path}: unreadable CSV: {e}") from e
    if df.shape[1] < 2:
        raise CurveFileError(f"{path}: need a t column and at least one coordinate column")
    try:
        df = df.apply(pd.to_numeric, errors="raise")
    except (ValueError, TypeError) as e:
        raise CurveFileError(f"{path}: non-numeric entries: {e}") from e
    if df.isnull().values.any():
        raise CurveFileError(f"{path}: missing values")
    data = df.to_numpy(dtype=float)
    return PlCurve(data[:, 0], data[:, 1:])


def read_curve(path: PathLike) -> PlCurve:
    """
    Read a curve from a JSON or CSV file

    Args:
        path: .json (CurveFile or SampleSet layout) or .csv file

    Returns:
        The validated curve

    Raises:
        CurveFileError: missing file, unknown suffix, or invalid contents
    """
    path = Path(path)
    if not path.exists():
        raise CurveFileError(f"curve file not found: {path}")
    suffix = path.suffix.lower()
    logger.info(f"Reading curve from {path}")
    try:
        if suffix == ".json":
            curve = _read_json(path)
        elif suffix == ".csv":
            curve = _read_csv(path)
        else:
            raise CurveFileError(f"{path}: unsupported file type {suffix!r} (use .json or .csv)")
    except CurveFileError as e:
        logger.error(f"Failed to read curve: {e}")
        raise
    except CurveError as e:
        logger.error(f"Invalid curve in {path}: {e}")
        raise CurveFileError(f"{path}: {e}") from e
    logger.info(f"Loaded curve with {curve.n_pieces} piece(s) in dimension {curve.dim}")
    return curve


def curve_to_json(curve: PlCurve) -> str:
    """CurveFile JSON with floats rounded like every other output file"""
    return json.dumps(round_floats(CurveFile.from_curve(curve).model_dump()), indent=2)


def write_curve(curve: PlCurve, path: PathLike) -> Path:
    """Write a curve as CurveFile JSON, creating parent directories"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(curve_to_json(curve) + "\n")
    logger.debug(f"Wrote curve to {path}")
    return path

