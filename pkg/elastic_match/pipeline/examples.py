"""
Closed-form example pairs

Each example samples two closed-form curves at t = n/K, n = 0..K, and
uses the PL interpolants of the samples as inputs. The published caption
distances are kept as reference data; whether a given caption is
reproduced depends on the distance convention (see DESIGN.md).
"""
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from elastic_match.logger import setup_logger
from elastic_match.matching.curves import PlCurve

logger = setup_logger(__name__)

TWO_PI = 2.0 * np.pi
FOUR_PI = 4.0 * np.pi

CurveFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class ExampleSpec:
    """A closed-form example pair with its sampling and caption values"""
    id: str
    description: str
    f1: CurveFn
    f2: CurveFn
    samples: int
    caption_before: Optional[float] = None
    caption_after: Optional[float] = None

    @property
    def dim(self) -> int:
        return self.f1(np.zeros(1)).shape[1]

    def sample_times(self) -> np.ndarray:
        return np.arange(self.samples + 1) / self.samples

    def curves(self) -> Tuple[PlCurve, PlCurve]:
        t = self.sample_times()
        return PlCurve(t, self.f1(t)), PlCurve(t, self.f2(t))


def _stack(*columns) -> np.ndarray:
    return np.column_stack(columns)


def _circle_right(t):
    return _stack(1.0 + np.cos(TWO_PI * (1.0 - t)), np.sin(TWO_PI * (1.0 - t)))


def _circle_left(t):
    return _stack(-1.0 + np.cos(-TWO_PI * t), np.sin(TWO_PI * t))


EXAMPLES: Dict[str, ExampleSpec] = {
    spec.id: spec for spec in [
        ExampleSpec(
            "ex4", "line against a sine wave (2D)",
            lambda t: _stack(TWO_PI * t, TWO_PI * t),
            lambda t: _stack(TWO_PI * t, np.sin(3 * TWO_PI * t)),
            45, 3.9107, 2.8418,
        ),
        ExampleSpec(
            "ex5", "two circles traversed in opposite senses (2D)",
            _circle_right, _circle_left,
            45, 2.5064, 2.0683,
        ),
        ExampleSpec(
            "ex6", "two circles traversed in opposite senses, 3-piece sampling (2D)",
            _circle_right, _circle_left,
            3, 2.4495, 2.0,
        ),
        ExampleSpec(
            "ex7", "sine waves of three and two periods (2D)",
            lambda t: _stack(TWO_PI * t, np.sin(3 * TWO_PI * t)),
            lambda t: _stack(TWO_PI * t, np.sin(2 * TWO_PI * t)),
            45, 4.1655, 1.7899,
        ),
        ExampleSpec(
            "ex8", "helices with two and four turns (3D)",
            lambda t: _stack(np.cos(FOUR_PI * t), np.sin(FOUR_PI * t), t),
            lambda t: _stack(np.cos(2 * FOUR_PI * t), np.sin(2 * FOUR_PI * t), t),
            50, 6.1114, 3.2117,
        ),
        ExampleSpec(
            "ex9", "conical spirals of opposite handedness (3D)",
            lambda t: _stack(FOUR_PI * t * np.cos(FOUR_PI * t), FOUR_PI * t * np.sin(FOUR_PI * t), (FOUR_PI * t) ** 2),
            lambda t: _stack(FOUR_PI * t * np.cos(FOUR_PI * t), -FOUR_PI * t * np.sin(FOUR_PI * t), (FOUR_PI * t) ** 2),
            50, 8.5302, 8.5253,
        ),
    ]
}

DP_COMPARISON_LABEL = "synthetic near-quarter-circle pair (illustrative stand-in, not a published instance)"


def list_examples() -> List[ExampleSpec]:
    return list(EXAMPLES.values())


def get_example(example_id: str) -> ExampleSpec:
    """
    Look up an example by id

    Raises:
        KeyError: unknown id
    """
    try:
        return EXAMPLES[example_id]
    except KeyError:
        raise KeyError(f"unknown example {example_id!r}; choose from {', '.join(EXAMPLES)}") from None


def make_example(example_id: str) -> Tuple[PlCurve, PlCurve]:
    spec = get_example(example_id)
    logger.debug(f"Sampling {example_id} at {spec.samples + 1} points")
    return spec.curves()


def dp_comparison_pair(samples: int = 8) -> Tuple[PlCurve, PlCurve]:
    """
    Two coarse samplings of a quarter circle

    The first samples it uniformly; the second samples a slightly bulged
    copy at quadratically spaced angles, so the pieces of the two curves
    do not line up and the DP lattice cannot follow the best matching.
    """
    t = np.arange(samples + 1) / samples
    angle1 = 0.5 * np.pi * t
    f1 = _stack(np.cos(angle1), np.sin(angle1))
    angle2 = 0.5 * np.pi * t ** 2
    radius = 1.0 + 0.1 * np.sin(np.pi * t)
    f2 = _stack(radius * np.cos(angle2), radius * np.sin(angle2))
    return PlCurve(t, f1), PlCurve(t, f2)
