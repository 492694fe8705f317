"""
SVG plots of matchings and geodesics

Rendered with the non-interactive Agg backend; the SVG hash salt and
metadata are fixed so the same inputs give byte-identical files.
"""
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.patches as patches  # noqa: E402
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from elastic_match.logger import setup_logger  # noqa: E402
from elastic_match.matching.curves import PlCurve, PlReparam  # noqa: E402
from elastic_match.schemas.results import GridDump, MatchReport  # noqa: E402

logger = setup_logger(__name__)

matplotlib.rcParams["svg.hashsalt"] = "elastic-match"
matplotlib.rcParams["svg.fonttype"] = "none"

POSITIVE_COLOR = "#cfe3f5"
NEGATIVE_COLOR = "#f5d6cf"
SEGMENT_COLORS = {"P": "#1f5f9e", "N": "#c0392b", "DP": "#555555"}


def _save(fig, out) -> Path:
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)
    logger.debug(f"Wrote {out}")
    return out


def plot_grid_path(match_report: MatchReport, grid_dump: GridDump, out) -> Path:
    """Blocks shaded by weight sign with the matching path drawn over them"""
    fig, ax = plt.subplots(figsize=(6, 6))
    s, t = grid_dump.s_breaks, grid_dump.t_breaks
    for i in range(len(s) - 1):
        for j in range(len(t) - 1):
            color = POSITIVE_COLOR if grid_dump.W[i][j] > 0 else NEGATIVE_COLOR
            ax.add_patch(patches.Rectangle((s[i], t[j]), s[i + 1] - s[i], t[j + 1] - t[j],
                                           facecolor=color, edgecolor="#999999", linewidth=0.3))
    for segment in match_report.path:
        pts = np.array(segment.points)
        ax.plot(pts[:, 0], pts[:, 1], color=SEGMENT_COLORS[segment.type], linewidth=1.5)
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    ax.set_aspect("equal")
    ax.set_xlabel("s (curve 1)")
    ax.set_ylabel("t (curve 2)")
    ax.set_title(f"Optimal matching ({match_report.engine}), distance {match_report.distance:.4f}")
    return _save(fig, out)


def plot_alignment(f1: PlCurve, f2: PlCurve, gamma1: PlReparam, gamma2: PlReparam, out,
                   pairs: int = 25) -> Path:
    """
    Both curves with matched point pairs joined by thin lines

    Curves of dimension above 2 are drawn by their first two coordinates.
    """
    fig, ax = plt.subplots(figsize=(6, 6))
    x1, x2 = f1(np.linspace(0, 1, 400)), f2(np.linspace(0, 1, 400))
    ax.plot(x1[:, 0], x1[:, 1] if f1.dim > 1 else np.zeros(len(x1)), color="#1f5f9e", label="curve 1")
    ax.plot(x2[:, 0], x2[:, 1] if f2.dim > 1 else np.ones(len(x2)), color="#c0392b", label="curve 2")
    z = np.linspace(0, 1, pairs)
    p1, p2 = f1(gamma1(z)), f2(gamma2(z))
    for a, b in zip(p1, p2):
        ya = a[1] if f1.dim > 1 else 0.0
        yb = b[1] if f2.dim > 1 else 1.0
        ax.plot([a[0], b[0]], [ya, yb], color="#888888", linewidth=0.5)
    ax.set_aspect("equal", adjustable="datalim")
    ax.legend(loc="best")
    ax.set_title("Matched points")
    return _save(fig, out)


def plot_geodesic(curves: Sequence[PlCurve], out) -> Path:
    """Geodesic snapshots side by side, shifted horizontally"""
    fig, ax = plt.subplots(figsize=(2.5 * len(curves), 3))
    offset = 0.0
    cmap = matplotlib.colormaps["viridis"]
    for k, curve in enumerate(curves):
        grid = np.linspace(0, 1, 400)
        pts = curve(grid)
        # 1D curves are drawn as graphs
        x, y = (pts[:, 0], pts[:, 1]) if curve.dim > 1 else (grid, pts[:, 0])
        width = max(float(np.ptp(x)), 1e-9)
        ax.plot(x - x.min() + offset, y, color=cmap(k / max(len(curves) - 1, 1)))
        offset += 1.2 * width
    ax.set_aspect("equal", adjustable="datalim")
    ax.set_yticks([])
    ax.set_title("Geodesic")
    return _save(fig, out)
