"""
SVG overlays of tracked body points

One polyline per tracked point (root, vertices, wheels). The exact model is
drawn solid, the nilpotent approximation dashed. The viewport is fitted to
the data bounds so identical inputs give identical files.
"""

from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..trident.model import Parametrization
from .integrator import Trajectory

WIDTH = 640
HEIGHT = 640
MARGIN = 32

COLORS: Dict[str, str] = {
    "root": "#222222",
    "v1": "#1f77b4", "v2": "#2ca02c", "v3": "#d62728",
    "w1": "#6baed6", "w2": "#74c476", "w3": "#fb6a4a",
}


def tracks(trajectory: Trajectory, parametrization: Parametrization) -> Dict[str, np.ndarray]:
    """Path of every tracked point, shape (samples, 2) each."""
    poses = trajectory.poses(parametrization)
    names = list(poses[0].points())
    return {name: np.array([pose.points()[name] for pose in poses]) for name in names}


def _bounds(all_tracks: Sequence[Dict[str, np.ndarray]]) -> Tuple[float, float, float, float]:
    stacked = np.vstack([path for group in all_tracks for path in group.values()])
    (xmin, ymin), (xmax, ymax) = stacked.min(axis=0), stacked.max(axis=0)
    span = max(xmax - xmin, ymax - ymin, 1e-9)
    cx, cy = (xmin + xmax) / 2, (ymin + ymax) / 2
    return cx - span / 2, cy - span / 2, span, span


def _polyline(path: np.ndarray, bounds, color: str, dashed: bool, stride: int) -> str:
    x0, y0, w, h = bounds
    scale = (WIDTH - 2 * MARGIN) / w
    points = []
    picked = path[::stride]
    if len(path) and (len(path) - 1) % stride:
        picked = np.vstack([picked, path[-1]])
    for x, y in picked:
        # SVG y grows downwards
        px = MARGIN + (x - x0) * scale
        py = HEIGHT - MARGIN - (y - y0) * scale
        points.append(f"{px:.3f},{py:.3f}")
    dash = ' stroke-dasharray="6 4"' if dashed else ""
    return (
        f'  <polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} '
        f'points="{" ".join(points)}"/>'
    )


def render_svg(
    exact: Trajectory,
    nilpotent: Optional[Trajectory] = None,
    parametrization: Parametrization = Parametrization.TRANSFORMED,
    title: str = "",
    max_points: int = 500,
) -> str:
    """SVG document with the tracked points of one or two trajectories."""
    groups = [tracks(exact, parametrization)]
    if nilpotent is not None:
        groups.append(tracks(nilpotent, parametrization))
    bounds = _bounds(groups)
    stride = max(1, len(exact.times) // max_points)
    lines: List[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'  <rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        lines.append(f'  <text x="{MARGIN}" y="{MARGIN - 10}" font-family="sans-serif" font-size="14">{title}</text>')
    for dashed, group in zip((False, True), groups):
        for name, path in group.items():
            lines.append(_polyline(path, bounds, COLORS.get(name, "#000000"), dashed, stride))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_svg(path: Path, *args, **kwargs) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_svg(*args, **kwargs), encoding="utf-8")
    return path
