"""Raster approximations of the inverse limit attractor of a tent map.

The picture is the depth-k image G^k(R) of the rectangle R = [a, b] x [0, 1]
under the fattened map described in :mod:`kneading._kernels`.  Row 0 of a
grid is the top of R (height 1); column 0 is x = a.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from scipy import ndimage

from . import _kernels
from .errors import DomainError
from .unimodal import TentMap, UnimodalMap


def attractor_raster(m: UnimodalMap, depth: int, width: int, height: int) -> np.ndarray:
    """Boolean grid, True where the pixel meets G^depth(R)."""
    if not isinstance(m, TentMap):
        raise DomainError("rendering needs a tent map")
    if depth < 1:
        raise DomainError("depth must be at least 1")
    if width < 2 or height < 2:
        raise DomainError("raster must be at least 2x2")
    return _kernels.raster(float(m.t), float(m.a), float(m.b), float(m.c), float(m.fa), depth, width, height)


def is_nested(inner: np.ndarray, outer: np.ndarray) -> bool:
    return bool(np.all(~inner | outer))


def boundary_components(grid: np.ndarray) -> int:
    """Connected components of the complement that touch the frame (4-connectivity)."""
    lab, _ = ndimage.label(~grid)
    edge = np.concatenate([lab[0], lab[-1], lab[:, 0], lab[:, -1]])
    return len(set(edge.tolist()) - {0})


def tunnel_count(grid: np.ndarray) -> int:
    """Number of complementary channels that reach the outer frame."""
    return boundary_components(grid)


def write_ppm(grid: np.ndarray, path) -> None:
    """Binary greyscale PGM/PPM (P5): occupied pixels black on white."""
    h, w = grid.shape
    data = np.where(grid, 0, 255).astype(np.uint8)
    with open(path, "wb") as fh:
        fh.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        fh.write(data.tobytes())


def read_ppm(path) -> np.ndarray:
    raw = Path(path).read_bytes()
    parts = raw.split(maxsplit=4)
    if parts[0] != b"P5":
        raise ValueError("not a P5 file")
    w, h = int(parts[1]), int(parts[2])
    data = np.frombuffer(parts[4][: w * h], dtype=np.uint8).reshape(h, w)
    return data == 0


def svg_text(grid: np.ndarray) -> str:
    """One horizontal polyline per run of occupied pixels in each row."""
    h, w = grid.shape
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<rect width="{w}" height="{h}" fill="white"/>',
    ]
    for j in range(h):
        row = np.concatenate([[False], grid[j], [False]])
        d = np.diff(row.astype(np.int8))
        starts = np.nonzero(d == 1)[0]
        ends = np.nonzero(d == -1)[0]
        for s, e in zip(starts, ends):
            y = j + 0.5
            lines.append(f'<polyline points="{s},{y} {e},{y}" stroke="black" stroke-width="1" fill="none"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_svg(grid: np.ndarray, path) -> None:
    Path(path).write_text(svg_text(grid))
