"""Raster kernels for the fattened tent map.

The fattened map G sends [a, b] x [0, 1] into itself.  Points left of c go to
the lower third of the image fiber (h -> h/3), points right of c go to the
upper third with the fiber reversed (h -> 1 - h/3), and the column over c is
stretched into the fold {b} x [0, 1] that joins the two.  A pixel is marked
when it meets G^k(R); this is decided by pulling the pixel box back through
the inverse branches, so images are nested by construction.

Two interchangeable implementations: a numba kernel and a vectorised numpy
one.  Set KNEADING_DISABLE_NUMBA=1 to force numpy.
"""

from __future__ import annotations

import os

import numpy as np

THIRD = 1.0 / 3.0
TWO_THIRDS = 2.0 / 3.0
# outward padding of every pulled-back box, so that float rounding cannot
# lose the fold column at x = b
EPS = 1e-12


def numba_enabled() -> bool:
    if os.environ.get("KNEADING_DISABLE_NUMBA", "") not in ("", "0"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def _pixel_hit(t, a, b, c, fa, x0, x1, h0, h1, depth, stack):
    # stack rows: x0, x1, h0, h1, level
    top = 0
    stack[0, 0] = x0
    stack[0, 1] = x1
    stack[0, 2] = h0
    stack[0, 3] = h1
    stack[0, 4] = depth
    top = 1
    while top > 0:
        top -= 1
        x0 = stack[top, 0]
        x1 = stack[top, 1]
        h0 = stack[top, 2]
        h1 = stack[top, 3]
        k = stack[top, 4]
        if x0 > b or x1 < a or h0 > 1.0 or h1 < 0.0:
            continue
        if k <= 0:
            return True
        if h0 <= 0.0 and h1 >= 1.0:
            return True
        # left branch: image fiber [0, 1/3], x' in [f(a), b]
        lx0 = max(x0, fa)
        lx1 = min(x1, b)
        if lx0 <= lx1 and h0 <= THIRD:
            stack[top, 0] = lx0 / t - EPS
            stack[top, 1] = lx1 / t + EPS
            stack[top, 2] = 3.0 * max(h0, 0.0)
            stack[top, 3] = 3.0 * min(h1, THIRD)
            stack[top, 4] = k - 1
            top += 1
        # right branch: image fiber [2/3, 1], reversed
        rx0 = max(x0, a)
        rx1 = min(x1, b)
        if rx0 <= rx1 and h1 >= TWO_THIRDS:
            stack[top, 0] = 1.0 - rx1 / t - EPS
            stack[top, 1] = 1.0 - rx0 / t + EPS
            stack[top, 2] = 3.0 * (1.0 - min(h1, 1.0))
            stack[top, 3] = 3.0 * (1.0 - max(h0, TWO_THIRDS))
            stack[top, 4] = k - 1
            top += 1
        # the fold over x' = b comes from the column over c
        if x1 >= b:
            hi = min(3.0 * h1, 3.0 * (1.0 - h0), 1.0)
            if hi >= 0.0:
                stack[top, 0] = c
                stack[top, 1] = c
                stack[top, 2] = 0.0
                stack[top, 3] = hi
                stack[top, 4] = k - 1
                top += 1
    return False


_jit_raster = None


def _get_jit():
    global _jit_raster
    if _jit_raster is None:
        from numba import njit

        hit = njit(cache=True)(_pixel_hit)

        def loop(t, a, b, c, fa, depth, width, height, out):
            stack = np.empty((3 * depth + 8, 5))
            dx = (b - a) / width
            dh = 1.0 / height
            for j in range(height):
                h1 = 1.0 - j * dh
                h0 = 1.0 - (j + 1) * dh
                for i in range(width):
                    x0 = a + i * dx
                    x1 = b if i == width - 1 else a + (i + 1) * dx
                    out[j, i] = hit(t, a, b, c, fa, x0, x1, h0, h1, depth, stack)

        _jit_raster = njit(cache=True)(loop)
    return _jit_raster


def raster_numpy(t, a, b, c, fa, depth, width, height) -> np.ndarray:
    """Level-synchronous pullback of all pixel boxes at once."""
    dx = (b - a) / width
    dh = 1.0 / height
    jj, ii = np.mgrid[0:height, 0:width]
    owner = (jj * width + ii).ravel()
    x0 = (a + ii * dx).ravel().astype(float)
    x1 = a + (ii + 1) * dx
    x1[:, -1] = b
    x1 = x1.ravel().astype(float)
    h1 = (1.0 - jj * dh).ravel().astype(float)
    h0 = (1.0 - (jj + 1) * dh).ravel().astype(float)
    hit = np.zeros(width * height, dtype=bool)
    for k in range(depth, -1, -1):
        live = (x0 <= b) & (x1 >= a) & (h0 <= 1.0) & (h1 >= 0.0) & ~hit[owner]
        owner, x0, x1, h0, h1 = owner[live], x0[live], x1[live], h0[live], h1[live]
        done = (h0 <= 0.0) & (h1 >= 1.0)
        if k == 0:
            done[:] = True
        hit[owner[done]] = True
        keep = ~done
        owner, x0, x1, h0, h1 = owner[keep], x0[keep], x1[keep], h0[keep], h1[keep]
        if k == 0 or owner.size == 0:
            break
        parts = []
        lx0 = np.maximum(x0, fa)
        lx1 = np.minimum(x1, b)
        sel = (lx0 <= lx1) & (h0 <= THIRD)
        parts.append(
            (owner[sel], lx0[sel] / t - EPS, lx1[sel] / t + EPS, 3.0 * np.maximum(h0[sel], 0.0), 3.0 * np.minimum(h1[sel], THIRD))
        )
        rx0 = np.maximum(x0, a)
        rx1 = np.minimum(x1, b)
        sel = (rx0 <= rx1) & (h1 >= TWO_THIRDS)
        parts.append(
            (
                owner[sel],
                1.0 - rx1[sel] / t - EPS,
                1.0 - rx0[sel] / t + EPS,
                3.0 * (1.0 - np.minimum(h1[sel], 1.0)),
                3.0 * (1.0 - np.maximum(h0[sel], TWO_THIRDS)),
            )
        )
        hi = np.minimum(np.minimum(3.0 * h1, 3.0 * (1.0 - h0)), 1.0)
        sel = (x1 >= b) & (hi >= 0.0)
        n = int(sel.sum())
        parts.append((owner[sel], np.full(n, c), np.full(n, c), np.zeros(n), hi[sel]))
        owner = np.concatenate([p[0] for p in parts])
        x0 = np.concatenate([p[1] for p in parts])
        x1 = np.concatenate([p[2] for p in parts])
        h0 = np.concatenate([p[3] for p in parts])
        h1 = np.concatenate([p[4] for p in parts])
    return hit.reshape(height, width)


def raster(t: float, a: float, b: float, c: float, fa: float, depth: int, width: int, height: int) -> np.ndarray:
    if numba_enabled():
        out = np.zeros((height, width), dtype=np.bool_)
        _get_jit()(float(t), float(a), float(b), float(c), float(fa), int(depth), int(width), int(height), out)
        return out
    return raster_numpy(float(t), float(a), float(b), float(c), float(fa), int(depth), int(width), int(height))
