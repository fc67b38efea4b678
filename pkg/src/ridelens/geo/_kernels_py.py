"""Pure-Python (numpy) batch classification kernel.

Fallback used when the compiled extension is unavailable. Semantics are
bit-identical to the compiled kernel: even-odd crossing parity with the
same cross-product edge test, boundary points count as inside, first
containing entry in ascending id order wins.
"""

from __future__ import annotations

import numpy as np

from .index import NeighborhoodIndex

_CHUNK = 16384  # bounds the points x edges broadcast temporaries


def _entry_contains(x: np.ndarray, y: np.ndarray, idx: NeighborhoodIndex, e: int) -> np.ndarray:
    inside = np.zeros(x.shape[0], dtype=bool)
    on_edge = np.zeros(x.shape[0], dtype=bool)
    for r in range(idx.entry_ring_start[e], idx.entry_ring_start[e + 1]):
        s, t = idx.ring_start[r], idx.ring_start[r + 1]
        x1, y1 = idx.vx[s : t - 1], idx.vy[s : t - 1]
        x2, y2 = idx.vx[s + 1 : t], idx.vy[s + 1 : t]
        ex_lo, ex_hi = np.minimum(x1, x2), np.maximum(x1, x2)
        ey_lo, ey_hi = np.minimum(y1, y2), np.maximum(y1, y2)
        rising = y2 > y1
        for c in range(0, x.shape[0], _CHUNK):
            xc = x[c : c + _CHUNK, None]
            yc = y[c : c + _CHUNK, None]
            cross = (x2 - x1) * (yc - y1) - (y2 - y1) * (xc - x1)
            straddle = (y1 > yc) != (y2 > yc)
            crossed = straddle & ((cross > 0) == rising)
            inside[c : c + _CHUNK] ^= (crossed.sum(axis=1) & 1).astype(bool)
            edge = (
                (cross == 0.0)
                & (xc >= ex_lo)
                & (xc <= ex_hi)
                & (yc >= ey_lo)
                & (yc <= ey_hi)
            )
            on_edge[c : c + _CHUNK] |= edge.any(axis=1)
    return inside | on_edge


def classify_batch(
    px: np.ndarray,
    py: np.ndarray,
    idx: NeighborhoodIndex,
    use_grid: bool = True,
) -> np.ndarray:
    """Entry index per point (ascending-id first match), -1 when outside all.

    ``use_grid`` is accepted for interface parity with the compiled kernel;
    this implementation prunes by entry bounding box, which is equally exact.
    """
    del use_grid
    out = np.full(px.shape[0], -1, dtype=np.int32)
    for e in range(idx.n_entries):
        bx0, by0, bx1, by1 = idx.entry_bbox[e]
        cand = np.flatnonzero(
            (out == -1) & (px >= bx0) & (px <= bx1) & (py >= by0) & (py <= by1)
        )
        if cand.size == 0:
            continue
        hit = _entry_contains(px[cand], py[cand], idx, e)
        out[cand[hit]] = e
    return out
