"""Kernel backend selection: compiled extension if importable, numpy otherwise.

Set RIDELENS_GEO_BACKEND=python (or =c) to force a backend; forcing `c`
when the extension is missing raises at call time.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py
from .index import NeighborhoodIndex

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

_FORCED = os.environ.get("RIDELENS_GEO_BACKEND")


def available_backends() -> tuple[str, ...]:
    return ("c", "python") if _compiled is not None else ("python",)


def active_backend() -> str:
    if _FORCED in ("c", "python"):
        return _FORCED
    return "c" if _compiled is not None else "python"


def classify_batch(
    px: np.ndarray,
    py: np.ndarray,
    index: NeighborhoodIndex,
    use_grid: bool = True,
    backend: str | None = None,
) -> np.ndarray:
    """Entry index per point (-1 outside all), via the selected backend."""
    px = np.ascontiguousarray(px, dtype=np.float64)
    py = np.ascontiguousarray(py, dtype=np.float64)
    which = backend or active_backend()
    if which == "python":
        return _kernels_py.classify_batch(px, py, index, use_grid=use_grid)
    if which == "c":
        if _compiled is None:
            raise RuntimeError("compiled geo kernel requested but not built")
        out = np.empty(px.shape[0], dtype=np.int32)
        _compiled.classify_batch_arrays(
            px,
            py,
            index.vx,
            index.vy,
            index.ring_start,
            index.entry_ring_start,
            index.entry_bbox,
            use_grid,
            index.gx0,
            index.gy0,
            index.gx1,
            index.gy1,
            index.csx,
            index.csy,
            index.nx,
            index.ny,
            index.cell_start,
            index.cell_entries,
            out,
        )
        return out
    raise ValueError(f"unknown geo backend {which!r}")
