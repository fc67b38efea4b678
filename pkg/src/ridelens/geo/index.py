"""Flattened boundary geometry plus a uniform grid over bounding boxes.

Classification kernels consume this layout instead of per-entry Python
objects. The grid is an accelerator only: it prunes candidate entries by
bounding box and never changes results (cells hold a superset of every
entry whose polygon could contain a point in the cell).
"""

from __future__ import annotations

import numpy as np

from ..model import NeighborhoodSet

DEFAULT_CELL_DEG = 0.01  # ~1 km at Chicago's latitude
MAX_GRID_CELLS = 1024  # per axis, caps memory on pathological extents


class NeighborhoodIndex:
    """Immutable arrays describing one NeighborhoodSet, ordered by id."""

    def __init__(self, nset: NeighborhoodSet, cell_size: float = DEFAULT_CELL_DEG):
        self.ids: tuple[str, ...] = nset.ids
        self.n_entries = len(nset)

        vx: list[float] = []
        vy: list[float] = []
        ring_start = [0]
        entry_ring_start = [0]
        bboxes = np.empty((self.n_entries, 4), dtype=np.float64)
        for e, entry in enumerate(nset):
            exmin = eymin = np.inf
            exmax = eymax = -np.inf
            for ring in entry.rings:
                for lon, lat in ring:
                    vx.append(lon)
                    vy.append(lat)
                    exmin = min(exmin, lon)
                    exmax = max(exmax, lon)
                    eymin = min(eymin, lat)
                    eymax = max(eymax, lat)
                ring_start.append(len(vx))
            entry_ring_start.append(len(ring_start) - 1)
            bboxes[e] = (exmin, eymin, exmax, eymax)

        self.vx = np.asarray(vx, dtype=np.float64)
        self.vy = np.asarray(vy, dtype=np.float64)
        self.ring_start = np.asarray(ring_start, dtype=np.int64)
        self.entry_ring_start = np.asarray(entry_ring_start, dtype=np.int64)
        self.entry_bbox = bboxes

        self._build_grid(cell_size)

    def _build_grid(self, cell_size: float) -> None:
        if self.n_entries == 0:
            self.gx0 = self.gy0 = 0.0
            self.gx1 = self.gy1 = -1.0  # empty: every point rejects
            self.csx = self.csy = 1.0
            self.nx = self.ny = 1
            self.cell_start = np.zeros(2, dtype=np.int64)
            self.cell_entries = np.zeros(0, dtype=np.int32)
            return

        self.gx0, self.gy0 = self.entry_bbox[:, 0].min(), self.entry_bbox[:, 1].min()
        self.gx1, self.gy1 = self.entry_bbox[:, 2].max(), self.entry_bbox[:, 3].max()
        width = max(self.gx1 - self.gx0, 0.0)
        height = max(self.gy1 - self.gy0, 0.0)
        self.nx = int(np.clip(np.ceil(width / cell_size), 1, MAX_GRID_CELLS))
        self.ny = int(np.clip(np.ceil(height / cell_size), 1, MAX_GRID_CELLS))
        self.csx = width / self.nx if width > 0 else 1.0
        self.csy = height / self.ny if height > 0 else 1.0

        def cell_range(lo: float, hi: float, origin: float, size: float, count: int):
            c0 = min(max(int((lo - origin) / size), 0), count - 1)
            c1 = min(max(int((hi - origin) / size), 0), count - 1)
            return c0, c1

        cells: list[list[int]] = [[] for _ in range(self.nx * self.ny)]
        for e in range(self.n_entries):
            bx0, by0, bx1, by1 = self.entry_bbox[e]
            cx0, cx1 = cell_range(bx0, bx1, self.gx0, self.csx, self.nx)
            cy0, cy1 = cell_range(by0, by1, self.gy0, self.csy, self.ny)
            for cy in range(cy0, cy1 + 1):
                row = cy * self.nx
                for cx in range(cx0, cx1 + 1):
                    cells[row + cx].append(e)

        # CSR layout; per-cell lists are ascending by entry (id) order already.
        counts = np.fromiter((len(c) for c in cells), dtype=np.int64, count=len(cells))
        self.cell_start = np.zeros(len(cells) + 1, dtype=np.int64)
        np.cumsum(counts, out=self.cell_start[1:])
        flat = np.empty(int(self.cell_start[-1]), dtype=np.int32)
        for i, members in enumerate(cells):
            flat[self.cell_start[i] : self.cell_start[i + 1]] = members
        self.cell_entries = flat
