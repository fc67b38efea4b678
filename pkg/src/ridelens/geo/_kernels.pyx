# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch classification kernel.

Even-odd crossing parity with boundary-counts-as-inside, first containing
entry in ascending id order. Must stay arithmetically identical to
``_kernels_py`` (same cross-product expression, compiled with fp
contraction off) so backends are interchangeable.
"""


cdef inline bint _entry_contains(
    double x,
    double y,
    const double[::1] vx,
    const double[::1] vy,
    const long long[::1] ring_start,
    Py_ssize_t r_first,
    Py_ssize_t r_last,
) noexcept nogil:
    cdef bint inside = False
    cdef Py_ssize_t r, i, s, t
    cdef double x1, y1, x2, y2, cross
    for r in range(r_first, r_last):
        s = ring_start[r]
        t = ring_start[r + 1]
        for i in range(s, t - 1):
            x1 = vx[i]
            y1 = vy[i]
            x2 = vx[i + 1]
            y2 = vy[i + 1]
            cross = (x2 - x1) * (y - y1) - (y2 - y1) * (x - x1)
            if cross == 0.0:
                if (
                    x >= min(x1, x2)
                    and x <= max(x1, x2)
                    and y >= min(y1, y2)
                    and y <= max(y1, y2)
                ):
                    return True  # on an edge or vertex: inside by tie-break
            if (y1 > y) != (y2 > y):
                if (cross > 0.0) == (y2 > y1):
                    inside = not inside
    return inside


def classify_batch_arrays(
    const double[::1] px,
    const double[::1] py,
    const double[::1] vx,
    const double[::1] vy,
    const long long[::1] ring_start,
    const long long[::1] entry_ring_start,
    const double[:, ::1] entry_bbox,
    bint use_grid,
    double gx0,
    double gy0,
    double gx1,
    double gy1,
    double csx,
    double csy,
    int nx,
    int ny,
    const long long[::1] cell_start,
    const int[::1] cell_entries,
    int[::1] out,
):
    cdef Py_ssize_t n = px.shape[0]
    cdef Py_ssize_t n_entries = entry_ring_start.shape[0] - 1
    cdef Py_ssize_t i, k, e
    cdef int cx, cy
    cdef long long cell
    cdef double x, y
    cdef int best
    with nogil:
        for i in range(n):
            x = px[i]
            y = py[i]
            best = -1
            if use_grid:
                if gx0 <= x <= gx1 and gy0 <= y <= gy1:
                    cx = <int>((x - gx0) / csx)
                    if cx >= nx:
                        cx = nx - 1
                    cy = <int>((y - gy0) / csy)
                    if cy >= ny:
                        cy = ny - 1
                    cell = <long long>cy * nx + cx
                    for k in range(cell_start[cell], cell_start[cell + 1]):
                        e = cell_entries[k]
                        if (
                            entry_bbox[e, 0] <= x <= entry_bbox[e, 2]
                            and entry_bbox[e, 1] <= y <= entry_bbox[e, 3]
                        ):
                            if _entry_contains(
                                x, y, vx, vy, ring_start,
                                entry_ring_start[e], entry_ring_start[e + 1],
                            ):
                                best = <int>e
                                break
            else:
                for e in range(n_entries):
                    if (
                        entry_bbox[e, 0] <= x <= entry_bbox[e, 2]
                        and entry_bbox[e, 1] <= y <= entry_bbox[e, 3]
                    ):
                        if _entry_contains(
                            x, y, vx, vy, ring_start,
                            entry_ring_start[e], entry_ring_start[e + 1],
                        ):
                            best = <int>e
                            break
            out[i] = best
