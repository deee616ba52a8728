"""Slice regions and the occupancy grid used by the placement search.

Angles are in degrees on screen coordinates (y grows downward): angle ``a``
points along ``(cos a, sin a)``, so 90 is bottom-center, 270 is top-center and
increasing angles run clockwise. A slice owns the half-open interval
``[start, start + sweep)``.

Grid arrays are indexed ``[y, x]``. ``OccupancyGrid.integral[y, x]`` is the
number of occupied cells in ``[0, x) x [0, y)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


_H = math.sqrt(0.5)
_EXACT = {
    0.0: (1.0, 0.0), 45.0: (_H, _H), 90.0: (0.0, 1.0), 135.0: (-_H, _H),
    180.0: (-1.0, 0.0), 225.0: (-_H, -_H), 270.0: (0.0, -1.0), 315.0: (_H, -_H),
}


def unit_vector(angle: float) -> tuple[float, float]:
    # exact axis/diagonal directions keep rays like 270 from leaking by an ulp
    a = angle % 360.0
    if a in _EXACT:
        return _EXACT[a]
    r = math.radians(a)
    return math.cos(r), math.sin(r)


@dataclass(frozen=True)
class SliceRegion:
    center: tuple[float, float]
    radius: float
    start_angle: float
    sweep: float

    def __post_init__(self):
        if not self.sweep > 0:
            raise ValueError(f"sweep must be positive, got {self.sweep}")
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius}")

    @property
    def end_angle(self) -> float:
        return (self.start_angle + self.sweep) % 360.0

    @property
    def full(self) -> bool:
        return self.sweep >= 360.0


def _sector_mask(dx, dy, s: SliceRegion):
    """Angular membership for offsets from the center.

    Works on Python floats and numpy arrays alike; only +, -, * and
    comparisons are used so both paths round identically.
    """
    if s.full:
        return dx == dx  # all true (same type as the input)
    ux, uy = unit_vector(s.start_angle)
    ex, ey = unit_vector(s.end_angle)
    c_start = ux * dy - uy * dx  # >0: clockwise on screen from the start ray
    c_end = dx * ey - dy * ex  # >0: counter-clockwise from the end ray
    if s.sweep < 180.0:
        return (c_start >= 0) & (c_end > 0)
    if s.sweep == 180.0:
        return (c_start > 0) | ((c_start == 0) & (ux * dx + uy * dy > 0))
    # reflex slice: complement of the (360 - sweep) sector that starts at the end ray
    c_rest_start = ex * dy - ey * dx
    c_rest_end = dx * uy - dy * ux
    return ~((c_rest_start >= 0) & (c_rest_end > 0))


def point_in_slice(p, s: SliceRegion) -> bool:
    dx = float(p[0]) - s.center[0]
    dy = float(p[1]) - s.center[1]
    if dx * dx + dy * dy > s.radius * s.radius:
        return False
    if dx == 0.0 and dy == 0.0:
        return True
    return bool(_sector_mask(np.float64(dx), np.float64(dy), s))


def points_in_slice(xs, ys, s: SliceRegion) -> np.ndarray:
    """Vectorized :func:`point_in_slice` over broadcastable coordinate arrays."""
    dx = np.asarray(xs, dtype=np.float64) - s.center[0]
    dy = np.asarray(ys, dtype=np.float64) - s.center[1]
    dx, dy = np.broadcast_arrays(dx, dy)
    inside = dx * dx + dy * dy <= s.radius * s.radius
    origin = (dx == 0.0) & (dy == 0.0)
    return inside & (origin | _sector_mask(dx, dy, s))


class OccupancyGrid:
    def __init__(self, width: int, height: int):
        if width <= 0 or height <= 0:
            raise ValueError("grid dimensions must be positive")
        self.width = width
        self.height = height
        self.cells = np.zeros((height, width), dtype=bool)
        self.integral = np.zeros((height + 1, width + 1), dtype=np.int64)

    def copy(self) -> "OccupancyGrid":
        g = OccupancyGrid(self.width, self.height)
        g.cells = self.cells.copy()
        g.integral = self.integral.copy()
        return g

    def rebuild(self) -> None:
        self.integral[1:, 1:] = self.cells.cumsum(axis=0).cumsum(axis=1)

    def count(self, x: int, y: int, w: int, h: int) -> int:
        """Occupied cells in the box with upper-left cell (x, y) and size w x h."""
        S = self.integral
        return int(S[y + h, x + w] - S[y, x + w] - S[y + h, x] + S[y, x])

    def in_bounds(self, x: int, y: int, w: int, h: int) -> bool:
        return x >= 0 and y >= 0 and w > 0 and h > 0 and x + w <= self.width and y + h <= self.height

    def mark(self, x: int, y: int, w: int, h: int) -> None:
        if not self.in_bounds(x, y, w, h):
            raise ValueError(f"box {(x, y, w, h)} outside {self.width}x{self.height} grid")
        fresh = ~self.cells[y:y + h, x:x + w]
        if not fresh.any():
            return
        self.cells[y:y + h, x:x + w] = True
        # prefix sums of the newly set cells, then extend them right and down
        P = np.zeros((h + 1, w + 1), dtype=self.integral.dtype)
        P[1:, 1:] = fresh.cumsum(axis=0).cumsum(axis=1)
        S = self.integral
        S[y:y + h + 1, x:x + w + 1] += P
        S[y:y + h + 1, x + w + 1:] += P[:, -1:]
        S[y + h + 1:, x:x + w + 1] += P[-1:, :]
        S[y + h + 1:, x + w + 1:] += P[-1, -1]


def mark_occupied(corner, box, g: OccupancyGrid) -> OccupancyGrid:
    g.mark(corner[0], corner[1], box[0], box[1])
    return g


class RegionMasks:
    """Per-(slice, canvas) lookup tables.

    ``cell`` holds the in-slice test at cell centers, ``lattice`` at integer
    points (box corners). ``half_x``/``half_y`` cover box centers that fall
    between the two. ``outside`` is the summed-area table of cells whose
    center is not in the slice.
    """

    def __init__(self, s: SliceRegion, width: int, height: int):
        xs = np.arange(width + 1, dtype=np.float64)
        ys = np.arange(height + 1, dtype=np.float64)
        self.lattice = points_in_slice(xs[None, :], ys[:, None], s)
        self.cell = points_in_slice(xs[None, :-1] + 0.5, ys[:-1, None] + 0.5, s)
        self.half_x = points_in_slice(xs[None, :-1] + 0.5, ys[:, None], s)
        self.half_y = points_in_slice(xs[None, :], ys[:-1, None] + 0.5, s)
        outside = np.zeros((height + 1, width + 1), dtype=np.int64)
        outside[1:, 1:] = (~self.cell).cumsum(axis=0).cumsum(axis=1)
        self.outside = outside
        rows = np.flatnonzero(self.cell.any(axis=1))
        cols = np.flatnonzero(self.cell.any(axis=0))
        if rows.size:
            self.bbox = (int(cols[0]), int(rows[0]), int(cols[-1]) + 1, int(rows[-1]) + 1)
        else:
            self.bbox = (0, 0, 0, 0)

    def center_ok(self, x: int, y: int, w: int, h: int) -> bool:
        return bool(self._center_table(w, h)[y + h // 2, x + w // 2])

    def _center_table(self, w: int, h: int) -> np.ndarray:
        # center = (x + w/2, y + h/2): integer or half-integer per axis
        if w % 2 == 0 and h % 2 == 0:
            return self.lattice
        if w % 2 and h % 2:
            return self.cell
        return self.half_x if w % 2 else self.half_y


@lru_cache(maxsize=64)
def region_masks(s: SliceRegion, width: int, height: int) -> RegionMasks:
    return RegionMasks(s, width, height)


def _corner_points(x, y, w, h):
    return [(x, y), (x + w, y), (x, y + h), (x + w, y + h), (x + w / 2, y + h / 2)]


def box_admissible(corner, box, s: SliceRegion, g: OccupancyGrid) -> bool:
    """True when the box at ``corner`` lies inside the slice and is unoccupied.

    Inside means the four corners and the center satisfy
    :func:`point_in_slice` and every covered cell's center does too.
    """
    x, y = int(corner[0]), int(corner[1])
    w, h = int(box[0]), int(box[1])
    if not g.in_bounds(x, y, w, h):
        return False
    if not all(point_in_slice(p, s) for p in _corner_points(x, y, w, h)):
        return False
    m = region_masks(s, g.width, g.height)
    O = m.outside
    out = O[y + h, x + w] - O[y, x + w] - O[y + h, x] + O[y, x]
    return out == 0 and g.count(x, y, w, h) == 0


def admissible_anchors(box, s: SliceRegion, g: OccupancyGrid, blocked=None, cells_only=False):
    """Row-major arrays ``(ys, xs)`` of every admissible upper-left corner.

    ``blocked`` may carry a precomputed summed-area table of occupied plus
    out-of-slice cells (it does not change while one word shrinks).
    With ``cells_only`` the corner/center point tests are skipped; that set is
    monotone in box size, which the shrink search relies on.
    """
    w, h = int(box[0]), int(box[1])
    m = region_masks(s, g.width, g.height)
    bx0, by0, bx1, by1 = m.bbox
    nx = bx1 - bx0 - w + 1
    ny = by1 - by0 - h + 1
    empty = np.empty(0, dtype=np.intp)
    if w <= 0 or h <= 0 or nx <= 0 or ny <= 0:
        return empty, empty
    if blocked is None:
        blocked = g.integral + m.outside
    B = blocked[by0:by1 + 1, bx0:bx1 + 1]
    sums = B[h:h + ny, w:w + nx] - B[0:ny, w:w + nx] - B[h:h + ny, 0:nx] + B[0:ny, 0:nx]
    ok = sums == 0
    if not cells_only and ok.any():
        L = m.lattice[by0:by1 + 1, bx0:bx1 + 1]
        ok &= L[0:ny, 0:nx] & L[0:ny, w:w + nx] & L[h:h + ny, 0:nx] & L[h:h + ny, w:w + nx]
        C = m._center_table(w, h)
        cy0, cx0 = by0 + h // 2, bx0 + w // 2
        ok &= C[cy0:cy0 + ny, cx0:cx0 + nx]
    ys, xs = np.nonzero(ok)
    return ys + by0, xs + bx0


def candidate_corners(box, s: SliceRegion, g: OccupancyGrid) -> list[tuple[int, int]]:
    """All admissible integer anchors, ordered by y then x."""
    ys, xs = admissible_anchors(box, s, g)
    return [(int(x), int(y)) for y, x in zip(ys, xs)]
