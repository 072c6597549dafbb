"""Workspace model: polygon with holes plus carved obstacle disks.

The obstacle space is everything outside the outer polygon, inside a hole, or
inside a carved disk. ``clearance`` measures the distance from a point to the
obstacle space; a unit-disk robot centered at p fits iff clearance(p) >= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import InvalidWorkspace
from .geometry import (
    EPS,
    Circle,
    Point,
    Segment,
    dist_point_segment,
    segments_properly_intersect,
)


@dataclass(frozen=True)
class Workspace:
    outer: tuple[Point, ...]
    holes: tuple[tuple[Point, ...], ...] = ()
    carved_disks: tuple[Circle, ...] = ()

    @staticmethod
    def from_coords(outer, holes=(), carved_disks=()) -> "Workspace":
        return Workspace(
            tuple(Point(float(x), float(y)) for x, y in outer),
            tuple(tuple(Point(float(x), float(y)) for x, y in h) for h in holes),
            tuple(carved_disks),
        )

    @property
    def is_simple_polygon(self) -> bool:
        return not self.holes and not self.carved_disks

    def boundary_chains(self) -> list[tuple[Point, ...]]:
        return [self.outer, *self.holes]

    def boundary_segments(self) -> list[Segment]:
        segs = []
        for chain in self.boundary_chains():
            n = len(chain)
            for i in range(n):
                a, b = chain[i], chain[(i + 1) % n]
                if a.dist(b) > EPS:
                    segs.append(Segment(a, b))
        return segs

    def bbox(self) -> tuple[float, float, float, float]:
        xs = [p.x for p in self.outer]
        ys = [p.y for p in self.outer]
        return min(xs), min(ys), max(xs), max(ys)


def _polygon_area(chain) -> float:
    s = 0.0
    n = len(chain)
    for i in range(n):
        a, b = chain[i], chain[(i + 1) % n]
        s += a.cross(b)
    return 0.5 * s


def _point_in_polygon(p: Point, chain) -> bool:
    """Even-odd test; points within EPS of the boundary count as inside."""
    inside = False
    n = len(chain)
    for i in range(n):
        a, b = chain[i], chain[(i + 1) % n]
        if dist_point_segment(p, Segment(a, b)) <= EPS:
            return True
        if (a.y > p.y) != (b.y > p.y):
            xint = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if xint > p.x:
                inside = not inside
    return inside


def oriented_chains(w: Workspace) -> list[tuple[Point, ...]]:
    """All boundary chains oriented with the workspace interior on the left.

    The outer chain becomes counter-clockwise and each hole clockwise,
    regardless of the order the caller supplied.
    """
    chains = []
    outer = w.outer if _polygon_area(w.outer) > 0 else tuple(reversed(w.outer))
    chains.append(outer)
    for h in w.holes:
        chains.append(h if _polygon_area(h) < 0 else tuple(reversed(h)))
    return chains


def reflex_vertices(w: Workspace) -> list[Point]:
    """Vertices whose interior angle exceeds pi (right turns, interior-left)."""
    out = []
    for chain in oriented_chains(w):
        n = len(chain)
        for i in range(n):
            prev, cur, nxt = chain[i - 1], chain[i], chain[(i + 1) % n]
            d1 = cur - prev
            d2 = nxt - cur
            if d1.norm() < EPS or d2.norm() < EPS:
                continue
            if d1.cross(d2) < -EPS * d1.norm() * d2.norm():
                out.append(cur)
    return out


def validate_workspace(w: Workspace) -> None:
    if len(w.outer) < 3:
        raise InvalidWorkspace("outer polygon needs at least 3 vertices")
    segs_per_chain = []
    for chain in w.boundary_chains():
        if len(chain) < 3:
            raise InvalidWorkspace("hole polygon needs at least 3 vertices")
        n = len(chain)
        segs = [Segment(chain[i], chain[(i + 1) % n]) for i in range(n)]
        for s in segs:
            if s.length <= EPS:
                raise InvalidWorkspace("degenerate zero-length edge")
        for i in range(n):
            for j in range(i + 1, n):
                adjacent = j == i + 1 or (i == 0 and j == n - 1)
                if adjacent:
                    continue
                if segments_properly_intersect(segs[i], segs[j]):
                    raise InvalidWorkspace("self-intersecting polygon chain")
        segs_per_chain.append(segs)
    for hi, hole in enumerate(w.holes):
        for p in hole:
            if not _point_in_polygon(p, w.outer):
                raise InvalidWorkspace("hole vertex outside the outer polygon")
        for other_segs in segs_per_chain[1 + hi + 1 :]:
            for s1 in segs_per_chain[1 + hi]:
                for s2 in other_segs:
                    if segments_properly_intersect(s1, s2):
                        raise InvalidWorkspace("holes intersect each other")
    for disk in w.carved_disks:
        if disk.radius < 0:
            raise InvalidWorkspace("carved disk with negative radius")
        if not _point_in_polygon(disk.center, w.outer):
            raise InvalidWorkspace("carved disk center outside the outer polygon")


def contains_point(w: Workspace, p: Point) -> bool:
    """Membership in the (closed) workspace."""
    if not _point_in_polygon(p, w.outer):
        return False
    for h in w.holes:
        if _point_in_polygon(p, h) and not any(
            dist_point_segment(p, Segment(h[i], h[(i + 1) % len(h)])) <= EPS
            for i in range(len(h))
        ):
            return False
    for d in w.carved_disks:
        if p.dist(d.center) < d.radius - EPS:
            return False
    return True


def clearance(w: Workspace, p: Point) -> float:
    """Distance from p to the obstacle space (0 when p is not in the workspace)."""
    if not contains_point(w, p):
        return 0.0
    best = math.inf
    for seg in w.boundary_segments():
        best = min(best, dist_point_segment(p, seg))
    for d in w.carved_disks:
        best = min(best, max(0.0, p.dist(d.center) - d.radius))
    return best


def carve_disk(w: Workspace, center: Point, radius: float) -> Workspace:
    """Append an obstacle disk; a zero radius or duplicate disk is a no-op."""
    if radius <= EPS:
        return w
    for d in w.carved_disks:
        if d.center.dist(center) <= EPS and abs(d.radius - radius) <= EPS:
            return w
    return replace(w, carved_disks=w.carved_disks + (Circle(center, radius),))


# ---------------------------------------------------------------------------
# vectorized clearance for sampled containment tests


@dataclass
class _ClearanceField:
    ax: np.ndarray
    ay: np.ndarray
    ux: np.ndarray  # edge direction (unnormalized)
    uy: np.ndarray
    uu: np.ndarray
    dcx: np.ndarray
    dcy: np.ndarray
    dr: np.ndarray
    outer_x: np.ndarray
    outer_y: np.ndarray
    holes_xy: list[tuple[np.ndarray, np.ndarray]] = field(default_factory=list)


def clearance_field(w: Workspace) -> _ClearanceField:
    segs = w.boundary_segments()
    ax = np.array([s.a.x for s in segs])
    ay = np.array([s.a.y for s in segs])
    bx = np.array([s.b.x for s in segs])
    by = np.array([s.b.y for s in segs])
    ux, uy = bx - ax, by - ay
    uu = ux * ux + uy * uy
    dcx = np.array([d.center.x for d in w.carved_disks])
    dcy = np.array([d.center.y for d in w.carved_disks])
    dr = np.array([d.radius for d in w.carved_disks])
    fld = _ClearanceField(
        ax, ay, ux, uy, uu, dcx, dcy, dr,
        np.array([p.x for p in w.outer]),
        np.array([p.y for p in w.outer]),
        [(np.array([p.x for p in h]), np.array([p.y for p in h])) for h in w.holes],
    )
    return fld


def _in_polygon_many(px, py, vx, vy):
    n = len(vx)
    inside = np.zeros(px.shape, dtype=bool)
    x1, y1 = vx, vy
    x2, y2 = np.roll(vx, -1), np.roll(vy, -1)
    for i in range(n):
        cond = (y1[i] > py) != (y2[i] > py)
        with np.errstate(divide="ignore", invalid="ignore"):
            xint = x1[i] + (py - y1[i]) * (x2[i] - x1[i]) / (y2[i] - y1[i])
        inside ^= cond & (xint > px)
    return inside


def clearance_many(fld: _ClearanceField, pts: np.ndarray) -> np.ndarray:
    """Clearance for an (N, 2) array of points (0 outside the workspace)."""
    px, py = pts[:, 0], pts[:, 1]
    wx = px[:, None] - fld.ax[None, :]
    wy = py[:, None] - fld.ay[None, :]
    t = (wx * fld.ux[None, :] + wy * fld.uy[None, :]) / fld.uu[None, :]
    t = np.clip(t, 0.0, 1.0)
    dx = wx - t * fld.ux[None, :]
    dy = wy - t * fld.uy[None, :]
    d = np.sqrt(dx * dx + dy * dy)
    out = d.min(axis=1)
    if len(fld.dr):
        dd = np.sqrt(
            (px[:, None] - fld.dcx[None, :]) ** 2
            + (py[:, None] - fld.dcy[None, :]) ** 2
        ) - fld.dr[None, :]
        out = np.minimum(out, np.maximum(dd, 0.0).min(axis=1))
        inside_disk = (dd < -EPS).any(axis=1)
        out[inside_disk] = 0.0
    inside = _in_polygon_many(px, py, fld.outer_x, fld.outer_y)
    for hx, hy in fld.holes_xy:
        inside &= ~_in_polygon_many(px, py, hx, hy)
    near_boundary = out <= EPS
    out[~(inside | near_boundary)] = 0.0
    return out


# ---------------------------------------------------------------------------
# ray casting against the unit-inflated obstacles


def ray_to_free_boundary(w: Workspace, origin: Point, direction: Point) -> float:
    """Smallest t >= 0 at which origin + t*direction leaves {clearance >= 1}.

    The origin must have clearance >= 1. Returns the hit parameter; raises if
    the ray never exits (cannot happen in a bounded workspace).
    """
    d = direction.unit()
    best = math.inf

    def circle_entry(center: Point, radius: float):
        nonlocal best
        f = origin - center
        b = 2.0 * f.dot(d)
        c = f.dot(f) - radius * radius
        disc = b * b - 4.0 * c
        if disc < 0.0:
            return
        sq = math.sqrt(disc)
        for t in ((-b - sq) / 2.0, (-b + sq) / 2.0):
            if t >= -EPS:
                best = min(best, max(0.0, t))
                return  # first root along the ray is the entry

    for seg in w.boundary_segments():
        sd = seg.direction
        n = sd.perp()
        # offset lines at distance 1 on both sides of the wall
        for side in (1.0, -1.0):
            p0 = seg.a + n.scaled(side)
            denom = d.cross(sd)
            if abs(denom) < EPS:
                continue
            diff = p0 - origin
            t = diff.cross(sd) / denom
            u = diff.cross(d) / denom
            if t >= -EPS and -EPS <= u <= seg.length + EPS:
                best = min(best, max(0.0, t))
        circle_entry(seg.a, 1.0)
        circle_entry(seg.b, 1.0)
    for disk in w.carved_disks:
        circle_entry(disk.center, disk.radius + 1.0)
    if not math.isfinite(best):
        raise InvalidWorkspace("ray escaped the workspace without hitting obstacles")
    return best
