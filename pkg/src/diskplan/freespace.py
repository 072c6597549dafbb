"""Unit-disk free space of a workspace.

The free space F is the set of centers at which a unit disk avoids the
obstacle space; it is the inward unit offset of the workspace. Its boundary
consists of straight segments (offsets of walls), radius-1 arcs around reflex
vertices, and radius r+1 circles around carved disks of radius r.

Construction is the naive quadratic offset-trim-stitch: generate every raw
offset primitive, split all of them at mutual intersections, keep the pieces
whose midpoints still have unit clearance, and stitch the survivors into
closed loops. That is O(n^2) but exact, which matters because geodesic length
accounting leans on true arcs rather than polygonal approximations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import PositionOutsideFreeSpace
from .geometry import (
    CCW,
    CW,
    EPS,
    Arc,
    Circle,
    Edge,
    Point,
    Segment,
    TWO_PI,
    circle_circle_intersections,
    normalize_angle,
    project_param_on_segment,
    segment_circle_intersections,
    segment_segment_intersection,
)
from .workspace import (
    Workspace,
    clearance,
    clearance_field,
    clearance_many,
    oriented_chains,
    ray_to_free_boundary,
    reflex_vertices,
    validate_workspace,
)

_BOUNDARY_SLACK = 1e-7


@dataclass
class FreeSpace:
    source: Workspace
    _loops: Optional[list[list[Edge]]] = None
    _field: object = None
    _static_graph: object = None  # cached by the geodesics module
    _circles: Optional[list[Circle]] = None

    @property
    def boundary_loops(self) -> list[list[Edge]]:
        if self._loops is None:
            self._loops = _build_boundary_loops(self.source)
        return self._loops

    @property
    def is_empty(self) -> bool:
        return len(self.boundary_loops) == 0

    def clearance(self, p: Point) -> float:
        return clearance(self.source, p)

    def clearance_many(self, pts: np.ndarray) -> np.ndarray:
        if self._field is None:
            self._field = clearance_field(self.source)
        return clearance_many(self._field, pts)

    def feature_circles(self) -> list[Circle]:
        """Circles around which geodesics may bend."""
        if self._circles is None:
            circles = [Circle(v, 1.0) for v in reflex_vertices(self.source)]
            circles += [
                Circle(d.center, d.radius + 1.0) for d in self.source.carved_disks
            ]
            self._circles = circles
        return self._circles


def build_free_space(w: Workspace) -> FreeSpace:
    validate_workspace(w)
    return FreeSpace(w)


def contains_free(f: FreeSpace, p: Point) -> bool:
    return f.clearance(p) >= 1.0 - EPS


def components_with_counts(f: FreeSpace, starts, targets):
    """Partition starts and targets by connected component of the free space.

    Returns a list of (component_id, n_starts, n_targets), component ids in
    order of first appearance. Connectivity is decided by geodesic
    reachability so there is a single source of truth.
    """
    from .geodesics import reachable_sets

    pts = list(starts) + list(targets)
    for p in pts:
        if not contains_free(f, p):
            raise PositionOutsideFreeSpace(f"position {p} lacks unit clearance")
    comp = reachable_sets(f, pts)
    n_components = max(comp) + 1 if comp else 0
    out = []
    for cid in range(n_components):
        ns = sum(1 for i, c in enumerate(comp) if c == cid and i < len(starts))
        nt = sum(1 for i, c in enumerate(comp) if c == cid and i >= len(starts))
        out.append((cid, ns, nt))
    return out


def extend_ray(f: FreeSpace, origin: Point, direction: Point) -> Point:
    t = ray_to_free_boundary(f.source, origin, direction)
    return origin + direction.unit().scaled(t)


# ---------------------------------------------------------------------------
# boundary loop construction


@dataclass
class _Piece:
    edge: Edge
    cuts: list[float] = field(default_factory=list)  # parameters in (0, 1)


def _raw_primitives(w: Workspace) -> list[Edge]:
    prims: list[Edge] = []
    for chain in oriented_chains(w):
        n = len(chain)
        for i in range(n):
            prev, cur, nxt = chain[i - 1], chain[i], chain[(i + 1) % n]
            d1 = (cur - prev).unit()
            d2 = (nxt - cur).unit()
            # inward offset segment of edge cur->nxt (interior on the left)
            off = d2.perp()
            prims.append(Segment(cur + off, nxt + off))
            if d1.cross(d2) < -EPS:  # reflex vertex: bridge with a unit arc
                a1 = d1.perp().angle()
                a2 = d2.perp().angle()
                prims.append(Arc(cur, 1.0, a1, a2, CW))
    for disk in w.carved_disks:
        if disk.radius > EPS:
            prims.append(Arc(disk.center, disk.radius + 1.0, 0.0, TWO_PI, CW))
    return prims


def _edge_param_of_point(e: Edge, p: Point) -> float:
    if isinstance(e, Segment):
        return project_param_on_segment(p, e)
    return e.param_of_angle((p - e.center).angle())


def _cut_params(e1: Edge, e2: Edge):
    """Intersection points of two primitives, as parameters on e1."""
    pts: list[Point] = []
    if isinstance(e1, Segment) and isinstance(e2, Segment):
        q = segment_segment_intersection(e1, e2)
        if q is not None:
            pts.append(q)
    elif isinstance(e1, Segment):
        assert isinstance(e2, Arc)
        for q in segment_circle_intersections(e1, Circle(e2.center, e2.radius)):
            if e2.contains_angle((q - e2.center).angle()):
                pts.append(q)
    elif isinstance(e2, Segment):
        for q in segment_circle_intersections(e2, Circle(e1.center, e1.radius)):
            if e1.contains_angle((q - e1.center).angle()):
                pts.append(q)
    else:
        for q in circle_circle_intersections(
            Circle(e1.center, e1.radius), Circle(e2.center, e2.radius)
        ):
            if e1.contains_angle((q - e1.center).angle()) and e2.contains_angle(
                (q - e2.center).angle()
            ):
                pts.append(q)
    out = []
    for q in pts:
        t = _edge_param_of_point(e1, q)
        if 1e-9 < t < 1.0 - 1e-9:
            out.append(t)
    return out


def _split_edge(e: Edge, params: list[float]) -> list[Edge]:
    ts = sorted({0.0, 1.0, *params})
    out: list[Edge] = []
    for t0, t1 in zip(ts, ts[1:]):
        if t1 - t0 < 1e-9:
            continue
        if isinstance(e, Segment):
            out.append(Segment(e.point_at(t0), e.point_at(t1)))
        else:
            sweep = e.sweep
            out.append(
                Arc(
                    e.center,
                    e.radius,
                    normalize_angle(e.start_angle + t0 * sweep),
                    normalize_angle(e.start_angle + t1 * sweep),
                    e.orientation,
                )
            )
    return out


def _edge_midpoint(e: Edge) -> Point:
    return e.point_at(0.5)


def _edge_start(e: Edge) -> Point:
    return e.a


def _edge_end(e: Edge) -> Point:
    return e.b


def _edge_start_tangent(e: Edge) -> Point:
    if isinstance(e, Segment):
        return e.direction
    return e.tangent_at(0.0)


def _edge_end_tangent(e: Edge) -> Point:
    if isinstance(e, Segment):
        return e.direction
    return e.tangent_at(1.0)


def _build_boundary_loops(w: Workspace) -> list[list[Edge]]:
    validate_workspace(w)
    prims = _raw_primitives(w)
    pieces = [_Piece(e) for e in prims]
    for i in range(len(pieces)):
        for j in range(len(pieces)):
            if i == j:
                continue
            pieces[i].cuts.extend(_cut_params(pieces[i].edge, pieces[j].edge))

    fragments: list[Edge] = []
    for pc in pieces:
        fragments.extend(_split_edge(pc.edge, pc.cuts))

    if not fragments:
        return []
    fld = clearance_field(w)
    mids = np.array([[m.x, m.y] for m in map(_edge_midpoint, fragments)])
    keep = clearance_many(fld, mids) >= 1.0 - _BOUNDARY_SLACK
    fragments = [f for f, k in zip(fragments, keep) if k]

    # drop coincident duplicates (overlapping raw primitives)
    seen = {}
    uniq = []
    for f in fragments:
        m = _edge_midpoint(f)
        key = (round(m.x, 6), round(m.y, 6), round(f.length, 6))
        if key in seen:
            continue
        seen[key] = True
        uniq.append(f)
    fragments = uniq

    # stitch into loops by following endpoints (tolerant endpoint matching)
    cell = 1e-4
    snap = 1e-5

    def cell_of(p: Point):
        return (math.floor(p.x / cell), math.floor(p.y / cell))

    by_start: dict[tuple, list[int]] = {}
    for idx, f in enumerate(fragments):
        by_start.setdefault(cell_of(_edge_start(f)), []).append(idx)

    def starts_near(p: Point):
        cx, cy = cell_of(p)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for k in by_start.get((cx + dx, cy + dy), []):
                    if _edge_start(fragments[k]).dist(p) <= snap:
                        yield k

    used = [False] * len(fragments)
    loops: list[list[Edge]] = []
    for idx in range(len(fragments)):
        if used[idx]:
            continue
        loop = [fragments[idx]]
        used[idx] = True
        guard = 0
        while guard < len(fragments) + 1:
            guard += 1
            cur = loop[-1]
            endp = _edge_end(cur)
            if endp.dist(_edge_start(loop[0])) <= snap and len(loop) > 1:
                break
            cands = [k for k in starts_near(endp) if not used[k]]
            if not cands:
                break
            if len(cands) == 1:
                nxt = cands[0]
            else:
                # junction: continue with the smallest left turn to keep the
                # free region on a consistent side
                tin = _edge_end_tangent(cur)
                nxt = min(
                    cands,
                    key=lambda k: normalize_angle(
                        _edge_start_tangent(fragments[k]).angle() - tin.angle() + math.pi
                    ),
                )
            loop.append(fragments[nxt])
            used[nxt] = True
        if _edge_end(loop[-1]).dist(_edge_start(loop[0])) <= snap:
            loops.append(loop)
    return loops
