"""Geodesic shortest paths in the free space, and path/position queries.

Shortest paths in a disk-eroded polygonal domain consist of straight
segments tangent to boundary arcs plus arcs of those circles (radius 1
around reflex vertices, radius r+1 around carved disks). We search a tangent
graph: nodes are query points and tangent touch points, edges are validated
tangent segments and circle arcs between consecutive touch points.

Validity is exact where it matters: candidate segments are tested against
every obstacle edge and disk with closed-form distances, and each feature
circle carries an exact list of forbidden angular intervals (computed from
circle/capsule intersections) against which candidate arcs are screened.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import InvalidSwitch, PositionOutsideFreeSpace
from .freespace import FreeSpace, contains_free, extend_ray
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
    dist_point_edge,
    dist_segment_segment,
    normalize_angle,
    overlap,
    point_circle_tangent_points,
    segment_circle_intersections,
    tangent_lines,
)
from .paths import ExtendedPath, Path
from .workspace import contains_point

_FREE_SLACK = 1e-7
_ANG_SLACK = 1e-9


# ---------------------------------------------------------------------------
# static per-free-space structure


@dataclass
class _StaticGraph:
    circles: list[Circle]
    forbidden: list[list[tuple[float, float]]]  # per circle, merged intervals
    bitangents: list[tuple[int, float, int, float, Segment]]


def _segment_free(f: FreeSpace, a: Point, b: Point) -> bool:
    """Exact containment of the segment ab in the free space.

    Requires at least one endpoint to be a free position; a connected segment
    at unit distance from every wall and carved disk cannot leave the
    workspace.
    """
    if a.dist(b) <= EPS:
        return f.clearance(a) >= 1.0 - _FREE_SLACK
    seg = Segment(a, b)
    w = f.source
    for wall in w.boundary_segments():
        if dist_segment_segment(seg, wall) < 1.0 - _FREE_SLACK:
            return False
    for d in w.carved_disks:
        if dist_point_edge(d.center, seg).distance < d.radius + 1.0 - _FREE_SLACK:
            return False
    return contains_point(w, seg.point_at(0.5))


def _circle_forbidden_intervals(f: FreeSpace, circle: Circle):
    """Angular intervals of the circle whose points lack unit clearance."""
    w = f.source
    cands: set[float] = set()

    def add_point(p: Point):
        cands.add(normalize_angle((p - circle.center).angle()))

    for wall in w.boundary_segments():
        n = wall.direction.perp()
        for side in (1.0, -1.0):
            off = Segment(wall.a + n.scaled(side), wall.b + n.scaled(side))
            for q in segment_circle_intersections(off, circle):
                add_point(q)
        for endpoint in (wall.a, wall.b):
            for q in _circle_circle_points(circle, Circle(endpoint, 1.0)):
                add_point(q)
    for d in w.carved_disks:
        for q in _circle_circle_points(circle, Circle(d.center, d.radius + 1.0)):
            add_point(q)

    angles = sorted(cands)
    if not angles:
        mid = circle.center + Point(circle.radius, 0.0)
        forbidden = f.clearance(mid) < 1.0 - _FREE_SLACK
        return [(0.0, TWO_PI)] if forbidden else []

    mids = []
    spans = []
    n = len(angles)
    for i in range(n):
        a0 = angles[i]
        a1 = angles[(i + 1) % n] + (TWO_PI if i == n - 1 else 0.0)
        mids.append(normalize_angle(0.5 * (a0 + a1)))
        spans.append((a0, a1))
    pts = np.array(
        [
            [
                circle.center.x + circle.radius * math.cos(t),
                circle.center.y + circle.radius * math.sin(t),
            ]
            for t in mids
        ]
    )
    clear = f.clearance_many(pts)
    out = []
    for (a0, a1), c in zip(spans, clear):
        if c < 1.0 - _FREE_SLACK:
            out.append((a0, a1))
    return _merge_intervals(out)


def _circle_circle_points(c1: Circle, c2: Circle) -> list[Point]:
    from .geometry import circle_circle_intersections

    return circle_circle_intersections(c1, c2)


def _merge_intervals(intervals):
    if not intervals:
        return []
    intervals = sorted(intervals)
    out = [list(intervals[0])]
    for s, e in intervals[1:]:
        if s <= out[-1][1] + _ANG_SLACK:
            out[-1][1] = max(out[-1][1], e)
        else:
            out.append([s, e])
    # merge across the 0/2pi seam
    if len(out) > 1 and out[0][0] <= _ANG_SLACK and out[-1][1] >= TWO_PI - _ANG_SLACK:
        out[0][0] = out[-1][0] - TWO_PI
        out.pop()
    return [tuple(iv) for iv in out]


def _arc_clear(static: _StaticGraph, ci: int, a_from: float, gap: float) -> bool:
    """True when the CCW arc [a_from, a_from+gap] avoids forbidden intervals."""
    if gap <= _ANG_SLACK:
        return True
    a0 = normalize_angle(a_from)
    a1 = a0 + gap
    for s, e in static.forbidden[ci]:
        for shift in (-TWO_PI, 0.0, TWO_PI):
            lo = max(a0, s + shift)
            hi = min(a1, e + shift)
            if hi - lo > 2e-9:
                return False
    return True


def _static_graph(f: FreeSpace) -> _StaticGraph:
    if f._static_graph is not None:
        return f._static_graph
    circles = f.feature_circles()
    forbidden = [_circle_forbidden_intervals(f, c) for c in circles]
    bitangents = []
    for i, j in itertools.combinations(range(len(circles)), 2):
        for t in tangent_lines(circles[i], circles[j]):
            if _segment_free(f, t.p1, t.p2):
                ai = normalize_angle((t.p1 - circles[i].center).angle())
                aj = normalize_angle((t.p2 - circles[j].center).angle())
                bitangents.append((i, ai, j, aj, Segment(t.p1, t.p2)))
    g = _StaticGraph(circles, forbidden, bitangents)
    f._static_graph = g
    return g


# ---------------------------------------------------------------------------
# batch graph over a set of query points


class _BatchGraph:
    def __init__(self, f: FreeSpace, points: list[Point]):
        self.f = f
        self.points = points
        self.static = _static_graph(f)
        self.adj: dict = {}
        self._build()

    def _add_edge(self, u, v, w, rec):
        self.adj.setdefault(u, []).append((v, w, rec))
        self.adj.setdefault(v, []).append((u, w, _reverse_rec(rec)))

    def _build(self):
        f = self.f
        st = self.static
        circ_angles: list[list[tuple[float, object]]] = [[] for _ in st.circles]

        for i, ai, j, aj, seg in st.bitangents:
            ui = ("c", i, ai)
            uj = ("c", j, aj)
            circ_angles[i].append((ai, ui))
            circ_angles[j].append((aj, uj))
            self._add_edge(ui, uj, seg.length, ("seg", seg.a, seg.b))

        pts = self.points
        for k, p in enumerate(pts):
            for ci, c in enumerate(st.circles):
                for tp in point_circle_tangent_points(p, c):
                    if _segment_free(f, p, tp):
                        a = normalize_angle((tp - c.center).angle())
                        node = ("c", ci, a)
                        circ_angles[ci].append((a, node))
                        self._add_edge(("p", k), node, p.dist(tp), ("seg", p, tp))
        for k1, k2 in itertools.combinations(range(len(pts)), 2):
            if _segment_free(f, pts[k1], pts[k2]):
                self._add_edge(
                    ("p", k1),
                    ("p", k2),
                    pts[k1].dist(pts[k2]),
                    ("seg", pts[k1], pts[k2]),
                )

        for ci, angs in enumerate(circ_angles):
            if len(angs) < 2:
                continue
            angs = sorted(set(angs), key=lambda t: t[0])
            R = st.circles[ci].radius
            n = len(angs)
            for idx in range(n):
                a0, u = angs[idx]
                a1, v = angs[(idx + 1) % n]
                gap = normalize_angle(a1 - a0)
                if idx == n - 1 and gap <= _ANG_SLACK:
                    gap = TWO_PI if n > 1 else 0.0
                if gap <= _ANG_SLACK:
                    self._add_edge(u, v, 0.0, ("join", a0))
                    continue
                if _arc_clear(self.static, ci, a0, gap):
                    self._add_edge(u, v, R * gap, ("arc", ci, a0, a1))

    def dijkstra(self, source_idx: int):
        src = ("p", source_idx)
        dist = {src: 0.0}
        parent: dict = {src: None}
        counter = itertools.count()
        heap = [(0.0, next(counter), src)]
        while heap:
            d, _, u = heapq.heappop(heap)
            if d > dist.get(u, math.inf) + 1e-15:
                continue
            for v, w, rec in self.adj.get(u, []):
                nd = d + w
                if nd < dist.get(v, math.inf) - 1e-15:
                    dist[v] = nd
                    parent[v] = (u, rec)
                    heapq.heappush(heap, (nd, next(counter), v))
        return dist, parent

    def path_to(self, parent, source_idx: int, target_idx: int) -> Optional[Path]:
        tgt = ("p", target_idx)
        if tgt not in parent:
            return None
        edges: list[Edge] = []
        node = tgt
        while parent[node] is not None:
            prev, rec = parent[node]
            e = _rec_to_edge(self.static, rec)
            if e is not None and e.length > EPS:
                edges.append(e)
            node = prev
        edges.reverse()
        return Path(edges, anchor=self.points[source_idx])


def _reverse_rec(rec):
    kind = rec[0]
    if kind == "seg":
        return ("seg", rec[2], rec[1])
    if kind == "arc":
        return ("arc_rev", rec[1], rec[2], rec[3])
    if kind == "arc_rev":
        return ("arc", rec[1], rec[2], rec[3])
    return rec


def _rec_to_edge(static: _StaticGraph, rec) -> Optional[Edge]:
    kind = rec[0]
    if kind == "seg":
        a, b = rec[1], rec[2]
        if a.dist(b) <= EPS:
            return None
        return Segment(a, b)
    if kind == "join":
        return None
    _, ci, a0, a1 = rec
    c = static.circles[ci]
    if kind == "arc":
        return Arc(c.center, c.radius, a0, a1, CCW)
    return Arc(c.center, c.radius, a1, a0, CW)


# ---------------------------------------------------------------------------
# public queries


def _require_free(f: FreeSpace, *pts: Point):
    for p in pts:
        if not contains_free(f, p):
            raise PositionOutsideFreeSpace(f"position {tuple(p)} lacks unit clearance")


def shortest_path(f: FreeSpace, a: Point, b: Point) -> Optional[Path]:
    """Shortest free-space path from a to b, or None if disconnected."""
    _require_free(f, a, b)
    if a.dist(b) <= EPS:
        return Path.point(a)
    g = _BatchGraph(f, [a, b])
    dist, parent = g.dijkstra(0)
    return g.path_to(parent, 0, 1)


def shortest_path_batch(f: FreeSpace, sources: list[Point], targets: list[Point]):
    """All-pairs geodesic lengths and per-pair paths via one graph.

    Returns (lengths, paths): lengths is an (s, t) nested list with math.inf
    for disconnected pairs, paths a parallel structure of Path or None.
    """
    _require_free(f, *sources, *targets)
    pts = list(sources) + list(targets)
    g = _BatchGraph(f, pts)
    ns = len(sources)
    lengths = [[math.inf] * len(targets) for _ in sources]
    paths: list[list[Optional[Path]]] = [[None] * len(targets) for _ in sources]
    for si in range(ns):
        dist, parent = g.dijkstra(si)
        for ti in range(len(targets)):
            node = ("p", ns + ti)
            if node in dist:
                lengths[si][ti] = dist[node]
                paths[si][ti] = g.path_to(parent, si, ns + ti)
    return lengths, paths


def reachable_sets(f: FreeSpace, pts: list[Point]) -> list[int]:
    """Component id per point, ids in order of first appearance."""
    if not pts:
        return []
    g = _BatchGraph(f, pts)
    comp = [-1] * len(pts)
    cid = 0
    for i in range(len(pts)):
        if comp[i] != -1:
            continue
        seen = {("p", i)}
        stack = [("p", i)]
        while stack:
            u = stack.pop()
            for v, _, _ in g.adj.get(u, []):
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        for j in range(len(pts)):
            if comp[j] == -1 and ("p", j) in seen:
                comp[j] = cid
        cid += 1
    return comp


def extend_to_boundary(f: FreeSpace, path: Path) -> ExtendedPath:
    """Prolong the first edge backwards and the last edge forwards to the boundary."""
    from .errors import ExtensionBlocked

    if path.is_degenerate or not isinstance(path.edges[0], Segment):
        raise ExtensionBlocked("first edge must be a straight segment")
    if not isinstance(path.edges[-1], Segment):
        raise ExtensionBlocked("last edge must be a straight segment")
    first: Segment = path.edges[0]
    last: Segment = path.edges[-1]
    h0 = extend_ray(f, path.start, first.direction.scaled(-1.0))
    h1 = extend_ray(f, path.end, last.direction)
    pre = Segment(h0, path.start) if h0.dist(path.start) > EPS else None
    post = Segment(path.end, h1) if h1.dist(path.end) > EPS else None
    return ExtendedPath(path, pre, post)


# ---------------------------------------------------------------------------
# locally closest points, blocking classification


class LocalMin(NamedTuple):
    w: float
    point: Point
    distance: float
    is_endpoint: bool


def locally_closest_points(path: Path, p: Point) -> list[LocalMin]:
    """All local minima of w -> |path(w) - p|, sorted by w.

    Minima within 1e-9 of each other in w are coalesced keeping the largest
    w; a plateau (e.g. an arc centered at p) reports its largest w.
    """
    if path.is_degenerate:
        return [LocalMin(0.0, path.anchor, path.anchor.dist(p), True)]
    cands: list[tuple[float, Point, float]] = []

    for i, e in enumerate(path.edges):
        if isinstance(e, Segment):
            from .geometry import project_param_on_segment

            t = project_param_on_segment(p, e)
            if EPS < t < 1.0 - EPS:
                q = e.point_at(t)
                cands.append((path.param_of(i, t), q, q.dist(p)))
        else:
            r = (p - e.center).norm()
            if r <= EPS:
                # equidistant plateau: report the end of the arc
                cands.append((path.param_of(i, 1.0), e.b, e.radius))
                continue
            theta = (p - e.center).angle()
            if e.contains_angle(theta):
                t = e.param_of_angle(theta)
                if EPS < t < 1.0 - EPS:
                    q = e.point_at(t)
                    cands.append((path.param_of(i, t), q, q.dist(p)))

    # junctions and endpoints: one-sided slope test
    n = len(path.edges)
    for j in range(n + 1):
        if j == 0:
            x = path.start
            s_out = _edge_tangent(path.edges[0], 0.0).dot(x - p)
            is_min = s_out >= -EPS
        elif j == n:
            x = path.end
            s_in = _edge_tangent(path.edges[-1], 1.0).dot(x - p)
            is_min = s_in <= EPS
        else:
            x = path.edges[j].a
            s_in = _edge_tangent(path.edges[j - 1], 1.0).dot(x - p)
            s_out = _edge_tangent(path.edges[j], 0.0).dot(x - p)
            is_min = s_in <= EPS and s_out >= -EPS
        if is_min:
            w = path.param_of(j, 0.0) if j < n else 1.0
            cands.append((w, x, x.dist(p)))

    cands.sort(key=lambda c: c[0])
    merged: list[tuple[float, Point, float]] = []
    for c in cands:
        if merged and c[0] - merged[-1][0] <= 1e-9:
            merged[-1] = c  # keep the largest w of the cluster
        else:
            merged.append(c)
    return [
        LocalMin(w, q, d, w <= 1e-9 or w >= 1.0 - 1e-9) for (w, q, d) in merged
    ]


def _edge_tangent(e: Edge, t: float) -> Point:
    if isinstance(e, Segment):
        return e.direction
    return e.tangent_at(t)


def min_distance_to_path(path: Path, p: Point) -> float:
    if path.is_degenerate:
        return path.anchor.dist(p)
    return min(dist_point_edge(p, e).distance for e in path.edges)


BLOCKING = "blocking"
INTERRUPTING = "interrupting"


class BlockClassification(NamedTuple):
    kind: str
    max_overlap: float
    witnesses: list[tuple[float, float]]  # (w, distance) at local minima within reach


def classify_position(path: Path, p: Point, eps: float) -> BlockClassification:
    """Blocking iff the unit disk at p overlaps the swept disk by more than eps.

    Tolerance leans toward interrupting: a measured overlap within 1e-9 above
    eps still counts as interrupting, so boundary instances stay feasible.
    """
    dmin = min_distance_to_path(path, p)
    max_ov = max(0.0, 2.0 - dmin)
    witnesses = [
        (m.w, m.distance) for m in locally_closest_points(path, p) if m.distance < 2.0
    ]
    kind = BLOCKING if max_ov > eps + 1e-9 else INTERRUPTING
    return BlockClassification(kind, max_ov, witnesses)


def last_blocker(path: Path, starts: list[Point], eps: float):
    """Index and path parameter of the start that is last to block the path.

    Returns (index, w) for the blocker whose final qualifying locally-closest
    parameter is largest, or None when nothing blocks. A qualifying approach
    at the very ends of the path is rejected as a constraint violation.
    """
    best: Optional[tuple[int, float]] = None
    for k, s in enumerate(starts):
        if classify_position(path, s, eps).kind != BLOCKING:
            continue
        ws = [
            m.w
            for m in locally_closest_points(path, s)
            if m.distance < 2.0 - eps - 1e-9
        ]
        if not ws:
            continue
        w = max(ws)
        if best is None or w > best[1]:
            best = (k, w)
    if best is None:
        return None
    if best[1] <= 1e-9 or best[1] >= 1.0 - 1e-9:
        raise InvalidSwitch(
            "blocker attains its last closest approach at a path endpoint"
        )
    return best


# ---------------------------------------------------------------------------
# distance-threshold windows along a path (used by clearance motions)


def threshold_crossings(path: Path, p: Point, radius: float) -> list[float]:
    """Sorted parameters w where |path(w) - p| crosses the given radius."""
    if path.is_degenerate:
        return []
    out: list[float] = []
    for i, e in enumerate(path.edges):
        if isinstance(e, Segment):
            d = e.b - e.a
            fvec = e.a - p
            a = d.dot(d)
            b = 2.0 * fvec.dot(d)
            c = fvec.dot(fvec) - radius * radius
            disc = b * b - 4.0 * a * c
            if disc <= 0 or a <= EPS * EPS:
                continue
            sq = math.sqrt(disc)
            for t in ((-b - sq) / (2 * a), (-b + sq) / (2 * a)):
                if -EPS <= t <= 1.0 + EPS:
                    out.append(path.param_of(i, min(1.0, max(0.0, t))))
        else:
            rp = (p - e.center).norm()
            if rp <= EPS:
                continue
            cosv = (rp * rp + e.radius * e.radius - radius * radius) / (
                2.0 * rp * e.radius
            )
            if not -1.0 <= cosv <= 1.0:
                continue
            dtheta = math.acos(cosv)
            base = (p - e.center).angle()
            for theta in (base + dtheta, base - dtheta):
                if e.contains_angle(theta):
                    t = e.param_of_angle(theta)
                    if -_ANG_SLACK <= t <= 1.0 + _ANG_SLACK:
                        out.append(path.param_of(i, min(1.0, max(0.0, t))))
    out = sorted(set(out))
    merged = []
    for w in out:
        if merged and w - merged[-1] <= 1e-12:
            continue
        merged.append(w)
    return merged


def windows_within(path: Path, p: Point, radius: float = 2.0):
    """Maximal parameter windows where |path(w) - p| <= radius."""
    if path.is_degenerate:
        return [(0.0, 1.0)] if path.anchor.dist(p) <= radius else []
    cuts = [0.0] + threshold_crossings(path, p, radius) + [1.0]
    windows = []
    for w0, w1 in zip(cuts, cuts[1:]):
        if w1 - w0 <= 1e-12:
            continue
        mid = 0.5 * (w0 + w1)
        if path.point_at(mid).dist(p) <= radius:
            windows.append((w0, w1))
    # merge adjacent windows sharing an endpoint
    merged: list[list[float]] = []
    for w0, w1 in windows:
        if merged and w0 - merged[-1][1] <= 1e-12:
            merged[-1][1] = w1
        else:
            merged.append([w0, w1])
    return [tuple(w) for w in merged]
