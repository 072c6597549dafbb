"""Planar primitives: points, segments, circular arcs, circles.

All coordinates are in workspace units where the robot radius is 1.
Computations use double precision with a single coincidence tolerance EPS;
every operation here is pure and every value immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

EPS = 1e-9
TWO_PI = 2.0 * math.pi

CCW = "ccw"
CW = "cw"


class Point(NamedTuple):
    x: float
    y: float

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point(self.x - other[0], self.y - other[1])

    def scaled(self, k: float) -> "Point":
        return Point(self.x * k, self.y * k)

    def dot(self, other) -> float:
        return self.x * other[0] + self.y * other[1]

    def cross(self, other) -> float:
        return self.x * other[1] - self.y * other[0]

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def dist(self, other) -> float:
        return math.hypot(self.x - other[0], self.y - other[1])

    def unit(self) -> "Point":
        n = self.norm()
        if n < EPS:
            raise ValueError("cannot normalize a near-zero vector")
        return Point(self.x / n, self.y / n)

    def perp(self) -> "Point":
        """Rotate by +90 degrees."""
        return Point(-self.y, self.x)

    def angle(self) -> float:
        return math.atan2(self.y, self.x)


def lerp(a: Point, b: Point, t: float) -> Point:
    """Affine interpolation that is exact at t=0 and t=1."""
    return Point((1.0 - t) * a.x + t * b.x, (1.0 - t) * a.y + t * b.y)


def normalize_angle(theta: float) -> float:
    """Map an angle into [0, 2*pi)."""
    theta = math.fmod(theta, TWO_PI)
    if theta < 0.0:
        theta += TWO_PI
    if theta >= TWO_PI:
        theta = 0.0
    return theta


def overlap(p: Point, q: Point) -> float:
    """Intersection depth of the unit disks at p and q: max{0, 2 - |p-q|}."""
    return max(0.0, 2.0 - p.dist(q))


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    @property
    def length(self) -> float:
        return self.a.dist(self.b)

    @property
    def direction(self) -> Point:
        return (self.b - self.a).unit()

    def point_at(self, t: float) -> Point:
        return lerp(self.a, self.b, t)

    def reversed(self) -> "Segment":
        return Segment(self.b, self.a)


@dataclass(frozen=True)
class Arc:
    """Circular arc from start_angle to end_angle in the given orientation.

    Angles are stored normalized to [0, 2*pi); the swept extent is in
    (0, 2*pi], so a full circle is representable (start == end).
    """

    center: Point
    radius: float
    start_angle: float
    end_angle: float
    orientation: str  # CCW or CW

    def __post_init__(self):
        object.__setattr__(self, "start_angle", normalize_angle(self.start_angle))
        object.__setattr__(self, "end_angle", normalize_angle(self.end_angle))

    @property
    def sweep(self) -> float:
        """Signed angular extent: positive for CCW, negative for CW."""
        if self.orientation == CCW:
            d = normalize_angle(self.end_angle - self.start_angle)
            return d if d > EPS else TWO_PI
        d = normalize_angle(self.start_angle - self.end_angle)
        return -(d if d > EPS else TWO_PI)

    @property
    def length(self) -> float:
        return self.radius * abs(self.sweep)

    def angle_at(self, t: float) -> float:
        return normalize_angle(self.start_angle + t * self.sweep)

    def point_at_angle(self, theta: float) -> Point:
        return Point(
            self.center.x + self.radius * math.cos(theta),
            self.center.y + self.radius * math.sin(theta),
        )

    def point_at(self, t: float) -> Point:
        return self.point_at_angle(self.start_angle + t * self.sweep)

    @property
    def a(self) -> Point:
        return self.point_at_angle(self.start_angle)

    @property
    def b(self) -> Point:
        return self.point_at_angle(self.end_angle)

    def param_of_angle(self, theta: float) -> float:
        """Fraction along the arc at which the given angle sits (no clamping)."""
        if self.orientation == CCW:
            off = normalize_angle(theta - self.start_angle)
        else:
            off = normalize_angle(self.start_angle - theta)
        return off / abs(self.sweep)

    def contains_angle(self, theta: float, slack: float = 1e-9) -> bool:
        if self.orientation == CCW:
            off = normalize_angle(theta - self.start_angle)
        else:
            off = normalize_angle(self.start_angle - theta)
        return off <= abs(self.sweep) + slack or off >= TWO_PI - slack

    def tangent_at(self, t: float) -> Point:
        theta = self.start_angle + t * self.sweep
        radial = Point(math.cos(theta), math.sin(theta))
        return radial.perp() if self.orientation == CCW else radial.perp().scaled(-1.0)

    def reversed(self) -> "Arc":
        return Arc(
            self.center,
            self.radius,
            self.end_angle,
            self.start_angle,
            CW if self.orientation == CCW else CCW,
        )


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float


Edge = Union[Segment, Arc]


# ---------------------------------------------------------------------------
# point / edge distances


def project_param_on_segment(p: Point, seg: Segment) -> float:
    d = seg.b - seg.a
    denom = d.dot(d)
    if denom <= EPS * EPS:
        return 0.0
    return (p - seg.a).dot(d) / denom


def dist_point_segment(p: Point, seg: Segment) -> float:
    t = min(1.0, max(0.0, project_param_on_segment(p, seg)))
    return p.dist(seg.point_at(t))


class EdgeClosest(NamedTuple):
    distance: float
    closest: Point
    at_endpoint: bool
    param: float  # parameter along the edge in [0, 1]


def dist_point_edge(p: Point, e: Edge) -> EdgeClosest:
    """Global nearest point of a segment or arc; ties break toward the start."""
    if isinstance(e, Segment):
        t = project_param_on_segment(p, e)
        t = min(1.0, max(0.0, t))
        c = e.point_at(t)
        return EdgeClosest(p.dist(c), c, t <= EPS or t >= 1.0 - EPS, t)

    r = (p - e.center).norm()
    if r > EPS:
        theta = (p - e.center).angle()
        if e.contains_angle(theta):
            t = min(1.0, max(0.0, e.param_of_angle(theta)))
            c = e.point_at(t)
            return EdgeClosest(abs(r - e.radius), c, t <= EPS or t >= 1.0 - EPS, t)
    # nearest full-circle point is off-arc (or p at center): clamp to endpoints
    da, db = p.dist(e.a), p.dist(e.b)
    if da <= db + EPS:  # tie prefers the start
        return EdgeClosest(da, e.a, True, 0.0)
    return EdgeClosest(db, e.b, True, 1.0)


# ---------------------------------------------------------------------------
# segment / segment


def segments_properly_intersect(s1: Segment, s2: Segment) -> bool:
    d1 = s1.b - s1.a
    d2 = s2.b - s2.a
    denom = d1.cross(d2)
    if abs(denom) < EPS:
        return False
    w = s2.a - s1.a
    t = w.cross(d2) / denom
    u = w.cross(d1) / denom
    return -EPS < t < 1.0 + EPS and -EPS < u < 1.0 + EPS


def segment_segment_intersection(s1: Segment, s2: Segment):
    """Intersection point of two non-parallel segments, or None."""
    d1 = s1.b - s1.a
    d2 = s2.b - s2.a
    denom = d1.cross(d2)
    if abs(denom) < EPS:
        return None
    w = s2.a - s1.a
    t = w.cross(d2) / denom
    u = w.cross(d1) / denom
    if -EPS <= t <= 1.0 + EPS and -EPS <= u <= 1.0 + EPS:
        return s1.point_at(min(1.0, max(0.0, t)))
    return None


def dist_segment_segment(s1: Segment, s2: Segment) -> float:
    if segments_properly_intersect(s1, s2):
        return 0.0
    return min(
        dist_point_segment(s1.a, s2),
        dist_point_segment(s1.b, s2),
        dist_point_segment(s2.a, s1),
        dist_point_segment(s2.b, s1),
    )


def line_line_intersection(p1: Point, d1: Point, p2: Point, d2: Point):
    denom = d1.cross(d2)
    if abs(denom) < EPS:
        return None
    t = (p2 - p1).cross(d2) / denom
    return p1 + d1.scaled(t)


# ---------------------------------------------------------------------------
# circles: intersections and tangents


def circle_circle_intersections(c1: Circle, c2: Circle) -> list[Point]:
    d = c1.center.dist(c2.center)
    if d < EPS:
        return []
    r1, r2 = c1.radius, c2.radius
    if d > r1 + r2 + EPS or d < abs(r1 - r2) - EPS:
        return []
    a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d)
    h2 = r1 * r1 - a * a
    u = (c2.center - c1.center).unit()
    mid = c1.center + u.scaled(a)
    if h2 <= EPS * EPS:
        return [mid]
    h = math.sqrt(max(0.0, h2))
    n = u.perp()
    return [mid + n.scaled(h), mid - n.scaled(h)]


def segment_circle_intersections(seg: Segment, circle: Circle) -> list[Point]:
    d = seg.b - seg.a
    f = seg.a - circle.center
    a = d.dot(d)
    if a < EPS * EPS:
        return []
    b = 2.0 * f.dot(d)
    c = f.dot(f) - circle.radius * circle.radius
    disc = b * b - 4.0 * a * c
    if disc < -EPS:
        return []
    disc = max(0.0, disc)
    sq = math.sqrt(disc)
    out = []
    for t in ((-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)):
        if -EPS <= t <= 1.0 + EPS:
            out.append(seg.point_at(min(1.0, max(0.0, t))))
    if len(out) == 2 and out[0].dist(out[1]) < EPS:
        out.pop()
    return out


class TangentLine(NamedTuple):
    p1: Point  # touch point on the first circle
    p2: Point  # touch point on the second circle
    inner: bool


def tangent_lines(c1: Circle, c2: Circle) -> list[TangentLine]:
    """Common tangents between two circles, as touch-point pairs.

    Covers the classical cases (4 for disjoint, 3 externally tangent, 2
    overlapping, 1 internally tangent, 0 nested). A circle may have radius 0,
    which yields point-to-circle tangents; coincident duplicates are removed.
    """
    dvec = c2.center - c1.center
    d2 = dvec.dot(dvec)
    if d2 < EPS * EPS:
        return []
    out: list[TangentLine] = []
    for sigma2 in (1.0, -1.0):  # outer / inner family
        rho = sigma2 * c2.radius - c1.radius
        h2 = d2 - rho * rho
        if h2 < -EPS:
            continue
        h = math.sqrt(max(0.0, h2))
        for sign in (1.0, -1.0):
            # unit normal n with n . dvec = rho  (line: n.x + c = 0, signed
            # distance of center i equals sigma_i * r_i with sigma1 = +1)
            nx = (rho * dvec.x - sign * h * dvec.y) / d2
            ny = (rho * dvec.y + sign * h * dvec.x) / d2
            n = Point(nx, ny)
            p1 = c1.center - n.scaled(c1.radius)
            p2 = c2.center - n.scaled(sigma2 * c2.radius)
            cand = TangentLine(p1, p2, sigma2 < 0)
            if not any(
                cand.p1.dist(t.p1) < 1e-7 and cand.p2.dist(t.p2) < 1e-7 for t in out
            ):
                out.append(cand)
            if h <= EPS:
                break  # tangent circles: the two signs coincide
    return out


def tangent_segments(c1: Circle, c2: Circle) -> list[Segment]:
    """Common tangent segments, touch point to touch point.

    Tangent-circle contacts yield a degenerate (zero-length) segment at the
    shared touch point; callers that route through pinches rely on it.
    """
    return [Segment(t.p1, t.p2) for t in tangent_lines(c1, c2)]


def point_circle_tangent_points(p: Point, c: Circle) -> list[Point]:
    """Touch points of the tangents from p to the circle (possibly one if p on it)."""
    d = p.dist(c.center)
    if d < c.radius - EPS:
        return []
    if d <= c.radius + EPS:
        return [c.center + (p - c.center).unit().scaled(c.radius)]
    base = (p - c.center).angle()
    phi = math.acos(c.radius / d)
    return [
        c.center + Point(math.cos(base + phi), math.sin(base + phi)).scaled(c.radius),
        c.center + Point(math.cos(base - phi), math.sin(base - phi)).scaled(c.radius),
    ]


# ---------------------------------------------------------------------------
# moving points


class LinearMotionMin(NamedTuple):
    dmin: float
    t: float


def min_dist_linear_motions(a0: Point, a1: Point, b0: Point, b1: Point) -> LinearMotionMin:
    """Minimum distance between two points moving linearly over t in [0, 1]."""
    u = a0 - b0
    v = (a1 - a0) - (b1 - b0)
    vv = v.dot(v)
    if vv < EPS * EPS:
        return LinearMotionMin(u.norm(), 0.0)
    t = -u.dot(v) / vv
    t = min(1.0, max(0.0, t))
    p = u + v.scaled(t)
    return LinearMotionMin(p.norm(), t)


# ---------------------------------------------------------------------------
# edge / edge distances (exact, used by the validator)


def dist_point_arc(p: Point, arc: Arc) -> float:
    return dist_point_edge(p, arc).distance


def dist_arc_segment(arc: Arc, seg: Segment) -> float:
    # crossing: segment intersects the supporting circle within the arc span
    for q in segment_circle_intersections(seg, Circle(arc.center, arc.radius)):
        if arc.contains_angle((q - arc.center).angle()):
            return 0.0
    cands = [
        dist_point_edge(seg.a, arc).distance,
        dist_point_edge(seg.b, arc).distance,
        dist_point_segment(arc.a, seg),
        dist_point_segment(arc.b, seg),
    ]
    # interior-interior critical pair: radial through the foot of the center
    t = project_param_on_segment(arc.center, seg)
    if EPS < t < 1.0 - EPS:
        foot = seg.point_at(t)
        r = (foot - arc.center).norm()
        if r > EPS and arc.contains_angle((foot - arc.center).angle()):
            cands.append(abs(r - arc.radius))
    return min(cands)


def dist_edge_segment(e: Edge, seg: Segment) -> float:
    if isinstance(e, Segment):
        return dist_segment_segment(e, seg)
    return dist_arc_segment(e, seg)


def dist_edge_point(e: Edge, p: Point) -> float:
    return dist_point_edge(p, e).distance
