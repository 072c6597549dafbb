"""Piecewise segment/arc paths with arc-length parameterization over [0, 1]."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Optional

from .geometry import (
    EPS,
    Arc,
    Edge,
    Point,
    Segment,
    normalize_angle,
)


class Path:
    """Chain of segments and arcs, parameterized by normalized arc length.

    Consecutive edges share endpoints (within tolerance). A path may be
    degenerate (a single point); its parameterization is then constant.
    """

    __slots__ = ("edges", "anchor", "_cum", "total_length")

    def __init__(self, edges: list[Edge], anchor: Optional[Point] = None):
        self.edges: list[Edge] = [e for e in edges if e.length > EPS]
        if not self.edges:
            if anchor is None and edges:
                anchor = edges[0].a
            if anchor is None:
                raise ValueError("empty path needs an anchor point")
            self.anchor: Optional[Point] = anchor
            self._cum = [0.0]
            self.total_length = 0.0
            return
        self.anchor = None
        for e1, e2 in zip(self.edges, self.edges[1:]):
            if e1.b.dist(e2.a) > 1e-6:
                raise ValueError("path edges are not continuous")
        cum = [0.0]
        for e in self.edges:
            cum.append(cum[-1] + e.length)
        self._cum = cum
        self.total_length = cum[-1]

    @staticmethod
    def point(p: Point) -> "Path":
        return Path([], anchor=p)

    @staticmethod
    def line(a: Point, b: Point) -> "Path":
        return Path([Segment(a, b)], anchor=a)

    @property
    def start(self) -> Point:
        return self.anchor if self.anchor is not None else self.edges[0].a

    @property
    def end(self) -> Point:
        return self.anchor if self.anchor is not None else self.edges[-1].b

    @property
    def is_degenerate(self) -> bool:
        return self.anchor is not None

    def locate(self, w: float) -> tuple[int, float]:
        """Edge index and local fraction for a global parameter in [0, 1]."""
        if self.is_degenerate:
            return 0, 0.0
        s = min(max(w, 0.0), 1.0) * self.total_length
        i = bisect.bisect_right(self._cum, s) - 1
        i = min(i, len(self.edges) - 1)
        span = self._cum[i + 1] - self._cum[i]
        t = (s - self._cum[i]) / span if span > 0 else 0.0
        return i, min(1.0, max(0.0, t))

    def point_at(self, w: float) -> Point:
        if self.is_degenerate:
            return self.anchor
        if w <= 0.0:
            return self.start
        if w >= 1.0:
            return self.end
        i, t = self.locate(w)
        return self.edges[i].point_at(t)

    def param_of(self, edge_index: int, t: float) -> float:
        if self.is_degenerate or self.total_length <= 0:
            return 0.0
        s = self._cum[edge_index] + t * (
            self._cum[edge_index + 1] - self._cum[edge_index]
        )
        return s / self.total_length

    def tangent_at(self, w: float, side: int = 1) -> Point:
        """Unit tangent; ``side=-1`` gives the incoming tangent at junctions."""
        if self.is_degenerate:
            raise ValueError("degenerate path has no tangent")
        i, t = self.locate(w)
        if side < 0 and t <= EPS and i > 0:
            i, t = i - 1, 1.0
        e = self.edges[i]
        if isinstance(e, Segment):
            return e.direction
        return e.tangent_at(t)

    def length(self, w1: float = 0.0, w2: float = 1.0) -> float:
        if not 0.0 - EPS <= w1 <= w2 <= 1.0 + EPS:
            raise ValueError("invalid parameter range")
        return (min(w2, 1.0) - max(w1, 0.0)) * self.total_length

    def subpath(self, w1: float, w2: float) -> "Path":
        if self.is_degenerate or w2 - w1 <= EPS / max(1.0, self.total_length):
            return Path.point(self.point_at(w1))
        i1, t1 = self.locate(w1)
        i2, t2 = self.locate(w2)
        out: list[Edge] = []
        if i1 == i2:
            out.append(_edge_slice(self.edges[i1], t1, t2))
        else:
            out.append(_edge_slice(self.edges[i1], t1, 1.0))
            out.extend(self.edges[i1 + 1 : i2])
            out.append(_edge_slice(self.edges[i2], 0.0, t2))
        return Path([e for e in out if e.length > EPS], anchor=self.point_at(w1))

    def reversed(self) -> "Path":
        if self.is_degenerate:
            return self
        return Path([e.reversed() for e in reversed(self.edges)])

    def concat(self, other: "Path") -> "Path":
        if self.is_degenerate:
            return other if not other.is_degenerate else self
        if other.is_degenerate:
            return self
        if self.end.dist(other.start) > 1e-6:
            raise ValueError("paths do not join")
        return Path(self.edges + other.edges)

    def sample(self, n: int) -> list[Point]:
        if n < 2:
            return [self.start]
        return [self.point_at(k / (n - 1)) for k in range(n)]

    def __repr__(self):
        if self.is_degenerate:
            return f"Path(point {self.anchor})"
        return f"Path({len(self.edges)} edges, length {self.total_length:.4f})"


def _edge_slice(e: Edge, t1: float, t2: float) -> Edge:
    if isinstance(e, Segment):
        return Segment(e.point_at(t1), e.point_at(t2))
    sweep = e.sweep
    return Arc(
        e.center,
        e.radius,
        normalize_angle(e.start_angle + t1 * sweep),
        normalize_angle(e.start_angle + t2 * sweep),
        e.orientation,
    )


def concat_paths(*parts: Path) -> Path:
    out = None
    for p in parts:
        out = p if out is None else out.concat(p)
    return out


@dataclass(frozen=True)
class ExtendedPath:
    """A geodesic prolonged along its first and last segments to the boundary."""

    base: Path
    pre_extension: Optional[Segment]   # boundary point -> base start (None if zero)
    post_extension: Optional[Segment]  # base end -> boundary point

    @property
    def full(self) -> Path:
        edges: list[Edge] = []
        if self.pre_extension is not None:
            edges.append(self.pre_extension)
        edges.extend(self.base.edges)
        if self.post_extension is not None:
            edges.append(self.post_extension)
        return Path(edges, anchor=self.base.start)

    def chain_edges(self) -> list[Edge]:
        """Edges of the extended curve with collinear extensions merged in."""
        edges = [e for e in self.base.edges]
        if self.pre_extension is not None:
            first = edges[0]
            assert isinstance(first, Segment)
            edges[0] = Segment(self.pre_extension.a, first.b)
        if self.post_extension is not None:
            last = edges[-1]
            assert isinstance(last, Segment)
            edges[-1] = Segment(last.a, self.post_extension.b)
        return edges


def path_length(path: Path, w1: float = 0.0, w2: float = 1.0) -> float:
    """Exact analytic length of a parameter range of a path."""
    return path.length(w1, w2)


def tangency_defect(path: Path) -> float:
    """Largest angular mismatch between consecutive edge tangents (radians).

    Geodesics should be C^1: segments meet arcs tangentially. Concatenated
    switch paths are allowed corners, so this is a diagnostic, not an
    invariant of the class.
    """
    worst = 0.0
    for e1, e2 in zip(path.edges, path.edges[1:]):
        t1 = e1.direction if isinstance(e1, Segment) else e1.tangent_at(1.0)
        t2 = e2.direction if isinstance(e2, Segment) else e2.tangent_at(0.0)
        ang = abs(math.atan2(t1.cross(t2), t1.dot(t2)))
        worst = max(worst, ang)
    return worst
