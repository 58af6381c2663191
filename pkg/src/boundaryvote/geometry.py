"""Event-region geometry: containment, signed boundary distance, offset bands.

The region of interest Y is always the unit square [0,1]^2. Event regions are
built from axis-aligned rectangles with circular corner rounding plus a
serpentine "comb" used as a worst-case shape. Boundaries are represented
piecewise-analytically (line segments and circular arcs) with an arc-length
parameterization, so distances and arc queries are exact up to float precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

TWO_PI = 2.0 * math.pi

# Bulb-cap tangency constants for the comb free ends: a bulb of radius r is
# joined to a strip of height r/2 by concave fillets of radius r. The fillet
# center sits at offset (sqrt(39)/4 * r, 1.25 r) from the bulb center, so the
# tangency direction makes angle asin(5/8) with the strip axis.
_CAP_PHI = math.asin(5.0 / 8.0)
_CAP_DX = math.sqrt(39.0) / 4.0  # fillet-center x offset from bulb center, in units of r
_CAP_EDGE_DX = math.sqrt(15.0) / 4.0  # bulb/edge-line crossing offset, in units of r


class ZoneLabel(Enum):
    """Position of a point relative to X and the dubious band around bd(X)."""

    OUTSIDE_ZR_IN_X = "outside_zr_in_x"
    OUTSIDE_ZR_OUT_X = "outside_zr_out_x"
    IN_ZR_IN_X = "in_zr_in_x"
    IN_ZR_OUT_X = "in_zr_out_x"


class SensorClass(Enum):
    GOOD = "good"
    BAD = "bad"
    NOT_IN_ZR = "not_in_zr"


@dataclass(frozen=True)
class Point:
    x: float
    y: float


# ---------------------------------------------------------------------------
# Boundary pieces


@dataclass(frozen=True)
class Segment:
    """Directed line segment from p0 to p1."""

    x0: float
    y0: float
    x1: float
    y1: float

    @property
    def length(self) -> float:
        return math.hypot(self.x1 - self.x0, self.y1 - self.y0)

    def point_at(self, s):
        t = np.asarray(s, dtype=float) / self.length
        return self.x0 + t * (self.x1 - self.x0), self.y0 + t * (self.y1 - self.y0)

    def distance(self, x, y):
        dx, dy = self.x1 - self.x0, self.y1 - self.y0
        px, py = np.asarray(x, dtype=float) - self.x0, np.asarray(y, dtype=float) - self.y0
        t = np.clip((px * dx + py * dy) / (dx * dx + dy * dy), 0.0, 1.0)
        return np.hypot(px - t * dx, py - t * dy)

    def area_term(self) -> float:
        # Green's theorem contribution of integral x dy along the segment.
        return 0.5 * (self.x0 + self.x1) * (self.y1 - self.y0)


@dataclass(frozen=True)
class Arc:
    """Circular arc traversed from angle a0 to a1 (CCW iff a1 > a0)."""

    cx: float
    cy: float
    radius: float
    a0: float
    a1: float

    @property
    def length(self) -> float:
        return self.radius * abs(self.a1 - self.a0)

    def point_at(self, s):
        t = np.asarray(s, dtype=float) / self.length
        a = self.a0 + t * (self.a1 - self.a0)
        return self.cx + self.radius * np.cos(a), self.cy + self.radius * np.sin(a)

    def distance(self, x, y):
        px = np.asarray(x, dtype=float) - self.cx
        py = np.asarray(y, dtype=float) - self.cy
        rho = np.hypot(px, py)
        lo, hi = min(self.a0, self.a1), max(self.a0, self.a1)
        theta = np.arctan2(py, px)
        theta = lo + np.mod(theta - lo, TWO_PI)
        on_arc = theta <= hi
        d_circle = np.abs(rho - self.radius)
        ex0, ey0 = self.point_at(0.0)
        ex1, ey1 = self.point_at(self.length)
        d_ends = np.minimum(
            np.hypot(np.asarray(x) - ex0, np.asarray(y) - ey0),
            np.hypot(np.asarray(x) - ex1, np.asarray(y) - ey1),
        )
        return np.where(on_arc, d_circle, d_ends)

    def area_term(self) -> float:
        # integral x dy with x = cx + R cos t, y = cy + R sin t, t from a0 to a1.
        def anti(t: float) -> float:
            return self.cx * self.radius * math.sin(t) + self.radius**2 * (
                0.5 * t + 0.25 * math.sin(2.0 * t)
            )

        return anti(self.a1) - anti(self.a0)


class BoundaryPath:
    """Closed CCW boundary made of segments and arcs, arc-length parameterized."""

    def __init__(self, pieces):
        self.pieces = [p for p in pieces if p.length > 1e-15]
        lengths = np.array([p.length for p in self.pieces])
        self.cum = np.concatenate(([0.0], np.cumsum(lengths)))
        self.length = float(self.cum[-1])

    def points_at(self, s):
        """Boundary points at arc-length positions s (wrapped mod total length)."""
        s = np.mod(np.asarray(s, dtype=float), self.length)
        idx = np.clip(np.searchsorted(self.cum, s, side="right") - 1, 0, len(self.pieces) - 1)
        x = np.empty_like(s)
        y = np.empty_like(s)
        for k, piece in enumerate(self.pieces):
            m = idx == k
            if np.any(m):
                x[m], y[m] = piece.point_at(s[m] - self.cum[k])
        return x, y

    def distance(self, x, y):
        """Unsigned distance from (x, y) to the path."""
        d = None
        for piece in self.pieces:
            dp = piece.distance(x, y)
            d = dp if d is None else np.minimum(d, dp)
        return d

    def enclosed_area(self) -> float:
        return float(sum(p.area_term() for p in self.pieces))


# ---------------------------------------------------------------------------
# Regions


class RoundedRect:
    """Axis-aligned rectangle with circular corner rounding (radius may be 0).

    `width`/`height` are the full outer dimensions; the straight edge pieces
    have length width - 2*corner_radius and height - 2*corner_radius.
    """

    def __init__(self, cx: float, cy: float, width: float, height: float,
                 corner_radius: float = 0.0, name: str | None = None):
        if width <= 0 or height <= 0:
            raise ValueError("width and height must be positive")
        if corner_radius < 0:
            raise ValueError("corner_radius must be nonnegative")
        if corner_radius > min(width, height) / 2 + 1e-12:
            raise ValueError("corner_radius exceeds min(width, height)/2")
        self.cx, self.cy = float(cx), float(cy)
        self.width, self.height = float(width), float(height)
        self.corner_radius = float(corner_radius)
        self.name = name or (f"rounded_rect_{cx:g}_{cy:g}_{width:g}x{height:g}_rho{corner_radius:g}")
        self.components = 1
        self.convex = True
        self.min_curvature_radius = self.corner_radius
        rho = self.corner_radius
        self.area = width * height - (4.0 - math.pi) * rho * rho
        self.perimeter = 2.0 * (width + height) - 8.0 * rho + TWO_PI * rho
        self._boundary: BoundaryPath | None = None

    def __repr__(self) -> str:
        return (f"RoundedRect(cx={self.cx}, cy={self.cy}, width={self.width}, "
                f"height={self.height}, corner_radius={self.corner_radius})")

    def bbox(self):
        hw, hh = self.width / 2, self.height / 2
        return (self.cx - hw, self.cy - hh, self.cx + hw, self.cy + hh)

    def signed_distance(self, x, y):
        """Exact Euclidean distance to bd(X), positive inside X."""
        rho = self.corner_radius
        dx = np.abs(np.asarray(x, dtype=float) - self.cx) - (self.width / 2 - rho)
        dy = np.abs(np.asarray(y, dtype=float) - self.cy) - (self.height / 2 - rho)
        outside = np.hypot(np.maximum(dx, 0.0), np.maximum(dy, 0.0))
        inside = np.minimum(np.maximum(dx, dy), 0.0)
        return rho - (outside + inside)

    def contains(self, x, y):
        """Closed-region membership: boundary points count as inside."""
        return self.signed_distance(x, y) >= 0.0

    @property
    def boundary(self) -> BoundaryPath:
        if self._boundary is None:
            self._boundary = self._build_boundary()
        return self._boundary

    def _build_boundary(self) -> BoundaryPath:
        hw, hh, rho = self.width / 2, self.height / 2, self.corner_radius
        cx, cy = self.cx, self.cy
        x0, x1 = cx - hw, cx + hw
        y0, y1 = cy - hh, cy + hh
        pieces = [
            Segment(x0 + rho, y0, x1 - rho, y0),
            Arc(x1 - rho, y0 + rho, rho, -math.pi / 2, 0.0),
            Segment(x1, y0 + rho, x1, y1 - rho),
            Arc(x1 - rho, y1 - rho, rho, 0.0, math.pi / 2),
            Segment(x1 - rho, y1, x0 + rho, y1),
            Arc(x0 + rho, y1 - rho, rho, math.pi / 2, math.pi),
            Segment(x0, y1 - rho, x0, y0 + rho),
            Arc(x0 + rho, y0 + rho, rho, math.pi, 1.5 * math.pi),
        ]
        if rho == 0.0:
            pieces = [p for p in pieces if isinstance(p, Segment)]
        return BoundaryPath(pieces)

    def eroded_area(self, r: float) -> float:
        """Area of the inner parallel body at depth r (exact)."""
        w, h = self.width - 2 * r, self.height - 2 * r
        if w <= 0 or h <= 0:
            return 0.0
        rho = max(self.corner_radius - r, 0.0)
        return w * h - (4.0 - math.pi) * rho * rho

    def descriptor(self) -> dict:
        return {
            "region.type": "rounded_rect",
            "region.cx": repr(self.cx),
            "region.cy": repr(self.cy),
            "region.width": repr(self.width),
            "region.height": repr(self.height),
            "region.corner_radius": repr(self.corner_radius),
        }


class Comb:
    """Serpentine of thin horizontal strips joined by semicircular turns.

    Strips have height r/2 and horizontal extents ell, ell-4r, ..., 4r, stacked
    with pitch 2.5r and joined at alternating ends. Free strip ends terminate
    in a bulb of radius r blended by concave fillets of radius r, so the radius
    of curvature is at least r everywhere on the boundary (turn arcs have radii
    r and 1.5r).
    """

    def __init__(self, r: float, ell: float, name: str | None = None):
        if r <= 0:
            raise ValueError("r must be positive")
        ratio = ell / (4.0 * r)
        n = round(ratio)
        if n < 1 or abs(ratio - n) > 1e-9:
            raise ValueError("ell must be a positive multiple of 4r")
        self.r = float(r)
        self.ell = float(ell)
        self.strip_count = n
        self.strip_height = r / 2.0
        self.cap_radius = float(r)
        self.name = name or f"comb_r{r:g}_ell{ell:g}"
        self.components = 1
        self.convex = False
        self.min_curvature_radius = float(r)

        self._layout()
        self._boundary = BoundaryPath(self._trace_pieces())
        self.perimeter = self._boundary.length
        self.area = self._boundary.enclosed_area()
        if self.area <= 0:
            raise AssertionError("comb boundary traversal is not CCW")
        x0, y0, x1, y1 = self._raw_bbox()
        if x1 - x0 >= 1.0 or y1 - y0 >= 1.0:
            raise ValueError("comb does not fit in the unit square")
        # recenter in Y
        self._shift(0.5 - (x0 + x1) / 2, 0.5 - (y0 + y1) / 2)

    def __repr__(self) -> str:
        return f"Comb(r={self.r}, ell={self.ell})"

    def _layout(self) -> None:
        r, n = self.r, self.strip_count
        pitch = 2.5 * r
        self.pitch = pitch
        ys = [i * pitch for i in range(n)]
        lefts, rights = [0.0], [self.ell]
        for i in range(1, n):
            li = self.ell - 4.0 * r * i
            if (i - 1) % 2 == 0:  # join with previous strip at its right end
                rights.append(rights[i - 1])
                lefts.append(rights[i] - li)
            else:
                lefts.append(lefts[i - 1])
                rights.append(lefts[i] + li)
        self._ys, self._lefts, self._rights = ys, lefts, rights
        # free (capped) ends: only the first and last strip have one (or two for n=1)
        self._cap_left = [False] * n
        self._cap_right = [False] * n
        for i in (0, n - 1):
            left_joined = any(
                (j == i - 1 and (j % 2 == 1)) or (j == i and (i % 2 == 1))
                for j in range(n - 1)
            )
            right_joined = any(
                (j == i - 1 and (j % 2 == 0)) or (j == i and (i % 2 == 0))
                for j in range(n - 1)
            )
            self._cap_left[i] = not left_joined
            self._cap_right[i] = not right_joined

    def _edge_x(self, i: int, side: str) -> float:
        r = self.r
        if side == "left":
            return self._lefts[i] + (_CAP_DX * r if self._cap_left[i] else 0.0)
        return self._rights[i] - (_CAP_DX * r if self._cap_right[i] else 0.0)

    def _edge(self, i: int, which: str, direction: str) -> Segment:
        y = self._ys[i] + (self.r / 4 if which == "top" else -self.r / 4)
        xl, xr = self._edge_x(i, "left"), self._edge_x(i, "right")
        if direction == "lr":
            return Segment(xl, y, xr, y)
        return Segment(xr, y, xl, y)

    def _cap_pieces(self, i: int, side: str):
        r, yc = self.r, self._ys[i]
        phi = _CAP_PHI
        if side == "left":
            bx = self._lefts[i]
            ax = bx + _CAP_DX * r
            return [
                Arc(ax, yc + 1.25 * r, r, -math.pi / 2, phi - math.pi),
                Arc(bx, yc, r, phi, TWO_PI - phi),
                Arc(ax, yc - 1.25 * r, r, math.pi - phi, math.pi / 2),
            ]
        bx = self._rights[i]
        ax = bx - _CAP_DX * r
        return [
            Arc(ax, yc - 1.25 * r, r, math.pi / 2, phi),
            Arc(bx, yc, r, phi - math.pi, math.pi - phi),
            Arc(ax, yc + 1.25 * r, r, -phi, -math.pi / 2),
        ]

    def _join_center(self, i: int):
        side = "right" if i % 2 == 0 else "left"
        xe = self._rights[i] if side == "right" else self._lefts[i]
        return side, xe, (self._ys[i] + self._ys[i + 1]) / 2

    def _join_arc(self, i: int, which: str) -> Arc:
        r = self.r
        side, xe, cy = self._join_center(i)
        radius = 1.5 * r if which == "outer" else r
        if side == "right":
            if which == "outer":
                return Arc(xe, cy, radius, -math.pi / 2, math.pi / 2)
            return Arc(xe, cy, radius, math.pi / 2, -math.pi / 2)
        if which == "outer":
            return Arc(xe, cy, radius, math.pi / 2, 1.5 * math.pi)
        return Arc(xe, cy, radius, 1.5 * math.pi, math.pi / 2)

    def _trace_pieces(self):
        n = self.strip_count
        pieces = []
        for i in range(n - 1):  # ascent
            if i % 2 == 0:
                pieces.append(self._edge(i, "bottom", "lr"))
                pieces.append(self._join_arc(i, "outer"))
            else:
                pieces.append(self._edge(i, "top", "rl"))
                pieces.append(self._join_arc(i, "inner"))
        top = n - 1
        if top % 2 == 0:
            pieces.append(self._edge(top, "bottom", "lr"))
            pieces.extend(self._cap_pieces(top, "right"))
            pieces.append(self._edge(top, "top", "rl"))
        else:
            pieces.append(self._edge(top, "top", "rl"))
            pieces.extend(self._cap_pieces(top, "left"))
            pieces.append(self._edge(top, "bottom", "lr"))
        for i in range(n - 2, -1, -1):  # descent
            if i % 2 == 0:
                pieces.append(self._join_arc(i, "inner"))
                pieces.append(self._edge(i, "top", "rl"))
            else:
                pieces.append(self._join_arc(i, "outer"))
                pieces.append(self._edge(i, "bottom", "lr"))
        pieces.extend(self._cap_pieces(0, "left" if self._cap_left[0] else "right"))
        return pieces

    def _raw_bbox(self):
        r, n = self.r, self.strip_count
        xs_min, xs_max, ys_min, ys_max = [], [], [], []
        for i in range(n):
            xs_min.append(self._lefts[i] - (r if self._cap_left[i] else 0.0))
            xs_max.append(self._rights[i] + (r if self._cap_right[i] else 0.0))
            ys_min.append(self._ys[i] - (r if self._cap_left[i] or self._cap_right[i] else r / 4))
            ys_max.append(self._ys[i] + (r if self._cap_left[i] or self._cap_right[i] else r / 4))
        for i in range(n - 1):
            side, xe, _ = self._join_center(i)
            if side == "right":
                xs_max.append(xe + 1.5 * r)
            else:
                xs_min.append(xe - 1.5 * r)
        return min(xs_min), min(ys_min), max(xs_max), max(ys_max)

    def _shift(self, dx: float, dy: float) -> None:
        self._ys = [y + dy for y in self._ys]
        self._lefts = [x + dx for x in self._lefts]
        self._rights = [x + dx for x in self._rights]
        self._boundary = BoundaryPath(self._trace_pieces())

    def bbox(self):
        x0, y0, x1, y1 = self._raw_bbox()
        return (x0, y0, x1, y1)

    @property
    def boundary(self) -> BoundaryPath:
        return self._boundary

    def strip_rects(self):
        """The (left, right, bottom, top) rectangles of the thin strips."""
        h = self.strip_height / 2
        return [
            (self._lefts[i], self._rights[i], self._ys[i] - h, self._ys[i] + h)
            for i in range(self.strip_count)
        ]

    def strip_area(self) -> float:
        return sum((x1 - x0) * (y1 - y0) for x0, x1, y0, y1 in self.strip_rects())

    def contains(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        r = self.r
        inside = np.zeros(np.broadcast(x, y).shape, dtype=bool)
        for x0, x1, y0, y1 in self.strip_rects():
            inside |= (x >= x0) & (x <= x1) & (y >= y0) & (y <= y1)
        for i in range(self.strip_count - 1):
            side, xe, cy = self._join_center(i)
            rho = np.hypot(x - xe, y - cy)
            half = x >= xe if side == "right" else x <= xe
            inside |= half & (rho >= r) & (rho <= 1.5 * r)
        for i in range(self.strip_count):
            yc = self._ys[i]
            for side, capped in (("left", self._cap_left[i]), ("right", self._cap_right[i])):
                if not capped:
                    continue
                sgn = 1.0 if side == "left" else -1.0
                bx = self._lefts[i] if side == "left" else self._rights[i]
                inside |= np.hypot(x - bx, y - yc) <= r
                # fillet patches between the bulb and the strip edges; bounded
                # left by the bulb circle, above by the fillet arc, below by
                # the edge line, and the fillet-bulb tangency sits at 5r/8.
                u = sgn * (x - bx)  # coordinate pointing into the strip
                in_band = (u >= 0.0) & (u <= _CAP_DX * r)
                fx = bx + sgn * _CAP_DX * r
                for vs in (1.0, -1.0):
                    fy = yc + vs * 1.25 * r
                    v = vs * (y - yc)
                    patch = (
                        in_band
                        & (v >= r / 4) & (v <= 5.0 * r / 8.0)
                        & (np.hypot(x - bx, y - yc) >= r)
                        & (np.hypot(x - fx, y - fy) >= r)
                    )
                    inside |= patch
        return inside

    def signed_distance(self, x, y):
        d = self._boundary.distance(x, y)
        return np.where(self.contains(x, y), d, -d)

    def descriptor(self) -> dict:
        return {
            "region.type": "comb",
            "region.r": repr(self.r),
            "region.ell": repr(self.ell),
        }


# The two experiment regions: equal area, different perimeter.
def region_xs() -> RoundedRect:
    return RoundedRect(0.5, 0.5, 0.4, 0.4, 0.1, name="XS")


def region_xl() -> RoundedRect:
    return RoundedRect(0.5, 0.5, 0.8, 0.2, 0.1, name="XL")


def build_thin_rectangle(r: float) -> RoundedRect:
    """Worst-case thin rectangle of height r/2 and width 4r, centered in Y.

    Every point of the region lies within distance r of its boundary, so the
    whole region falls inside the dubious band Z_r; its perimeter is 9r.
    """
    if r <= 0:
        raise ValueError("r must be positive")
    if 4.0 * r >= 1.0:
        raise ValueError("thin rectangle of width 4r does not fit in the unit square")
    region = RoundedRect(0.5, 0.5, 4.0 * r, r / 2.0, 0.0, name=f"thin_rect_r{r:g}")
    region.kind = "thin_rect"
    region.thin_r = float(r)
    return region


def build_comb(r: float, ell: float) -> Comb:
    """Worst-case non-convex serpentine with curvature radius >= r everywhere."""
    return Comb(r, ell)


# ---------------------------------------------------------------------------
# Queries


def _xy(pt) -> tuple[float, float]:
    if isinstance(pt, Point):
        return pt.x, pt.y
    x, y = pt
    return float(x), float(y)


def contains(region, pt) -> bool:
    """Closed-region membership test for a single point."""
    x, y = _xy(pt)
    return bool(region.contains(x, y))


def distance_to_boundary(region, pt) -> float:
    """Signed Euclidean distance to bd(X): positive inside X, negative outside."""
    x, y = _xy(pt)
    return float(region.signed_distance(x, y))


def zone_of(region, pt, r: float) -> ZoneLabel:
    """Classify a point by X membership and the dubious band Z_r.

    Points at distance exactly r count as inside Z_r; boundary points count
    as inside X.
    """
    if r <= 0:
        raise ValueError("r must be positive")
    d = distance_to_boundary(region, pt)
    in_x = d >= 0.0
    in_zr = abs(d) <= r
    if in_zr:
        return ZoneLabel.IN_ZR_IN_X if in_x else ZoneLabel.IN_ZR_OUT_X
    return ZoneLabel.OUTSIDE_ZR_IN_X if in_x else ZoneLabel.OUTSIDE_ZR_OUT_X


@dataclass(frozen=True)
class ZoneArea:
    """Area of the dubious band Z_r (restricted to Y when it clips bd(Y))."""

    value: float
    analytic: bool
    clipped: bool

    def __float__(self) -> float:
        return self.value


def _zone_clips_unit_square(region, r: float) -> bool:
    x0, y0, x1, y1 = region.bbox()
    return x0 - r < 0.0 or y0 - r < 0.0 or x1 + r > 1.0 or y1 + r > 1.0


def _zone_area_mc(region, r: float, samples: int, seed: int) -> float:
    grid = max(int(math.sqrt(samples)), 10)
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(0x5A0E,)))
    base = (np.arange(grid) + 0.0) / grid
    gx, gy = np.meshgrid(base, base, indexing="ij")
    x = gx.ravel() + rng.random(grid * grid) / grid
    y = gy.ravel() + rng.random(grid * grid) / grid
    d = np.abs(region.signed_distance(x, y))
    return float(np.count_nonzero(d <= r)) / (grid * grid)


def dubious_zone_area(region, r: float, mc_samples: int = 1_000_000, seed: int = 0) -> ZoneArea:
    """Area of Z_r = points within distance r of bd(X).

    Exact for rounded rectangles whose band stays inside Y (outer band by the
    convex offset formula, inner band by subtracting the eroded area); falls
    back to stratified Monte Carlo over Y for the comb or when Z_r clips bd(Y).
    """
    if r <= 0:
        raise ValueError("r must be positive")
    clipped = _zone_clips_unit_square(region, r)
    if clipped or not isinstance(region, RoundedRect):
        return ZoneArea(_zone_area_mc(region, r, mc_samples, seed), analytic=False, clipped=clipped)
    outer = region.perimeter * r + math.pi * r * r
    inner = region.area - region.eroded_area(r)
    return ZoneArea(outer + inner, analytic=True, clipped=False)


def classify_good_bad(region, pt, r: float, coarse: int = 2048, tol: float = 1e-12) -> SensorClass:
    """Good/bad split for dubious-band sensors of a convex, round region.

    Traversing bd(X) counterclockwise, the boundary enters the radius-r disk A
    around the point exactly once (rolling-ball property). The point is good
    iff the antipode of that entry point lies on the same side of bd(X).
    """
    if not getattr(region, "convex", False) or region.min_curvature_radius < r:
        raise ValueError("classification requires a convex region with curvature radius >= r")
    px, py = _xy(pt)
    d = float(region.signed_distance(px, py))
    if abs(d) >= r:
        return SensorClass.NOT_IN_ZR
    path = region.boundary

    def f(s: float) -> float:
        bx, by = path.points_at(np.array([s]))
        return math.hypot(float(bx[0]) - px, float(by[0]) - py) - r

    grid = np.linspace(0.0, path.length, coarse, endpoint=False)
    bx, by = path.points_at(grid)
    fg = np.hypot(bx - px, by - py) - r
    s_min = float(grid[np.argmin(fg)])
    step = path.length / coarse
    lo, hi = s_min - step, s_min + step
    for _ in range(200):  # ternary refinement of the dip
        m1, m2 = lo + (hi - lo) / 3, hi - (hi - lo) / 3
        if f(m1) <= f(m2):
            hi = m2
        else:
            lo = m1
        if hi - lo < tol:
            break
    s_in = (lo + hi) / 2
    if f(s_in) >= 0.0:
        raise ArithmeticError("disk-boundary intersection degenerates at |distance| ~ r")
    s_out = s_in - step
    while f(s_out) <= 0.0:
        s_out -= step
    # bisect the outside -> inside crossing (CCW entry point)
    for _ in range(200):
        mid = (s_out + s_in) / 2
        if f(mid) > 0.0:
            s_out = mid
        else:
            s_in = mid
        if s_in - s_out < tol:
            break
    ex, ey = path.points_at((s_out + s_in) / 2)
    qx, qy = 2 * px - float(ex), 2 * py - float(ey)
    same_side = bool(region.contains(qx, qy)) == (d >= 0.0)
    return SensorClass.GOOD if same_side else SensorClass.BAD
