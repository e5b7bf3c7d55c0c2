"""Polygonal writhe and linking by closed-form solid angles.

A pair of line segments sweeps a quadrilateral patch on the unit sphere
under the Gauss map; its signed area is four arcsin dihedral terms and an
orientation sign.  Writhe sums the patches over unordered non-adjacent
segment pairs of one closed curve (each pair covers both integration
orders, hence the 1/2pi), linking over all cross pairs of two curves
(1/4pi).  Everything here is binary64 with compensated accumulation; only
this module leaves exact arithmetic, the integrals being transcendental.

A Monte Carlo estimator of the same double integral ships as the oracle
for cross-checks; it is vectorized and seeded, never used as the primary
path.
"""

from __future__ import annotations

import csv
import json
import math


class DegeneratePairError(ValueError):
    """A segment pair too singular for the solid-angle formula."""

    def __init__(self, message, pair):
        super().__init__("%s (segments %d and %d)" % (message, pair[0], pair[1]))
        self.pair = pair


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _norm(a):
    return math.sqrt(_dot(a, a))


def _unit(a):
    n = _norm(a)
    if n == 0.0:
        return None
    return (a[0] / n, a[1] / n, a[2] / n)


def _segment_distance(p1, p2, q1, q2):
    """Minimal distance between segments [p1,p2] and [q1,q2]."""
    d1 = _sub(p2, p1)
    d2 = _sub(q2, q1)
    r = _sub(p1, q1)
    a = _dot(d1, d1)
    e = _dot(d2, d2)
    f = _dot(d2, r)
    c = _dot(d1, r)
    b = _dot(d1, d2)
    denom = a * e - b * b
    s = 0.0 if denom == 0.0 else max(0.0, min(1.0, (b * f - c * e) / denom))
    t = (b * s + f) / e if e else 0.0
    if t < 0.0:
        t = 0.0
        s = max(0.0, min(1.0, -c / a)) if a else 0.0
    elif t > 1.0:
        t = 1.0
        s = max(0.0, min(1.0, (b - c) / a)) if a else 0.0
    close1 = (p1[0] + s * d1[0], p1[1] + s * d1[1], p1[2] + s * d1[2])
    close2 = (q1[0] + t * d2[0], q1[1] + t * d2[1], q1[2] + t * d2[2])
    return _norm(_sub(close1, close2))


class PolygonalCurve:
    """Closed or open polygon in 3-space with a clearance-validated embedding.

    Points are (x, y, z) floats.  The closing edge of a closed curve is
    implicit; a closed input whose last point repeats the first is
    silently trimmed.  Validation rejects consecutive duplicate points and
    any non-adjacent segment pair closer than the clearance (default
    1e-9 times the bounding-box diameter).
    """

    def __init__(self, points, closed=False, clearance=None):
        pts = [tuple(float(x) for x in p) for p in points]
        if any(len(p) != 3 for p in pts):
            raise ValueError("points must be 3-dimensional")
        if closed and len(pts) > 1 and pts[0] == pts[-1]:
            pts = pts[:-1]
        if len(pts) < 3:
            raise ValueError("need at least 3 points")
        self.points = pts
        self.closed = bool(closed)
        for i in range(len(pts) - 1 + (1 if self.closed else 0)):
            if pts[i] == pts[(i + 1) % len(pts)]:
                raise ValueError("consecutive points %d and %d coincide" % (i, (i + 1) % len(pts)))
        self.clearance = self._resolve_clearance(clearance)
        self._check_embedding()

    def _resolve_clearance(self, clearance):
        if clearance is not None:
            if clearance <= 0:
                raise ValueError("clearance must be positive")
            return float(clearance)
        lo = [min(p[k] for p in self.points) for k in range(3)]
        hi = [max(p[k] for p in self.points) for k in range(3)]
        diameter = _norm((hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]))
        return 1e-9 * (diameter if diameter > 0 else 1.0)

    def segments(self):
        pts = self.points
        n = len(pts)
        segs = [(pts[i], pts[i + 1]) for i in range(n - 1)]
        if self.closed:
            segs.append((pts[-1], pts[0]))
        return segs

    def _check_embedding(self):
        segs = self.segments()
        n = len(segs)
        for i in range(n):
            for j in range(i + 2, n):
                if self.closed and i == 0 and j == n - 1:
                    continue  # wrap-around neighbors share a point
                d = _segment_distance(*segs[i], *segs[j])
                if d < self.clearance:
                    raise ValueError(
                        "segments %d and %d are %.3e apart, below clearance %.3e"
                        % (i, j, d, self.clearance)
                    )

    def total_length(self):
        return math.fsum(_norm(_sub(b, a)) for a, b in self.segments())

    def subdivided(self, pieces=2):
        """Split every segment into equal pieces; same curve as a set."""
        if pieces < 2:
            raise ValueError("pieces must be >= 2")
        out = []
        for a, b in self.segments():
            for k in range(pieces):
                t = k / pieces
                out.append(
                    (
                        a[0] + t * (b[0] - a[0]),
                        a[1] + t * (b[1] - a[1]),
                        a[2] + t * (b[2] - a[2]),
                    )
                )
        if not self.closed:
            out.append(self.points[-1])
        return PolygonalCurve(out, closed=self.closed, clearance=self.clearance)

    def __repr__(self):
        return "<PolygonalCurve %s points=%d>" % (
            "closed" if self.closed else "open",
            len(self.points),
        )


def _spherical_triangle(a, b, c):
    """Signed solid angle of the triangle (a, b, c) of unit vectors."""
    num = _dot(a, _cross(b, c))
    den = 1.0 + _dot(a, b) + _dot(b, c) + _dot(c, a)
    return 2.0 * math.atan2(num, den)


def _pair_solid_angle(p1, p2, q1, q2, pair):
    """Signed spherical-quadrilateral area swept by the Gauss map.

    The patch corners are the four endpoint-to-endpoint directions; the
    area comes as two signed spherical triangles, which stays finite when
    a corner collapses (an endpoint collinear with the other segment).
    Coinciding endpoints have no direction at all: that is real contact,
    reported as a degenerate pair.
    """
    a = _unit(_sub(q1, p1))
    b = _unit(_sub(q1, p2))
    c = _unit(_sub(q2, p2))
    d = _unit(_sub(q2, p1))
    if a is None or b is None or c is None or d is None:
        raise DegeneratePairError("segment endpoints touch", pair)
    return _spherical_triangle(a, b, c) + _spherical_triangle(a, c, d)


def writhe_exact(curve):
    """Gauss self-linking of a closed polygon, by closed-form solid angles.

    Sums unordered non-adjacent segment pairs and divides by 2pi (each
    pair stands for both integration orders of the 1/4pi double integral).
    """
    if not curve.closed:
        raise ValueError("writhe needs a closed curve")
    segs = curve.segments()
    n = len(segs)
    parts = []
    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            parts.append(_pair_solid_angle(*segs[i], *segs[j], pair=(i, j)))
    return math.fsum(parts) / (2.0 * math.pi)


def linking_gauss(c1, c2):
    """Gauss linking number of two disjoint closed polygons (near-integer)."""
    if not (c1.closed and c2.closed):
        raise ValueError("linking needs two closed curves")
    clearance = min(c1.clearance, c2.clearance)
    s1 = c1.segments()
    s2 = c2.segments()
    for i, (p1, p2) in enumerate(s1):
        for j, (q1, q2) in enumerate(s2):
            if _segment_distance(p1, p2, q1, q2) < clearance:
                raise DegeneratePairError("curves too close for the Gauss sum", (i, j))
    parts = []
    for i, (p1, p2) in enumerate(s1):
        for j, (q1, q2) in enumerate(s2):
            parts.append(_pair_solid_angle(p1, p2, q1, q2, pair=(i, j)))
    return math.fsum(parts) / (4.0 * math.pi)


# -- Monte Carlo oracle ---------------------------------------------------------


def writhe_monte_carlo(curve, samples=10**6, seed=0):
    """Estimate the writhe double integral by uniform arclength sampling.

    Returns (estimate, standard_error).  Oracle only: slow convergence near
    the diagonal; the deterministic path is writhe_exact.
    """
    import numpy as np

    if not curve.closed:
        raise ValueError("writhe needs a closed curve")
    segs = curve.segments()
    a = np.array([s[0] for s in segs])
    b = np.array([s[1] for s in segs])
    vec = b - a
    lengths = np.sqrt((vec**2).sum(axis=1))
    total = lengths.sum()
    tangents = vec / lengths[:, None]
    weights = lengths / total
    rng = np.random.default_rng(seed)
    idx1 = rng.choice(len(segs), size=samples, p=weights)
    idx2 = rng.choice(len(segs), size=samples, p=weights)
    t1 = rng.random(samples)
    t2 = rng.random(samples)
    x = a[idx1] + t1[:, None] * vec[idx1]
    y = a[idx2] + t2[:, None] * vec[idx2]
    d = x - y
    dist3 = (d**2).sum(axis=1) ** 1.5
    tri = np.einsum("ij,ij->i", np.cross(tangents[idx1], tangents[idx2]), d)
    vals = np.where(dist3 > 0, tri / np.where(dist3 > 0, dist3, 1.0), 0.0)
    scale = total * total / (4.0 * math.pi)
    est = vals.mean() * scale
    err = vals.std(ddof=1) / math.sqrt(samples) * scale
    return est, err


# -- sample shapes and file IO ---------------------------------------------------


def sample_circle(n=64, radius=1.0, center=(0.0, 0.0, 0.0), plane="xy"):
    """Regular n-gon approximating a circle in the xy, yz, or xz plane."""
    if n < 3:
        raise ValueError("need at least 3 points")
    axes = {"xy": (0, 1), "yz": (1, 2), "xz": (0, 2)}
    if plane not in axes:
        raise ValueError("plane must be one of xy, yz, xz")
    u, v = axes[plane]
    pts = []
    for k in range(n):
        t = 2.0 * math.pi * k / n
        p = list(center)
        p[u] += radius * math.cos(t)
        p[v] += radius * math.sin(t)
        pts.append(tuple(p))
    return PolygonalCurve(pts, closed=True)


def sample_trefoil(n=120):
    """Polygonal trefoil on the standard parametrization."""
    pts = []
    for k in range(n):
        t = 2.0 * math.pi * k / n
        pts.append(
            (
                math.sin(t) + 2.0 * math.sin(2.0 * t),
                math.cos(t) - 2.0 * math.cos(2.0 * t),
                -math.sin(3.0 * t),
            )
        )
    return PolygonalCurve(pts, closed=True)


def hopf_pair(n=64):
    """Two unit circles linked once."""
    c1 = sample_circle(n, plane="xy")
    c2 = sample_circle(n, center=(1.0, 0.0, 0.0), plane="xz")
    return c1, c2


def load_curve_points(path):
    """Points from a JSON file ([[x,y,z],...] or {points, closed}) or CSV rows.

    Returns (points, closed_or_None); CSV carries no closed flag.
    """
    text = open(path).read()
    if path.endswith(".json") or text.lstrip()[:1] in "[{":
        data = json.loads(text)
        if isinstance(data, dict):
            return data["points"], data.get("closed")
        return data, None
    rows = []
    for row in csv.reader(text.splitlines()):
        if not row or row[0].lstrip().startswith("#"):
            continue
        if any(cell.strip() and not _is_number(cell) for cell in row[:3]):
            continue  # header line
        if len(row) < 3:
            raise ValueError("CSV point row needs x,y,z columns, got %r" % (row,))
        rows.append(tuple(float(c) for c in row[:3]))
    return rows, None


def _is_number(cell):
    try:
        float(cell)
        return True
    except ValueError:
        return False
