"""Planar geometry: similarity maps, polygons, areas, intersection areas.

Points are complex numbers (R^2 identified with C).  A similarity scales by
an integer power of the radix, rotates by a power of the primitive 2m-th
root of unity u = exp(i pi / m), optionally conjugates first, and then
translates.  Exactness lives in the number field module; geometry here is
double precision with explicit tolerances.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

EPS_GEO = 1e-9


def unit_root(m, power):
    """u^power for u = exp(i pi / m), an order-2m root of unity."""
    return cmath.exp(1j * math.pi * (power % (2 * m)) / m)


@dataclass(frozen=True)
class Similarity:
    """z -> translation + rho^scale_exponent * u^rotation_power * (conj? z̄ : z)."""

    scale_exponent: int = 0
    rotation_power: int = 0
    conjugate: bool = False
    translation: complex = 0j

    def apply(self, p: complex, rho: float, m: int) -> complex:
        z = p.conjugate() if self.conjugate else p
        z = z * unit_root(m, self.rotation_power)
        z = z * rho ** self.scale_exponent
        return self.translation + z

    def compose(self, other: "Similarity", rho: float, m: int) -> "Similarity":
        """self after other: apply(compose(a, b), p) == apply(a, apply(b, p))."""
        order = 2 * m
        if self.conjugate:
            rot = (self.rotation_power - other.rotation_power) % order
        else:
            rot = (self.rotation_power + other.rotation_power) % order
        return Similarity(
            scale_exponent=self.scale_exponent + other.scale_exponent,
            rotation_power=rot,
            conjugate=self.conjugate != other.conjugate,
            translation=self.apply(other.translation, rho, m),
        )


IDENTITY = Similarity()


def apply(s: Similarity, p: complex, rho, m: int) -> complex:
    return s.apply(p, float(rho), m)


def compose(a: Similarity, b: Similarity, rho, m: int) -> Similarity:
    return a.compose(b, float(rho), m)


class Polygon:
    """Simple polygon, vertices stored counter-clockwise as complex numbers."""

    __slots__ = ("vertices",)

    def __init__(self, vertices):
        vs = [complex(v) for v in vertices]
        if len(vs) < 3:
            raise ValueError("polygon needs at least 3 vertices")
        for a, b in zip(vs, vs[1:] + vs[:1]):
            if abs(a - b) < 1e-12:
                raise ValueError("repeated consecutive vertices")
        if _signed_area(vs) < 0:
            vs.reverse()
        if _signed_area(vs) <= 0:
            raise ValueError("degenerate polygon (zero area)")
        self.vertices = tuple(vs)

    def area(self) -> float:
        return _signed_area(self.vertices)

    def centroid(self) -> complex:
        a6 = 0.0
        cx = 0.0
        cy = 0.0
        vs = self.vertices
        for p, q in zip(vs, vs[1:] + vs[:1]):
            cross = p.real * q.imag - q.real * p.imag
            a6 += cross
            cx += (p.real + q.real) * cross
            cy += (p.imag + q.imag) * cross
        a6 *= 3.0
        return complex(cx / a6, cy / a6)

    def bounding_box(self):
        xs = [v.real for v in self.vertices]
        ys = [v.imag for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def transformed(self, s: Similarity, rho, m) -> "Polygon":
        r = float(rho)
        return Polygon([s.apply(v, r, m) for v in self.vertices])

    def is_convex(self) -> bool:
        vs = self.vertices
        n = len(vs)
        for i in range(n):
            a, b, c = vs[i], vs[(i + 1) % n], vs[(i + 2) % n]
            if _cross(b - a, c - b) < -1e-12 * abs(b - a) * abs(c - b):
                return False
        return True

    def contains(self, p: complex, tol=1e-9) -> bool:
        """Point-in-polygon with a boundary tolerance (counts boundary in)."""
        vs = self.vertices
        n = len(vs)
        inside = False
        for i in range(n):
            a, b = vs[i], vs[(i + 1) % n]
            if _point_segment_distance(p, a, b) <= tol:
                return True
            if (a.imag > p.imag) != (b.imag > p.imag):
                xint = a.real + (p.imag - a.imag) * (b.real - a.real) / (b.imag - a.imag)
                if p.real < xint:
                    inside = not inside
        return inside

    def __eq__(self, other):
        return isinstance(other, Polygon) and self.vertices == other.vertices

    def __repr__(self):
        return f"Polygon({list(self.vertices)!r})"


@dataclass(frozen=True)
class Polyline:
    """Open polygonal curve (decorations, digit paths)."""

    vertices: tuple
    degenerate: bool = False

    def __post_init__(self):
        vs = tuple(complex(v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        if len(vs) < 2:
            raise ValueError("polyline needs at least 2 vertices")

    def transformed(self, s: Similarity, rho, m) -> "Polyline":
        r = float(rho)
        return Polyline(tuple(s.apply(v, r, m) for v in self.vertices), self.degenerate)


def _signed_area(vs):
    acc = 0.0
    for p, q in zip(vs, list(vs[1:]) + [vs[0]]):
        acc += p.real * q.imag - q.real * p.imag
    return acc / 2.0


def _cross(a: complex, b: complex) -> float:
    return a.real * b.imag - a.imag * b.real


def _point_segment_distance(p, a, b):
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0:
        return abs(p - a)
    t = max(0.0, min(1.0, ((p - a).real * ab.real + (p - a).imag * ab.imag) / denom))
    return abs(p - (a + t * ab))


def polygon_area(p: Polygon) -> float:
    return p.area()


def _clip_convex(subject, clip):
    """Sutherland-Hodgman: clip a convex subject by a convex CCW clip
    polygon.  Vertex lists of complex numbers in, list out."""
    output = list(subject)
    n = len(clip)
    for i in range(n):
        if not output:
            return []
        a = clip[i]
        b = clip[(i + 1) % n]
        edge = b - a
        input_list = output
        output = []
        s = input_list[-1]
        s_in = _cross(edge, s - a) >= 0.0
        for e in input_list:
            e_in = _cross(edge, e - a) >= 0.0
            if e_in:
                if not s_in:
                    output.append(_line_intersect(a, b, s, e))
                output.append(e)
            elif s_in:
                output.append(_line_intersect(a, b, s, e))
            s, s_in = e, e_in
    return output


def _line_intersect(a, b, p, q):
    d1 = b - a
    d2 = q - p
    denom = _cross(d1, d2)
    if denom == 0:
        return q
    t = _cross(p - a, d2) / denom
    return a + t * d1


def triangulate(p: Polygon):
    """Ear clipping; returns a list of CCW triangles (vertex triples)."""
    vs = list(p.vertices)
    if len(vs) == 3:
        return [tuple(vs)]
    if p.is_convex():
        return [(vs[0], vs[i], vs[i + 1]) for i in range(1, len(vs) - 1)]
    triangles = []
    idx = list(range(len(vs)))
    guard = 0
    while len(idx) > 3 and guard < 10000:
        guard += 1
        n = len(idx)
        # a vertex exactly on the candidate ear's boundary (a reflex vertex
        # on the diagonal) must block the ear, so test the closed triangle
        # first and fall back to the open one only if no closed ear exists
        found = False
        for closed in (True, False):
            for k in range(n):
                i0, i1, i2 = idx[(k - 1) % n], idx[k], idx[(k + 1) % n]
                a, b, c = vs[i0], vs[i1], vs[i2]
                if _cross(b - a, c - b) <= 1e-15:
                    continue
                ear = True
                for j in idx:
                    if j in (i0, i1, i2):
                        continue
                    if _point_in_triangle(vs[j], a, b, c, closed):
                        ear = False
                        break
                if ear:
                    triangles.append((a, b, c))
                    idx.pop(k)
                    found = True
                    break
            if found:
                break
        if not found:
            raise ValueError("ear clipping failed (polygon may self-intersect)")
    triangles.append((vs[idx[0]], vs[idx[1]], vs[idx[2]]))
    return triangles


def _point_in_triangle(p, a, b, c, closed=False):
    d1 = _cross(b - a, p - a)
    d2 = _cross(c - b, p - b)
    d3 = _cross(a - c, p - c)
    eps = -1e-12 if closed else 1e-15
    return d1 > eps and d2 > eps and d3 > eps


def intersection_area(p: Polygon, q: Polygon) -> float:
    """Area of the intersection.  Convex pairs go straight through the
    clipper; non-convex inputs are triangulated and summed pairwise."""
    px0, py0, px1, py1 = p.bounding_box()
    qx0, qy0, qx1, qy1 = q.bounding_box()
    if px1 <= qx0 or qx1 <= px0 or py1 <= qy0 or qy1 <= py0:
        return 0.0
    if p.is_convex() and q.is_convex():
        clipped = _clip_convex(list(p.vertices), list(q.vertices))
        if len(clipped) < 3:
            return 0.0
        return abs(_signed_area(clipped))
    total = 0.0
    for t1 in triangulate(p):
        for t2 in triangulate(q):
            clipped = _clip_convex(list(t1), list(t2))
            if len(clipped) >= 3:
                total += abs(_signed_area(clipped))
    return total
