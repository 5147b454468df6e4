"""Exact planar geometry over Q(zeta_n).

Points are CycNum values read as complex numbers.  Slopes are never formed;
parallelism, angular order and the cross ratio all go through the
determinant det(u, w) = conj(u) w - u conj(w), which is 2i times the usual
2D cross product and stays inside the field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, Sequence

from .cyclotomic import CycNum, conjugate, sign_im, sign_re, to_json

__all__ = [
    "ParallelDirectionsError",
    "Direction",
    "LineKey",
    "Polygon",
    "Segment",
    "make_direction",
    "det",
    "cross_sign",
    "parallel",
    "angle_sort",
    "cross_ratio",
    "orientation",
    "convex_hull",
    "hull_contains",
    "is_convex_subset",
    "line_key",
]


class ParallelDirectionsError(ValueError):
    pass


def _as_cyc(z) -> CycNum:
    if isinstance(z, Direction):
        return z.rep
    if isinstance(z, CycNum):
        return z
    return CycNum.rational(z)


def det(u, w) -> CycNum:
    """conj(u) w - u conj(w); purely imaginary, zero iff u and w are parallel."""
    u, w = _as_cyc(u), _as_cyc(w)
    return conjugate(u) * w - u * conjugate(w)


def cross_sign(u, w) -> int:
    """Sign of Im(conj(u) w): +1 when w points counterclockwise of u."""
    u, w = _as_cyc(u), _as_cyc(w)
    return sign_im(conjugate(u) * w)


def orientation(a: CycNum, b: CycNum, c: CycNum) -> int:
    """+1 for a left turn a -> b -> c, -1 for a right turn, 0 if collinear."""
    za, zb, zc = a.approx(), b.approx(), c.approx()
    d1, d2 = zb - za, zc - za
    cross = d1.real * d2.imag - d1.imag * d2.real
    scale = 1.0 + a.l1() + b.l1() + c.l1()
    if abs(cross) > 1e-11 * scale * scale:
        return 1 if cross > 0 else -1
    return sign_im(conjugate(b - a) * (c - a))


class Direction:
    """A Z[zeta_n]-direction, stored as a primitive representative.

    The representative has integer power-basis coefficients with gcd 1 and
    points into the half-open upper half plane (angle in [0, pi)).
    """

    __slots__ = ("rep",)

    def __init__(self, rep: CycNum):
        self.rep = rep

    @property
    def order(self) -> int:
        return self.rep.order

    def __eq__(self, other):
        return isinstance(other, Direction) and self.rep == other.rep

    def __hash__(self):
        return hash(("dir", self.rep))

    def __repr__(self):
        return f"Direction({self.rep})"

    def to_json(self) -> dict:
        return {"n": self.rep.order, "rep": [int(c) for c in self.rep.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "Direction":
        return make_direction(CycNum(int(obj["n"]), [int(c) for c in obj["rep"]]))


def make_direction(z, order: int | None = None) -> Direction:
    z = _as_cyc(z)
    if order is not None and z.order != order:
        from .cyclotomic import coerce

        z = coerce(z, order)
    if z.is_zero():
        raise ValueError("the zero vector has no direction")
    den = z.denominator()
    coeffs = [int(c * den) for c in z.coeffs]
    g = 0
    for c in coeffs:
        g = math.gcd(g, c)
    coeffs = [c // g for c in coeffs]
    rep = CycNum(z.order, coeffs)
    s = sign_im(rep)
    if s < 0 or (s == 0 and sign_re(rep) < 0):
        rep = -rep
    return Direction(rep)


def parallel(u, w) -> bool:
    return det(u, w).is_zero()


def _angle_cmp(u: Direction, w: Direction) -> int:
    # both angles lie in [0, pi), so the cross product decides the order
    s = cross_sign(u, w)
    if s == 0:
        raise ParallelDirectionsError(f"{u} and {w} are parallel")
    return -s


def _check_pairwise(U: Sequence[Direction]) -> None:
    for i in range(len(U)):
        for j in range(i + 1, len(U)):
            if parallel(U[i], U[j]):
                raise ParallelDirectionsError(f"{U[i]} and {U[j]} are parallel")


def angle_sort(U: Iterable) -> list[Direction]:
    """Sort pairwise non-parallel directions by increasing angle in [0, pi)."""
    dirs = [u if isinstance(u, Direction) else make_direction(u) for u in U]
    _check_pairwise(dirs)
    return sorted(dirs, key=cmp_to_key(_angle_cmp))


def cross_ratio(u1, u2, u3, u4) -> CycNum:
    """Cross ratio of the slopes of four directions (taken in the given order)."""
    num = det(u1, u3) * det(u2, u4)
    den = det(u2, u3) * det(u1, u4)
    if den.is_zero() or num.is_zero():
        raise ParallelDirectionsError("cross ratio needs pairwise non-parallel directions")
    return num / den


@dataclass(frozen=True)
class LineKey:
    """The line through a point in a given direction, keyed by det(u, z)."""

    direction: Direction
    offset: CycNum

    def to_json(self) -> dict:
        return {"direction": self.direction.to_json(), "offset": to_json(self.offset)}


def line_key(u: Direction, z: CycNum) -> LineKey:
    return LineKey(u, det(u, z))


# -- polygons and hulls -------------------------------------------------------


def _lex_cmp(a: CycNum, b: CycNum) -> int:
    za, zb = a.approx(), b.approx()
    slack = 1e-11 * (1.0 + a.l1() + b.l1())
    if abs(za.real - zb.real) > slack:
        return 1 if za.real > zb.real else -1
    d = a - b
    s = sign_re(d)
    if s:
        return s
    return sign_im(d)


class Polygon:
    """A strictly convex polygon with counterclockwise vertices."""

    __slots__ = ("vertices",)

    def __init__(self, vertices: Sequence[CycNum], check: bool = True):
        vertices = tuple(vertices)
        if check:
            if len(vertices) < 3:
                raise ValueError("a polygon needs at least three vertices")
            k = len(vertices)
            for i in range(k):
                if orientation(vertices[i], vertices[(i + 1) % k], vertices[(i + 2) % k]) <= 0:
                    raise ValueError("polygon vertices must be strictly convex and counterclockwise")
        self.vertices = vertices

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __repr__(self):
        return f"Polygon({len(self.vertices)} vertices)"

    def __eq__(self, other):
        # same vertex cycle, possibly starting elsewhere
        if not isinstance(other, Polygon) or len(other) != len(self):
            return NotImplemented if not isinstance(other, Polygon) else False
        k = len(self.vertices)
        first = self.vertices[0]
        for s in range(k):
            if other.vertices[s] == first:
                return all(self.vertices[j] == other.vertices[(s + j) % k] for j in range(k))
        return False

    def __hash__(self):
        return hash(frozenset(self.vertices))

    def edges(self):
        k = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % k]) for i in range(k)]

    def map(self, fn) -> "Polygon":
        return Polygon([fn(v) for v in self.vertices], check=False)


@dataclass(frozen=True)
class Segment:
    """Convex hull of a collinear point set: a segment, or a point when a == b."""

    a: CycNum
    b: CycNum

    @property
    def vertices(self):
        return (self.a,) if self.a == self.b else (self.a, self.b)


def convex_hull(points: Iterable[CycNum]) -> Polygon | Segment:
    """Exact convex hull (monotone chain); collinear inputs give a Segment."""
    pts = list(dict.fromkeys(points))
    if not pts:
        raise ValueError("hull of an empty point set")
    pts.sort(key=cmp_to_key(_lex_cmp))
    if len(pts) <= 2:
        return Segment(pts[0], pts[-1])

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and orientation(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        return Segment(pts[0], pts[-1])
    return Polygon(hull, check=False)


INSIDE, BOUNDARY, OUTSIDE = "inside", "boundary", "outside"


def hull_contains(P: Polygon | Segment, z: CycNum) -> str:
    if isinstance(P, Segment):
        if P.a == P.b:
            return BOUNDARY if z == P.a else OUTSIDE
        if orientation(P.a, P.b, z) != 0:
            return OUTSIDE
        # collinear: between the endpoints iff (z-a).(z-b) <= 0
        dot = sign_re(conjugate(z - P.a) * (z - P.b))
        return OUTSIDE if dot > 0 else BOUNDARY
    on_edge = False
    for a, b in P.edges():
        s = orientation(a, b, z)
        if s < 0:
            return OUTSIDE
        if s == 0:
            on_edge = True
    return BOUNDARY if on_edge else INSIDE


def is_convex_subset(C: Iterable[CycNum], ambient: Iterable[CycNum]) -> bool:
    """True iff conv(C) contains no point of ``ambient`` outside C."""
    C = set(C)
    ambient = set(ambient)
    if not C <= ambient:
        raise ValueError("C is not contained in the ambient set")
    if not C:
        return True
    hull = convex_hull(C)
    return all(hull_contains(hull, p) == OUTSIDE for p in ambient - C)
