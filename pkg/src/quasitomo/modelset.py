"""Cyclotomic model sets Lambda(W) + t built by cut and project.

Supported orders are those with phi(n) in {2, 4}: the lattices Z[zeta_n] for
n in {3, 4, 6} (trivial window) and the planar-internal-space cases
n in {5, 8, 10, 12}.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import mpmath
import numpy as np

from .cyclotomic import (
    CycNum,
    GaloisElement,
    coerce,
    conjugate,
    from_json,
    galois_apply,
    norm_to_Q,
    sign_of_real,
    to_json,
    totient,
    units_mod,
    zeta,
)
from .geometry import BOUNDARY, INSIDE, OUTSIDE, Polygon, hull_contains

__all__ = [
    "SUPPORTED_ORDERS",
    "UnsupportedOrderError",
    "ModelSetSpec",
    "PointSet",
    "PVNumber",
    "Homothety",
    "ammann_beenker",
    "lattice_spec",
    "regular_window_spec",
    "default_spec",
    "star",
    "window_locate",
    "window_contains",
    "contains",
    "generate_patch",
    "find_pv_number",
    "homothety_into",
    "spec_to_json",
    "spec_from_json",
]

SUPPORTED_ORDERS = (3, 4, 5, 6, 8, 10, 12)


class UnsupportedOrderError(ValueError):
    pass


def _check_order(n: int) -> None:
    if n not in SUPPORTED_ORDERS:
        raise UnsupportedOrderError(f"unsupported order {n}; expected one of {SUPPORTED_ORDERS}")


@dataclass(frozen=True)
class ModelSetSpec:
    order: int
    star_residue: int = 1
    window: Polygon | None = None
    translation: CycNum = field(default_factory=lambda: CycNum.rational(0))

    def __post_init__(self):
        n = self.order
        _check_order(n)
        if totient(n) == 4:
            a = self.star_residue % n
            if math.gcd(a, n) != 1 or a in (1, n - 1):
                raise ValueError(f"star residue {self.star_residue} must be a unit mod {n} other than +-1")
            if self.window is None:
                raise ValueError(f"order {n} needs a window polygon")
        elif self.window is not None:
            raise ValueError(f"order {n} has a trivial internal space; no window allowed")

    @property
    def internal(self) -> bool:
        return totient(self.order) == 4


class PointSet:
    """A finite set of points of Q(zeta_n), iterated in a deterministic order.

    ``boundary`` lists members whose star image lies on the window boundary.
    """

    __slots__ = ("order", "points", "boundary")

    def __init__(self, order: int, points: Iterable[CycNum] = (), boundary: Iterable[CycNum] = ()):
        self.order = order
        self.points = frozenset(points)
        self.boundary = frozenset(boundary)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.sorted())

    def __contains__(self, z):
        return z in self.points

    def __eq__(self, other):
        if isinstance(other, PointSet):
            return self.points == other.points
        if isinstance(other, (set, frozenset)):
            return self.points == other
        return NotImplemented

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"PointSet(n={self.order}, {len(self.points)} points)"

    def _key(self, z: CycNum):
        if z.order != self.order and self.order % z.order == 0:
            z = coerce(z, self.order)
        return (z.order, tuple(Fraction(c) for c in z.coeffs))

    def sorted(self) -> list[CycNum]:
        return sorted(self.points, key=self._key)

    def union(self, other: Iterable[CycNum]) -> "PointSet":
        return PointSet(self.order, self.points | frozenset(other))

    def difference(self, other: Iterable[CycNum]) -> "PointSet":
        return PointSet(self.order, self.points - frozenset(other))

    def map(self, fn) -> "PointSet":
        return PointSet(self.order, (fn(z) for z in self.points))

    def to_json(self) -> dict:
        out = {"n": self.order, "points": [to_json(_in_order(z, self.order)) for z in self.sorted()]}
        if self.boundary:
            out["boundary"] = [to_json(_in_order(z, self.order)) for z in sorted(self.boundary, key=self._key)]
        return out

    @classmethod
    def from_json(cls, obj) -> "PointSet":
        pts = [from_json(p) for p in obj["points"]]
        bd = [from_json(p) for p in obj.get("boundary", [])]
        return cls(int(obj["n"]), pts, bd)


def _in_order(z: CycNum, n: int) -> CycNum:
    if z.order == n:
        return z
    if n % z.order == 0:
        return coerce(z, n)
    return z


# -- presets -------------------------------------------------------------------


def ammann_beenker(translation: CycNum | None = None) -> ModelSetSpec:
    """The eightfold model set with the regular octagon window of unit edge."""
    z8 = zeta(8)
    sqrt2 = z8 + conjugate(z8)
    # vertex at angle pi/8: inradius (1 + sqrt2)/2 divided by cos(pi/8)
    v0 = (1 + sqrt2) / (1 + conjugate(z8))
    verts = [v0 * zeta(8, j) for j in range(8)]
    t = translation if translation is not None else CycNum.rational(0, 8)
    return ModelSetSpec(8, 3, Polygon(verts), t)


def lattice_spec(n: int, translation: CycNum | None = None) -> ModelSetSpec:
    if totient(n) != 2:
        raise UnsupportedOrderError(f"order {n} is not a lattice order")
    t = translation if translation is not None else CycNum.rational(0, n)
    return ModelSetSpec(n, 1, None, t)


def _default_residue(n: int) -> int:
    return next(a for a in units_mod(n) if a not in (1, n - 1))


def regular_window_spec(n: int, radius=1, star_residue: int | None = None,
                        translation: CycNum | None = None) -> ModelSetSpec:
    """Order-n model set whose window is a regular polygon with vertices radius * zeta_m^j.

    m = n for even n, 2n for odd n, so the window has the rotational symmetry
    of the underlying module.
    """
    _check_order(n)
    if totient(n) != 4:
        raise UnsupportedOrderError(f"order {n} has no internal space")
    m = n if n % 2 == 0 else 2 * n
    verts = [coerce(zeta(m, j), m) * Fraction(radius) for j in range(m)]
    a = star_residue if star_residue is not None else _default_residue(n)
    t = translation if translation is not None else CycNum.rational(0, n)
    return ModelSetSpec(n, a, Polygon(verts), t)


def default_spec(n: int) -> ModelSetSpec:
    _check_order(n)
    if totient(n) == 2:
        return lattice_spec(n)
    if n == 8:
        return ammann_beenker()
    return regular_window_spec(n)


# -- star map and membership ----------------------------------------------------


def star(z: CycNum, spec: ModelSetSpec) -> CycNum:
    n = spec.order
    if not spec.internal:
        return CycNum.rational(0, n)
    if z.order != n:
        if n % z.order:
            raise ValueError(f"point of order {z.order} is not in Q(zeta_{n})")
        z = coerce(z, n)
    return galois_apply(GaloisElement(n, spec.star_residue), z)


def window_locate(spec: ModelSetSpec, w: CycNum) -> str:
    """'inside', 'boundary' or 'outside' for an internal-space point."""
    if spec.window is None:
        return INSIDE if w.is_zero() else OUTSIDE
    return hull_contains(spec.window, w)


def window_contains(spec: ModelSetSpec, w: CycNum) -> bool:
    """Closed-window membership; use window_locate to see boundary hits."""
    return window_locate(spec, w) != OUTSIDE


def _reduce_to_module(p: CycNum, spec: ModelSetSpec) -> CycNum | None:
    z = p - spec.translation
    z = _in_order(z, spec.order)
    if z.order != spec.order or not z.is_integral():
        return None
    return z


def contains(spec: ModelSetSpec, p: CycNum, strict: bool = False) -> bool:
    """Membership of p in Lambda(W) + t (strict: star image in the open window)."""
    z = _reduce_to_module(p, spec)
    if z is None:
        return False
    if not spec.internal:
        return True
    loc = window_locate(spec, star(z, spec))
    return loc == INSIDE if strict else loc != OUTSIDE


# -- patch enumeration ------------------------------------------------------------


def _embedding_rows(n: int, a: int, internal: bool):
    phi = totient(n)
    rows = []
    with mpmath.workprec(120):
        two_pi = 2 * mpmath.pi
        rows.append([mpmath.cos(two_pi * j / n) for j in range(phi)])
        rows.append([mpmath.sin(two_pi * j / n) for j in range(phi)])
        if internal:
            rows.append([mpmath.cos(two_pi * a * j / n) for j in range(phi)])
            rows.append([mpmath.sin(two_pi * a * j / n) for j in range(phi)])
        minv = mpmath.inverse(mpmath.matrix(rows))
        fwd = np.array([[float(x) for x in r] for r in rows])
        inv = np.array([[float(minv[i, j]) for j in range(phi)] for i in range(phi)])
    return fwd, inv


def _window_box(spec: ModelSetSpec):
    ws = [v.approx() for v in spec.window.vertices]
    lo = np.array([min(w.real for w in ws), min(w.imag for w in ws)])
    hi = np.array([max(w.real for w in ws), max(w.imag for w in ws)])
    return (lo + hi) / 2, (hi - lo) / 2


def _coefficient_box(spec: ModelSetSpec, center: complex, R: float):
    n = spec.order
    fwd, inv = _embedding_rows(n, spec.star_residue, spec.internal)
    mid = [center.real, center.imag]
    half = [R, R]
    if spec.internal:
        wmid, whalf = _window_box(spec)
        mid += list(wmid)
        half += list(whalf)
    cmid = inv @ np.array(mid)
    crad = np.abs(inv) @ np.array(half)
    # 1% inflation plus an absolute margin covers the float error of inv
    crad = crad * 1.01 + 1e-6
    return fwd, [(math.floor(c - r), math.ceil(c + r)) for c, r in zip(cmid, crad)]


def _candidates(spec: ModelSetSpec, fwd: np.ndarray, box):
    """Integer coefficient arrays (phi x k), one chunk per value of c0.

    Without a window the whole box is scanned.  With a window the last two
    coefficients are solved from the internal coordinates: for fixed c0, c1
    they range over a parallelogram of bounded size, so the work grows like
    R^2 rather than R^4.
    """
    ranges = [np.arange(lo, hi + 1) for lo, hi in box]
    if not spec.internal:
        grids = np.meshgrid(*ranges[1:], indexing="ij")
        rest = np.stack([g.ravel() for g in grids], axis=0)
        for c0v in ranges[0]:
            yield np.vstack([np.full(rest.shape[1], c0v), rest])
        return
    inner = fwd[2:]
    solve = np.linalg.inv(inner[:, 2:])
    wmid, whalf = _window_box(spec)
    r23 = np.abs(solve) @ whalf * 1.01 + 1e-6
    K = [int(math.ceil(2 * r)) + 2 for r in r23]
    off2, off3 = np.meshgrid(np.arange(K[0]), np.arange(K[1]), indexing="ij")
    off2, off3 = off2.ravel(), off3.ravel()
    c1 = ranges[1]
    for c0v in ranges[0]:
        base = inner[:, :2] @ np.vstack([np.full(len(c1), float(c0v)), c1.astype(float)])
        mid23 = solve @ (wmid[:, None] - base)
        lo = np.floor(mid23 - r23[:, None]).astype(np.int64)
        c2 = (lo[0][:, None] + off2[None, :]).ravel()
        c3 = (lo[1][:, None] + off3[None, :]).ravel()
        cc1 = np.repeat(c1, len(off2))
        yield np.vstack([np.full(len(cc1), c0v), cc1, c2, c3])


def _exact_radius_ok(z: CycNum, center: CycNum, R2: Fraction) -> bool:
    d = z - center
    return sign_of_real(d * conjugate(d) - R2) <= 0


def generate_patch(spec: ModelSetSpec, R, center: CycNum | None = None) -> PointSet:
    """All points p of Lambda(W) + t with |p - center| <= R (center defaults to 0).

    Candidates come from a coefficient box bounded through the inverse
    Minkowski embedding; a float filter decides clear cases and every
    candidate near the disc or window boundary is settled exactly.
    """
    n = spec.order
    R = Fraction(R)
    if R <= 0:
        raise ValueError("radius must be positive")
    if center is None:
        center = CycNum.rational(0, n)
    shifted = center - spec.translation  # enumerate z in Z[zeta_n] around this
    c0 = shifted.approx()
    Rf = float(R)
    R2 = R * R
    fwd, box = _coefficient_box(spec, c0, Rf)
    tol = 1e-8 * (1.0 + Rf + abs(c0))

    if spec.internal:
        wverts = [v.approx() for v in spec.window.vertices]
        edges = [(wverts[i], wverts[(i + 1) % len(wverts)]) for i in range(len(wverts))]

    found = []
    boundary = []
    for cand in _candidates(spec, fwd, box):
        coords = fwd @ cand.astype(float)
        dx = coords[0] - c0.real
        dy = coords[1] - c0.imag
        r2 = dx * dx + dy * dy
        keep = r2 <= Rf * Rf + tol
        unsure = np.abs(r2 - Rf * Rf) <= tol
        if spec.internal:
            wx, wy = coords[2], coords[3]
            for (ax, ay), (bx, by) in ((( e[0].real, e[0].imag), (e[1].real, e[1].imag)) for e in edges):
                cr = (bx - ax) * (wy - ay) - (by - ay) * (wx - ax)
                keep &= cr >= -tol
                unsure |= np.abs(cr) <= tol
        for idx in np.nonzero(keep)[0]:
            z = CycNum._raw(n, tuple(int(v) for v in cand[:, idx]))
            if unsure[idx]:
                if not _exact_radius_ok(z, shifted, R2):
                    continue
                if spec.internal:
                    loc = window_locate(spec, star(z, spec))
                    if loc == OUTSIDE:
                        continue
                    if loc == BOUNDARY:
                        boundary.append(z + spec.translation)
            found.append(z + spec.translation)
    return PointSet(n, found, boundary)


# -- PV numbers ---------------------------------------------------------------------


@dataclass(frozen=True)
class PVNumber:
    value: CycNum
    conjugate: CycNum
    conjugate_moduli_bound: Fraction


def _nontrivial_real_automorphism(n: int) -> GaloisElement:
    return GaloisElement(n, _default_residue(n))


def find_pv_number(n: int) -> PVNumber:
    """The first PV unit a + b (zeta_n + conj zeta_n), ordered by max(|a|,|b|) then (a, b)."""
    if n not in (5, 8, 10, 12):
        raise UnsupportedOrderError(f"PV search is for n in (5, 8, 10, 12), got {n}")
    theta = zeta(n) + conjugate(zeta(n))
    sigma = _nontrivial_real_automorphism(n)
    cap = 1
    while True:
        cands = [(a, b) for a in range(-cap, cap + 1) for b in range(-cap, cap + 1)
                 if max(abs(a), abs(b)) == cap]
        for a, b in cands:
            if b == 0:
                continue
            lam = theta * b + a
            if sign_of_real(lam - 1) <= 0:
                continue
            if abs(norm_to_Q(lam)) != 1:
                continue
            conj = galois_apply(sigma, lam)
            if sign_of_real(1 - conj) <= 0 or sign_of_real(1 + conj) <= 0:
                continue
            bound = Fraction(math.ceil(abs(conj.approx().real) * 10**6) + 1, 10**6)
            if bound >= 1 or sign_of_real(bound - conj) <= 0 or sign_of_real(bound + conj) <= 0:
                bound = Fraction(1)  # pragma: no cover - unreachable for the supported orders
            return PVNumber(lam, conj, bound)
        cap += 1


# -- homothety embedding ---------------------------------------------------------------


@dataclass(frozen=True)
class Homothety:
    """z -> scale * z + shift with a positive real scale."""

    scale: CycNum
    shift: CycNum
    l: int = 1
    k: int = 0

    def __call__(self, z: CycNum) -> CycNum:
        return self.scale * z + self.shift

    def apply(self, points: Iterable[CycNum]) -> list[CycNum]:
        return [self(z) for z in points]


def _find_interior_anchor(spec: ModelSetSpec) -> CycNum:
    n = spec.order
    zero = CycNum.rational(0, n)
    if window_locate(spec, zero) == INSIDE:
        return zero
    phi = totient(n)
    cap = 1
    while True:
        for coeffs in itertools.product(range(-cap, cap + 1), repeat=phi):
            if max(abs(c) for c in coeffs) != cap:
                continue
            z = CycNum(n, coeffs)
            if window_locate(spec, star(z, spec)) == INSIDE:
                return z
        cap += 1


def homothety_into(F: Iterable[CycNum], spec: ModelSetSpec) -> Homothety:
    """A homothety h with h(F) inside Lambda(W) + t, star images in the open window."""
    n = spec.order
    F = [_in_order(CycNum.rational(z) if not isinstance(z, CycNum) else z, n) for z in F]
    if not F:
        raise ValueError("F must be nonempty")
    for z in F:
        if z.order != n:
            raise ValueError(f"point {z} is not in Q(zeta_{n})")
    one = CycNum.rational(1, n)
    if all(contains(spec, z, strict=True) for z in F):
        return Homothety(one, CycNum.rational(0, n), 1, 0)
    l = 1
    for z in F:
        l = math.lcm(l, z.denominator())
    lF = [z * l for z in F]
    if not spec.internal:
        h = Homothety(one * l, spec.translation, l, 0)
    else:
        z0 = _find_interior_anchor(spec)
        z0s = star(z0, spec)
        lam = find_pv_number(n).value
        scale = one * l
        k = 0
        stars = [star(z, spec) for z in lF]
        lam_s = star(lam, spec)
        while not all(window_locate(spec, s + z0s) == INSIDE for s in stars):
            stars = [s * lam_s for s in stars]
            scale = scale * lam
            k += 1
        h = Homothety(scale, z0 + spec.translation, l, k)
    for z in F:
        if not contains(spec, h(z), strict=spec.internal):
            raise AssertionError("homothety image failed membership re-check")  # pragma: no cover
    return h


# -- JSON ------------------------------------------------------------------------------


def spec_to_json(spec: ModelSetSpec) -> dict:
    out = {"n": spec.order, "star_residue": spec.star_residue,
           "translation": to_json(_in_order(spec.translation, spec.order))}
    if spec.window is None:
        out["window"] = {"preset": "trivial"}
    else:
        out["window"] = {"preset": "polygon", "vertices": [to_json(v) for v in spec.window.vertices]}
    return out


def _vertex_from_json(v) -> CycNum:
    if isinstance(v, dict):
        return from_json(v)
    x, y = (Fraction(c) for c in v)
    return CycNum.rational(x, 4) + zeta(4) * y


def spec_from_json(obj) -> ModelSetSpec:
    n = int(obj["n"])
    _check_order(n)
    t = from_json(obj["translation"]) if "translation" in obj else CycNum.rational(0, n)
    win = obj.get("window", {})
    preset = win.get("preset", "trivial" if totient(n) == 2 else "polygon")
    if preset == "ammann-beenker":
        if n != 8:
            raise ValueError("the ammann-beenker window needs n = 8")
        return ammann_beenker(t)
    if preset == "trivial":
        return lattice_spec(n, t)
    if preset == "regular":
        return regular_window_spec(n, Fraction(win.get("radius", 1)), obj.get("star_residue"), t)
    if preset != "polygon":
        raise ValueError(f"unknown window preset {preset!r}")
    verts = [_vertex_from_json(v) for v in win["vertices"]]
    return ModelSetSpec(n, int(obj.get("star_residue", _default_residue(n))), Polygon(verts), t)
