"""U-polygons and the algebraic test for determination by four X-rays.

A U-polygon defeats uniqueness of convex subsets.  For four directions its
existence forces the ordered cross ratio of their slopes to be one of the
values f_m(d) below, and the p-adic valuations of such values are sums of
at most four terms 1/(p^(t-1) (p-1)).  ``check_determination`` refutes that
shape prime by prime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from sympy import factorint

from .cyclotomic import (
    CycNum,
    is_real,
    norm_over_field,
    totient,
    vp_rational,
    zeta,
)
from .geometry import (
    OUTSIDE,
    Direction,
    Polygon,
    angle_sort,
    cross_ratio,
    det,
    hull_contains,
    is_convex_subset,
    make_direction,
)
from .modelset import PointSet
from .xray import xrays_equal

__all__ = [
    "IndexTuple",
    "DeterminationVerdict",
    "DETERMINED",
    "INCONCLUSIVE",
    "f_m",
    "D_m",
    "D_prime_m",
    "is_U_polygon",
    "hexagon_for",
    "check_determination",
    "certify_cross_ratio",
    "search_cross_ratio",
    "witness_pair_from_polygon",
]

DETERMINED = "Determined"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class IndexTuple:
    m: int
    k1: int
    k2: int
    k3: int
    k4: int

    @property
    def ks(self) -> tuple[int, int, int, int]:
        return (self.k1, self.k2, self.k3, self.k4)

    def in_D_prime(self) -> bool:
        return all(1 <= k <= self.m - 1 for k in self.ks) and self.k1 + self.k2 == self.k3 + self.k4

    def in_D(self) -> bool:
        return self.in_D_prime() and self.k3 < self.k1 <= self.k2 < self.k4 <= self.m - 1

    def swapped(self) -> "IndexTuple":
        return IndexTuple(self.m, self.k3, self.k4, self.k1, self.k2)


def D_m(m: int) -> list[IndexTuple]:
    """Tuples with k3 < k1 <= k2 < k4 <= m - 1 and k1 + k2 = k3 + k4."""
    out = []
    for k1 in range(2, m - 1):
        for k2 in range(k1, m - 1):
            for k3 in range(1, k1):
                k4 = k1 + k2 - k3
                if k2 < k4 <= m - 1:
                    out.append(IndexTuple(m, k1, k2, k3, k4))
    return out


def D_prime_m(m: int) -> list[IndexTuple]:
    out = []
    for k1 in range(1, m):
        for k2 in range(1, m):
            for k3 in range(1, m):
                k4 = k1 + k2 - k3
                if 1 <= k4 <= m - 1:
                    out.append(IndexTuple(m, k1, k2, k3, k4))
    return out


@lru_cache(maxsize=None)
def _one_minus_root(m: int, k: int) -> CycNum:
    return 1 - zeta(m, k)


@lru_cache(maxsize=None)
def _inv_one_minus_root(m: int, k: int) -> CycNum:
    # for x^r = 1, x != 1: sum_j j x^j = r / (x - 1)
    r = m // math.gcd(m, k)
    acc = [0] * m
    for j in range(r):
        acc[(j * k) % m] += j
    s = CycNum(m, acc)
    return s * Fraction(-1, r)


def f_m(m, d=None) -> CycNum:
    """(1 - z^k1)(1 - z^k2) / ((1 - z^k3)(1 - z^k4)) with z = zeta_m.

    Accepts ``f_m(IndexTuple)`` or ``f_m(m, (k1, k2, k3, k4))``.
    """
    if isinstance(m, IndexTuple):
        d = m
    else:
        d = IndexTuple(m, *d)
    if not d.in_D_prime():
        raise ValueError(f"{d.ks} is not in D'_{d.m}")
    mm = d.m
    return (_one_minus_root(mm, d.k1) * _one_minus_root(mm, d.k2)
            * _inv_one_minus_root(mm, d.k3) * _inv_one_minus_root(mm, d.k4))


# -- U-polygons -------------------------------------------------------------------


def _dirs(U: Iterable) -> list[Direction]:
    return [u if isinstance(u, Direction) else make_direction(u) for u in U]


def is_U_polygon(P: Polygon, U: Iterable) -> bool:
    """Every line in a direction of U through a vertex meets another vertex."""
    verts = list(P.vertices)
    for u in _dirs(U):
        keys = [det(u, v) for v in verts]
        counts: dict[CycNum, int] = {}
        for k in keys:
            counts[k] = counts.get(k, 0) + 1
        if any(c < 2 for c in counts.values()):
            return False
    return True


def hexagon_for(U: Sequence, order: int | None = None) -> Polygon:
    """An affinely regular hexagon whose sides are parallel to three directions.

    Sorted by angle as a, b, c, the hexagon walks from the origin by
    a, mu*b, nu*c, -a, -mu*b, -nu*c where mu*b = a + nu*c.
    """
    dirs = _dirs(U)
    if len(dirs) != 3:
        raise ValueError("hexagon_for needs exactly three directions")
    if order is not None:
        dirs = [make_direction(d.rep, order) for d in dirs]
    a, b, c = angle_sort(dirs)
    dbc = det(b, c)
    mu = det(a, c) / dbc
    nu = det(a, b) / dbc
    steps = [a.rep, b.rep * mu, c.rep * nu]
    steps += [-s for s in steps]
    n = max(d.order for d in dirs)
    v = CycNum.rational(0, n)
    verts = []
    for s in steps:
        verts.append(v)
        v = v + s
    P = Polygon(verts)
    if not is_U_polygon(P, dirs):
        raise AssertionError("hexagon construction failed the U-polygon check")  # pragma: no cover
    return P


# -- the determination test ------------------------------------------------------------


@dataclass
class DeterminationVerdict:
    status: str
    cross_ratio: CycNum
    norm: Fraction
    field_degree: int
    directions: list[Direction]
    primes: dict = field(default_factory=dict)
    branches: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        from .cyclotomic import to_json

        return {
            "status": self.status,
            "directions": [d.to_json() for d in self.directions],
            "cross_ratio": to_json(self.cross_ratio),
            "cross_ratio_approx": self.cross_ratio.approx().real,
            "norm": str(self.norm),
            "field_degree": self.field_degree,
            "primes": {str(p): info for p, info in self.primes.items()},
            "branches": {str(e): ok for e, ok in self.branches.items()},
        }


def _prime_factors(n: int) -> list[int]:
    return sorted(factorint(abs(n))) if abs(n) > 1 else []


def _t_max(p: int, e: int, v: Fraction) -> int:
    bound = 4 * e * v.denominator
    t = 1
    while p ** (t + 1 - 4) <= bound:
        t += 1
    return t


def _decompose(p: int, v: Fraction, e: int):
    """Write |v| as (1-2 terms) - (0-2 terms), terms 1/(p^(t-1)(p-1)).

    Returns (positive t's, negative t's) or None.  For v < 0 the roles of
    the two sides swap.
    """
    target = abs(v)
    T = _t_max(p, e, v)
    terms = {t: Fraction(1, p ** (t - 1) * (p - 1)) for t in range(1, T + 1)}
    pos: dict[Fraction, tuple] = {}
    for t1 in terms:
        pos.setdefault(terms[t1], (t1,))
        for t2 in terms:
            if t2 >= t1:
                pos.setdefault(terms[t1] + terms[t2], (t1, t2))
    negs: list[tuple[Fraction, tuple]] = [(Fraction(0), ())]
    for t1 in terms:
        negs.append((terms[t1], (t1,)))
        for t2 in terms:
            if t2 >= t1:
                negs.append((terms[t1] + terms[t2], (t1, t2)))
    for nv, nt in negs:
        hit = pos.get(target + nv)
        if hit is not None:
            return (hit, nt) if v > 0 else (nt, hit), T
    return None, T


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def certify_cross_ratio(q: CycNum, n: int, directions: Sequence[Direction] = ()) -> DeterminationVerdict:
    """Norm and valuation test for a real cross ratio q in Q(zeta_n + 1/zeta_n).

    Each divisor e of f = [k : Q] is a candidate degree of q.  A branch
    survives when every prime of the norm admits a valuation decomposition;
    ``Determined`` means no branch survived.
    """
    f = totient(n) // 2 if n > 2 else 1
    N = norm_over_field(q, f)
    primes: dict[int, dict] = {}
    branches: dict[int, bool] = {}
    dirs = list(directions)
    if abs(N) == 1:
        return DeterminationVerdict(INCONCLUSIVE, q, N, f, dirs, primes,
                                    {e: True for e in _divisors(f)})
    plist = sorted(set(_prime_factors(N.numerator)) | set(_prime_factors(N.denominator)))
    for p in plist:
        primes[p] = {"v_p(norm)": vp_rational(p, N),
                     "v_p(q)": str(Fraction(vp_rational(p, N), f)), "branches": {}}
    for e in _divisors(f):
        survives = True
        for p in plist:
            v = Fraction(vp_rational(p, N), f)
            info = primes[p]["branches"]
            if (e * v).denominator != 1:
                info[str(e)] = {"refuted": "e * v_p(q) is not an integer"}
                survives = False
                continue
            found, T = _decompose(p, v, e)
            if found is None:
                info[str(e)] = {"refuted": "no decomposition", "t_max": T}
                survives = False
            else:
                info[str(e)] = {"decomposition": {"plus": list(found[0]), "minus": list(found[1])},
                                "t_max": T}
        branches[e] = survives
    status = INCONCLUSIVE if any(branches.values()) else DETERMINED
    return DeterminationVerdict(status, q, N, f, dirs, primes, branches)


def check_determination(U: Sequence, n: int) -> DeterminationVerdict:
    """Decide whether four Z[zeta_n]-directions certainly determine convex subsets.

    ``Determined`` is a proof: the cross ratio cannot be a U-polygon value.
    ``Inconclusive`` asserts nothing.
    """
    dirs = _dirs(U)
    if len(dirs) != 4:
        raise ValueError("check_determination needs exactly four directions")
    dirs = [make_direction(d.rep, n) if d.order != n else d for d in dirs]
    ordered = angle_sort(dirs)
    return certify_cross_ratio(cross_ratio(*ordered), n, ordered)


# -- exhaustive cross-ratio search --------------------------------------------------------


def _dm_arrays(m: int):
    ds = D_m(m)
    if not ds:
        return ds, None
    ks = np.array([d.ks for d in ds], dtype=float)
    w = 1 - np.exp(2j * np.pi * ks / m)
    vals = (w[:, 0] * w[:, 1]) / (w[:, 2] * w[:, 3])
    return ds, vals


def search_cross_ratio(q: CycNum, m_max: int, m_min: int = 4):
    """First (m, IndexTuple) with f_m(d) = q over 4 <= m <= m_max, or None.

    Float values screen the candidates; every reported hit is confirmed exactly.
    """
    if not is_real(q):
        raise ValueError("cross ratios are real")
    qf = q.approx().real
    tol = 1e-9 * (1 + abs(qf))
    for m in range(max(4, m_min), m_max + 1):
        ds, vals = _dm_arrays(m)
        if vals is None:
            continue
        for idx in np.nonzero(np.abs(vals - qf) <= tol)[0]:
            d = ds[idx]
            if f_m(d) == q:  # compared in Q(zeta_lcm)
                return m, d
    return None


# -- witnesses from U-polygons -----------------------------------------------------------


def witness_pair_from_polygon(P: Polygon, U: Iterable, ambient: Iterable[CycNum]):
    """Two convex subsets with equal X-rays built from a U-polygon in the ambient set."""
    U = _dirs(U)
    if not is_U_polygon(P, U):
        raise ValueError("the polygon is not a U-polygon for these directions")
    amb = ambient if isinstance(ambient, PointSet) else PointSet(max(z.order for z in ambient), ambient)
    verts = list(P.vertices)
    missing = [v for v in verts if v not in amb.points]
    if missing:
        raise ValueError(f"{len(missing)} polygon vertices are not in the ambient set")
    V = set(verts[0::2])
    Vp = set(verts[1::2])
    C = {z for z in amb.points if hull_contains(P, z) != OUTSIDE} - V - Vp
    F = PointSet(amb.order, C | V)
    Fp = PointSet(amb.order, C | Vp)
    if not (is_convex_subset(F.points, amb.points) and is_convex_subset(Fp.points, amb.points)):
        raise AssertionError("witness sets are not convex subsets")  # pragma: no cover
    if not xrays_equal(F, Fp, U):
        raise AssertionError("witness sets have different X-rays")  # pragma: no cover
    return F, Fp
