"""Sets that X-rays cannot tell apart, and a brute-force check for convex subsets.

``switching_pair`` doubles a pair of sets once per direction; the result is
moved into the model set by a homothety, which keeps X-ray equality.
``brute_force_determined`` enumerates the convex subsets of a finite patch
and looks for two with the same X-rays.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Sequence

import numpy as np

from .cyclotomic import CycNum, conjugate, sign_im, sign_of_real, sign_re, zeta
from .geometry import OUTSIDE, Direction, Polygon, convex_hull, det, hull_contains, make_direction, orientation
from .modelset import (
    ModelSetSpec,
    PointSet,
    _in_order,
    generate_patch,
    homothety_into,
)
from .xray import xray, xrays_equal

__all__ = [
    "OracleReport",
    "switching_pair",
    "contiguous_pair",
    "region_points",
    "padded_hull",
    "brute_force_determined",
]


def _dirs(U: Iterable) -> list[Direction]:
    return [u if isinstance(u, Direction) else make_direction(u) for u in U]


def _abs2(z: CycNum) -> CycNum:
    return z * conjugate(z)


def _diameter_multiple(S: list[CycNum], u: CycNum) -> int:
    """Least integer c with c|u| >= 2 diam(S) + |u|, decided on squared lengths."""
    d2 = CycNum.rational(0, u.order)
    for i, a in enumerate(S):
        for b in S[i + 1:]:
            ab = _abs2(a - b)
            if sign_of_real(ab - d2) > 0:
                d2 = ab
    u2 = _abs2(u)
    c = 1
    # (c - 1)^2 |u|^2 >= 4 d^2
    while sign_of_real(u2 * ((c - 1) ** 2) - d2 * 4) < 0:
        c += 1
    return c


def _compact_multiple(S: list[CycNum], u: CycNum) -> int:
    diffs = {a - b for a in S for b in S}
    c = 1
    while c * u in diffs:
        c += 1
    return c


def switching_pair(U: Sequence, spec: ModelSetSpec, shift: str = "compact"):
    """Disjoint F, F' in the model set with |F| = |F'| = 2^(k-1) and equal X-rays in U.

    Each new direction u gives F, F' <- F | (z + F'), F' | (z + F) with
    z = c u.  ``shift="compact"`` takes the least c >= 1 with z outside
    S - S (S = F | F'); ``shift="diameter"`` takes c|u| >= 2 diam(S) + |u|.
    """
    dirs = _dirs(U)
    if not dirs:
        raise ValueError("switching_pair needs at least one direction")
    n = spec.order
    reps = [_in_order(d.rep, n) for d in dirs]
    pick = {"compact": _compact_multiple, "diameter": _diameter_multiple}[shift]
    F: list[CycNum] = [CycNum.rational(0, n)]
    Fp: list[CycNum] = []
    for u in reps:
        S = F + Fp
        z = u * pick(S, u)
        F, Fp = F + [z + p for p in Fp], Fp + [z + p for p in F]
    h = homothety_into(F + Fp, spec)
    A, B = PointSet(n, h.apply(F)), PointSet(n, h.apply(Fp))
    if A.points & B.points or len(A) != len(B) or not xrays_equal(A, B, dirs):
        raise AssertionError("switching construction failed its own check")  # pragma: no cover
    return A, B


def region_points(region: Polygon, spec: ModelSetSpec) -> PointSet:
    """All model set points in the closed convex region."""
    verts = list(region.vertices)
    n = spec.order
    center = sum(verts[1:], verts[0]) * Fraction(1, len(verts))
    center = _in_order(center, n)
    R2 = max(abs(complex(v - center)) for v in verts)
    R = Fraction(R2).limit_denominator(1000) + Fraction(1, 100)
    patch = generate_patch(spec, R, center=center)
    return PointSet(n, (z for z in patch if hull_contains(region, z) != OUTSIDE))


def padded_hull(points: Iterable[CycNum], n: int, pad=1) -> Polygon:
    """conv(points + pad * zeta_n^j); a convenient region for contiguous pairs."""
    ring = [zeta(n, j) * pad for j in range(n)]
    return convex_hull([p + w for p in points for w in ring])


def contiguous_pair(F: Iterable[CycNum], Fp: Iterable[CycNum], region: Polygon, spec: ModelSetSpec,
                    U: Sequence | None = None):
    """(C - F, C - F') for C the model set points of ``region``.

    If F and F' share X-rays then so do the complements; with U given this is
    checked.
    """
    F, Fp = set(F), set(Fp)
    bad = [z for z in F | Fp if hull_contains(region, z) == OUTSIDE]
    if bad:
        raise ValueError(f"region misses {len(bad)} points of the pair")
    C = region_points(region, spec)
    missing = (F | Fp) - C.points
    if missing:
        raise ValueError(f"{len(missing)} points of the pair are not in the model set")
    F1, F2 = C.difference(F), C.difference(Fp)
    if U is not None and not xrays_equal(F1, F2, _dirs(U)):
        raise AssertionError("complements have different X-rays")
    return F1, F2


# -- the oracle -------------------------------------------------------------------------


@dataclass
class OracleReport:
    determined: bool
    collisions: list = field(default_factory=list)
    collision_count: int = 0
    patch_size: int = 0
    subsets_examined: int = 0
    max_vertices: int = 0
    truncated: bool = False

    def to_json(self) -> dict:
        return {
            "determined": self.determined,
            "collision_count": self.collision_count,
            "collisions": [[F.to_json(), G.to_json()] for F, G in self.collisions],
            "stats": {
                "patch_size": self.patch_size,
                "subsets_examined": self.subsets_examined,
                "max_vertices": self.max_vertices,
                "truncated": self.truncated,
            },
        }


def _orientation_table(pts: list[CycNum]) -> np.ndarray:
    """sign(orientation(a, b, c)) for all triples, floats where safe."""
    z = np.array([complex(p) for p in pts])
    ab = z[None, :] - z[:, None]
    cross = (np.conj(ab)[:, :, None] * ab[:, None, :]).imag
    scale = 1.0 + np.abs(z).max()
    tol = 1e-9 * scale * scale
    O = np.sign(cross).astype(np.int8)
    for i, j, k in zip(*np.nonzero(np.abs(cross) <= tol)):
        O[i, j, k] = orientation(pts[i], pts[j], pts[k])
    return O


def _line_labels(pts: list[CycNum], dirs: list[Direction]) -> np.ndarray:
    cols = []
    base = 0
    for u in dirs:
        ids: dict[CycNum, int] = {}
        col = []
        for p in pts:
            key = det(u, p)
            col.append(base + ids.setdefault(key, len(ids)))
        base += len(ids)
        cols.append(col)
    return np.array(cols, dtype=np.int64).T, base


def _between(z: np.ndarray, a: int, b: int, pts: list[CycNum]) -> np.ndarray:
    # for points on the line through a and b: (p - a).(p - b) <= 0
    dot = ((z - z[a]) * np.conj(z - z[b])).real
    scale = 1.0 + abs(z[a]) + abs(z[b])
    out = dot < -1e-9 * scale * scale
    for i in np.nonzero(np.abs(dot) <= 1e-9 * scale * scale)[0]:
        w = (pts[i] - pts[a]) * conjugate(pts[i] - pts[b])
        out[i] = sign_of_real(w + conjugate(w)) <= 0
    return out


_CHUNK = 1 << 16


class _Anchor:
    """Per-anchor tables: candidates above the anchor in exact angular order,
    hashed closed fan triangles and spokes."""

    def __init__(self, a: int, O: np.ndarray, G: np.ndarray, rank: np.ndarray, z, pts, wp):
        N = len(pts)
        cands = [b for b in range(N) if rank[b] > rank[a]]
        cands.sort(key=cmp_to_key(lambda b1, b2: -int(O[a, b1, b2]) or int(rank[b1] - rank[b2])))
        self.a = a
        self.c = c = np.array(cands, dtype=np.int64)
        m = len(c)
        self.m = m
        if m == 0:
            return
        self.Oc = O[np.ix_(c, c, c)]
        oa = O[a][np.ix_(c, c)]
        self.ok = np.triu(oa > 0, 1)
        # closed triangle (a, c_i, c_j): left of all three edges
        inside = G[a][c][:, None, :] & G[np.ix_(c, c)] & G[c, a][None, :, :]
        self.T = (inside.astype(np.uint64) * wp).sum(axis=2)
        spokes = np.stack([(O[a, b] == 0) & _between(z, a, b, pts) for b in c])
        self.spoke_masks = spokes
        self.S = (spokes.astype(np.uint64) * wp).sum(axis=1)

    def layers(self, max_vertices: int, keep_parents: bool):
        """Yield (k, parent, prev, cur, hash) arrays for polygons with k vertices."""
        ii, jj = np.nonzero(self.ok)
        prev, cur = ii, jj
        H = self.T[ii, jj]
        parent = np.full(len(ii), -1, dtype=np.int64)
        k = 3
        truncated = False
        while len(cur):
            yield k, (parent if keep_parents else None), prev, cur, H
            nxt_parent, nxt_prev, nxt_cur, nxt_H = [], [], [], []
            for s in range(0, len(cur), _CHUNK):
                pv, cu, h = prev[s:s + _CHUNK], cur[s:s + _CHUNK], H[s:s + _CHUNK]
                valid = self.ok[cu] & (self.Oc[pv, cu] > 0)
                si, j = np.nonzero(valid)
                if not len(si):
                    continue
                if k >= max_vertices:
                    truncated = True
                    break
                nxt_parent.append(si + s)
                nxt_prev.append(cu[si])
                nxt_cur.append(j)
                nxt_H.append(h[si] + self.T[cu[si], j] - self.S[cu[si]])
            if k >= max_vertices or not nxt_cur:
                break
            parent = np.concatenate(nxt_parent)
            prev = np.concatenate(nxt_prev)
            cur = np.concatenate(nxt_cur)
            H = np.concatenate(nxt_H)
            k += 1
        self.truncated = truncated


def brute_force_determined(patch: Iterable[CycNum], U: Sequence, max_vertices: int = 10,
                           max_reported: int = 20, seed: int = 0) -> OracleReport:
    """Enumerate every convex subset of ``patch`` with at most ``max_vertices``
    hull vertices and look for two with the same X-rays in U.

    Convex subsets are conv(S) & patch for S in strictly convex position; each
    is reached once, from the lowest vertex of S, by adding the other vertices
    in angular order.  Sets are bucketed by an additive hash of their X-rays
    (equal X-rays always share a bucket) and every bucket hit is re-checked
    exactly.  ``truncated`` is set when a polygon could have grown past the cap.
    """
    if isinstance(patch, PointSet):
        pts = patch.sorted()
    else:
        pts = sorted(set(patch), key=lambda z: (z.order, tuple(Fraction(c) for c in z.coeffs)))
    dirs = _dirs(U)
    N = len(pts)
    report = OracleReport(determined=True, patch_size=N, max_vertices=max_vertices)
    if N == 0:
        return report
    O = _orientation_table(pts)
    G = O >= 0
    labels, L = _line_labels(pts, dirs)
    rng = np.random.default_rng(seed)
    wl = rng.integers(0, 2**63, size=L, dtype=np.uint64) * np.uint64(2) + np.uint64(1)
    wp = wl[labels].sum(axis=1)
    z = np.array([complex(p) for p in pts])
    # exact (Im, Re) order: the anchor of a polygon is its lowest vertex
    low = sorted(range(N), key=cmp_to_key(lambda i, j: sign_im(pts[i] - pts[j]) or sign_re(pts[i] - pts[j])))
    rank = np.empty(N, dtype=np.int64)
    rank[low] = np.arange(N)

    anchors = [_Anchor(a, O, G, rank, z, pts, wp) for a in range(N)]
    chunks = [wp]  # singletons
    truncated = False
    for an in anchors:
        if an.m == 0:
            continue
        chunks.append(an.S)  # segments from the anchor
        for _k, _par, _pv, _cu, H in an.layers(max_vertices, keep_parents=False):
            chunks.append(H)
        truncated |= an.truncated
    allH = np.concatenate(chunks)
    report.subsets_examined = int(len(allH))
    report.truncated = truncated

    vals, counts = np.unique(allH, return_counts=True)
    dup = vals[counts > 1]
    groups: dict[int, list[frozenset]] = {}
    if len(dup):
        _collect(anchors, pts, wp, dup, max_vertices, G, groups)

    collisions = []
    count = 0
    n = max(p.order for p in pts)
    for key in sorted(groups):
        sets = list(dict.fromkeys(groups[key]))
        for i in range(len(sets)):
            xi = [xray(sets[i], u) for u in dirs]
            for j in range(i + 1, len(sets)):
                if all(xi[t] == xray(sets[j], u) for t, u in enumerate(dirs)):
                    count += 1
                    if len(collisions) < max_reported:
                        collisions.append((PointSet(n, sets[i]), PointSet(n, sets[j])))
    report.collisions = collisions
    report.collision_count = count
    report.determined = count == 0 and not truncated
    return report


def _collect(anchors, pts, wp, dup, max_vertices, G, groups):
    """Rebuild the point sets whose hash lies in ``dup``."""
    dupset = set(int(h) for h in dup)

    def add(h, idx):
        groups.setdefault(int(h), []).append(frozenset(pts[i] for i in idx))

    for i, h in enumerate(wp):
        if int(h) in dupset:
            add(h, [i])
    for an in anchors:
        if an.m == 0:
            continue
        a, c = an.a, an.c
        for i, h in enumerate(an.S):
            if int(h) in dupset:
                add(h, np.nonzero(an.spoke_masks[i])[0])
        history = []
        for k, parent, prev, cur, H in an.layers(max_vertices, keep_parents=True):
            history.append((parent, prev, cur))
            hits = np.nonzero(np.isin(H, dup))[0]
            for s in hits:
                verts = []
                level, idx = len(history) - 1, s
                while level >= 0:
                    par, pv, cu = history[level]
                    verts.append(int(c[cu[idx]]))
                    if level == 0:
                        verts.append(int(c[pv[idx]]))
                    idx = par[idx]
                    level -= 1
                verts.append(a)
                verts.reverse()
                # closed polygon = points left of (or on) every edge
                inside = np.ones(len(pts), dtype=bool)
                for t in range(len(verts)):
                    inside &= G[verts[t], verts[(t + 1) % len(verts)]]
                add(H[s], np.nonzero(inside)[0])
