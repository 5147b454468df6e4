"""Discrete parallel X-rays of finite point sets, grids, and small-set recovery."""

from __future__ import annotations

import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .cyclotomic import CycNum, from_json, to_json
from .geometry import Direction, ParallelDirectionsError, det, make_direction
from .modelset import PointSet

__all__ = [
    "XRayTable",
    "InconsistentXRaysError",
    "xray",
    "xrays_equal",
    "grid",
    "grid_from_tables",
    "recover_small",
]


class InconsistentXRaysError(ValueError):
    """Raised when X-ray tables cannot be realized by a set of the stated size."""


def _offset_key(z: CycNum):
    m = z.minimal()
    return (m.order, tuple(Fraction(c) for c in m.coeffs))


@dataclass(frozen=True)
class XRayTable:
    """Line counts of a finite set in one direction; empty lines are omitted."""

    direction: Direction
    rows: Mapping[CycNum, int]

    @property
    def mass(self) -> int:
        return sum(self.rows.values())

    def __eq__(self, other):
        if not isinstance(other, XRayTable):
            return NotImplemented
        return self.direction == other.direction and dict(self.rows) == dict(other.rows)

    def __hash__(self):
        return hash((self.direction, frozenset(self.rows.items())))

    def sorted_rows(self) -> list[tuple[CycNum, int]]:
        return sorted(self.rows.items(), key=lambda kv: _offset_key(kv[0]))

    def signature(self) -> str:
        body = [[to_json(k), v] for k, v in self.sorted_rows()]
        return json.dumps({"direction": self.direction.to_json(), "rows": body}, sort_keys=True,
                          separators=(",", ":"))

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("# direction " + json.dumps(self.direction.to_json(), separators=(",", ":")) + "\n")
        buf.write("offset_json;count\n")
        for k, v in self.sorted_rows():
            buf.write(json.dumps(to_json(k), separators=(",", ":")) + f";{v}\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "XRayTable":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines[0].startswith("# direction "):
            raise ValueError("missing direction header")
        direction = Direction.from_json(json.loads(lines[0][len("# direction "):]))
        rows = {}
        for ln in lines[1:]:
            if ln.startswith("offset_json"):
                continue
            off, cnt = ln.rsplit(";", 1)
            rows[from_json(json.loads(off))] = int(cnt)
        return cls(direction, rows)


def _as_direction(u) -> Direction:
    return u if isinstance(u, Direction) else make_direction(u)


def xray(F: Iterable[CycNum], u) -> XRayTable:
    u = _as_direction(u)
    rows: dict[CycNum, int] = {}
    for z in F:
        key = det(u, z)
        rows[key] = rows.get(key, 0) + 1
    return XRayTable(u, rows)


def xrays_equal(F: Iterable[CycNum], G: Iterable[CycNum], U: Iterable) -> bool:
    F, G = list(F), list(G)
    return all(xray(F, u) == xray(G, u) for u in U)


def grid_from_tables(tables: Sequence[XRayTable]) -> PointSet:
    """Points lying on a supporting line of every table."""
    if len(tables) < 2:
        raise ValueError("a grid needs at least two directions")
    dirs = [t.direction for t in tables]
    for i in range(len(dirs)):
        for j in range(i + 1, len(dirs)):
            if det(dirs[i], dirs[j]).is_zero():
                raise ParallelDirectionsError(f"{dirs[i]} and {dirs[j]} are parallel")
    u1, u2 = dirs[0], dirs[1]
    # det(u1, z) = o1 and det(u2, z) = o2 give z = (u2 o1 - u1 o2) / det(u1, u2)
    inv = det(u1, u2).inverse()
    out = []
    for o1 in tables[0].rows:
        for o2 in tables[1].rows:
            z = (u2.rep * o1 - u1.rep * o2) * inv
            if all(det(t.direction, z) in t.rows for t in tables[2:]):
                out.append(z)
    n = max(d.order for d in dirs)
    return PointSet(n, out)


def grid(F: Iterable[CycNum], U: Sequence) -> PointSet:
    F = list(F)
    return grid_from_tables([xray(F, u) for u in U])


def recover_small(tables: Sequence[XRayTable], k: int) -> PointSet:
    """Recover F with |F| <= k from X-rays in k + 1 pairwise non-parallel directions.

    Every set with these X-rays lies in the grid, so the answer is returned
    only when the grid itself reproduces the tables; otherwise the tables are
    ambiguous (too few directions) or inconsistent.
    """
    masses = {t.mass for t in tables}
    if len(masses) != 1:
        raise InconsistentXRaysError(f"tables disagree on the total mass: {sorted(masses)}")
    mass = masses.pop()
    if mass > k:
        raise InconsistentXRaysError(f"mass {mass} exceeds the recoverable size {k}")
    G = grid_from_tables(tables)
    pts = list(G)
    if len(pts) != mass or any(xray(pts, t.direction) != t for t in tables):
        raise InconsistentXRaysError(
            f"grid has {len(pts)} points for mass {mass}; the tables do not determine a set"
        )
    return G
