"""Named direction sets over Z[zeta_n].

The generic families come in three flavours for any order n; the
quasicrystallographic sets are specific to n = 5, 8, 10, 12 and give dense
lines in the corresponding model sets.
"""

from __future__ import annotations

from .cyclotomic import CycNum, coerce, zeta
from .geometry import Direction, make_direction

__all__ = ["direction_set", "PRESET_NAMES", "sqrt2", "sqrt3", "golden_ratio"]


def sqrt2() -> CycNum:
    return zeta(8, 1) + zeta(8, 7)


def sqrt3() -> CycNum:
    return zeta(12, 1) + zeta(12, 11)


def golden_ratio() -> CycNum:
    # tau = 1 + zeta_5 + zeta_5^4 = -(zeta_5^2 + zeta_5^3)
    return -(zeta(5, 2) + zeta(5, 3))


def _family(name: str, n: int) -> list[CycNum]:
    z = zeta(n)
    one = CycNum.rational(1, n)
    if name == "U":
        return [one, 1 + z, 1 + 2 * z, 1 + 5 * z]
    if name == "U'":
        return [one, 2 + z, z, -1 + 2 * z]
    if name == "U''":
        return [2 + z, 3 + 2 * z, 1 + z, 2 + 3 * z]
    raise KeyError(name)


def _special(n: int) -> list[CycNum]:
    if n == 8:
        z, r = zeta(8), sqrt2()
        return [1 + z, (r - 1) + r * z, (-1 - r) + z, -2 + (r - 1) * z]
    if n in (5, 10):
        z, t = zeta(5), golden_ratio()
        vals = [(1 + t) + z, (t - 1) + z, -t + z, 2 * t - z]
        return [coerce(v, n) for v in vals]
    if n == 12:
        z = zeta(12)
        return [CycNum.rational(1, 12), 2 + z, z, sqrt3() - z]
    raise KeyError(f"no special direction set for order {n}")


PRESET_NAMES = ("U", "U'", "U''", "special")


def direction_set(name: str, n: int) -> list[Direction]:
    """Directions for ``name`` in {"U", "U'", "U''", "special"} over order n.

    Aliases: "U5", "U8", "U10", "U12" pick the special set for that order.
    """
    key = name.strip()
    if key.upper().startswith("U") and key[1:].isdigit():
        n = int(key[1:])
        key = "special"
    if key == "special":
        vals = _special(n)
    else:
        vals = _family(key, n)
    return [make_direction(v, n) for v in vals]
