import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quasitomo.cyclotomic import CycNum, conjugate, zeta
from quasitomo.geometry import (
    BOUNDARY,
    INSIDE,
    OUTSIDE,
    Direction,
    ParallelDirectionsError,
    Polygon,
    Segment,
    angle_sort,
    convex_hull,
    cross_ratio,
    cross_sign,
    det,
    hull_contains,
    is_convex_subset,
    line_key,
    make_direction,
    orientation,
    parallel,
)

i = zeta(4)


def g(x, y):
    return CycNum(4, [x, y])


ints = st.integers(-6, 6)
gauss = st.builds(g, ints, ints)
ab_points = st.lists(st.integers(-3, 3), min_size=4, max_size=4).map(lambda c: CycNum(8, c))


def test_det_is_twice_imaginary_cross():
    # det(u, w) = conj(u) w - u conj(w) = 2i (u_x w_y - u_y w_x)
    assert det(1, i) == 2 * i
    assert det(i, 1) == -2 * i
    assert cross_sign(1, i) == 1


@given(gauss, gauss, gauss)
def test_orientation_matches_integer_cross(a, b, c):
    ax, ay = a.coeffs
    bx, by = b.coeffs
    cx, cy = c.coeffs
    cr = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    assert orientation(a, b, c) == (cr > 0) - (cr < 0)


def test_make_direction_normalizes():
    d = make_direction(g(-2, -4))
    assert d.rep == g(1, 2)
    assert make_direction(g(-3, 0)).rep == 1
    assert make_direction(CycNum(4, [Fraction(1, 2), Fraction(1, 3)])).rep == g(3, 2)
    with pytest.raises(ValueError):
        make_direction(0)


def test_direction_json():
    d = make_direction(zeta(8) + 1)
    assert Direction.from_json(d.to_json()) == d


def test_angle_sort_and_parallel_error():
    U = angle_sort([g(-1, 1), g(1, 0), g(0, 1), g(1, 1)])
    assert [u.rep for u in U] == [g(1, 0), g(1, 1), g(0, 1), g(-1, 1)]
    assert parallel(g(1, 1), g(-2, -2))
    with pytest.raises(ParallelDirectionsError):
        angle_sort([g(1, 1), g(2, 2)])


def test_cross_ratio_of_lattice_slopes():
    U = angle_sort([g(1, 0), g(1, 1), g(0, 1), g(-1, 1)])
    assert cross_ratio(*U) == 2


def test_cross_ratio_is_projective():
    # invariant under a common linear map z -> a z (rotation/scaling)
    U = [g(1, 0), g(1, 1), g(0, 1), g(-1, 2)]
    a = 1 + zeta(8)
    assert cross_ratio(*U) == cross_ratio(*[a * u for u in U])


def test_line_key_constant_along_line():
    u = make_direction(g(1, 2))
    z = g(3, -1)
    assert line_key(u, z) == line_key(u, z + 5 * u.rep)
    assert line_key(u, z) != line_key(u, z + 1)


def test_polygon_validation():
    with pytest.raises(ValueError):
        Polygon([0, 1])
    with pytest.raises(ValueError):
        Polygon([CycNum.rational(0, 4), g(0, 1), g(1, 0)])  # clockwise


def brute_hull_vertices(pts):
    """Points not in the closed hull of the others and not between two others."""
    out = set()
    for p in pts:
        others = [q for q in pts if q != p]
        inside = False
        for a, b, c in itertools.combinations(others, 3):
            o = [orientation(a, b, p), orientation(b, c, p), orientation(c, a, p)]
            if all(s >= 0 for s in o) or all(s <= 0 for s in o):
                if orientation(a, b, c) != 0:
                    inside = True
                    break
        if not inside:
            for a, b in itertools.combinations(others, 2):
                if orientation(a, b, p) == 0 and (conjugate(p - a) * (p - b)).coeffs[0] <= 0:
                    inside = True
                    break
        if not inside:
            out.add(p)
    return out


@given(st.lists(gauss, min_size=3, max_size=9, unique=True))
def test_hull_against_brute_force(pts):
    H = convex_hull(pts)
    if isinstance(H, Segment):
        assert all(orientation(pts[0], pts[1], p) == 0 for p in pts)
        return
    assert set(H.vertices) == brute_hull_vertices(pts)
    for p in pts:
        assert hull_contains(H, p) != OUTSIDE


@given(st.lists(ab_points, min_size=3, max_size=8, unique=True), ab_points)
def test_hull_contains_in_irrational_field(pts, q):
    H = convex_hull(pts)
    for p in pts:
        assert hull_contains(H, p) != OUTSIDE
    if isinstance(H, Polygon) and hull_contains(H, q) == INSIDE:
        # an inside point stays inside after a small pull towards a vertex
        v = H.vertices[0]
        assert hull_contains(H, q + (v - q) * Fraction(1, 2)) != OUTSIDE


def test_hull_contains_labels():
    sq = Polygon([g(0, 0), g(2, 0), g(2, 2), g(0, 2)])
    assert hull_contains(sq, g(1, 1)) == INSIDE
    assert hull_contains(sq, g(2, 1)) == BOUNDARY
    assert hull_contains(sq, g(3, 1)) == OUTSIDE
    seg = Segment(g(0, 0), g(2, 2))
    assert hull_contains(seg, g(1, 1)) == BOUNDARY
    assert hull_contains(seg, g(3, 3)) == OUTSIDE


def test_is_convex_subset():
    amb = [g(x, y) for x in range(3) for y in range(3)]
    assert is_convex_subset([g(0, 0), g(1, 0), g(0, 1)], amb)
    assert not is_convex_subset([g(0, 0), g(2, 0)], amb)
    with pytest.raises(ValueError):
        is_convex_subset([g(5, 5)], amb)
