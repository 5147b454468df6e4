import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quasitomo.cyclotomic import CycNum, conjugate, sign_of_real, totient, zeta
from quasitomo.geometry import INSIDE
from quasitomo.modelset import (
    SUPPORTED_ORDERS,
    ModelSetSpec,
    PointSet,
    UnsupportedOrderError,
    ammann_beenker,
    contains,
    default_spec,
    find_pv_number,
    generate_patch,
    homothety_into,
    lattice_spec,
    regular_window_spec,
    spec_from_json,
    spec_to_json,
    star,
    window_locate,
)


def box_scan(spec, R, B):
    """Every module point with coefficients in [-B, B] inside the disc and the window."""
    n = spec.order
    out = set()
    for c in itertools.product(range(-B, B + 1), repeat=totient(n)):
        z = CycNum(n, c) + spec.translation
        if abs(complex(z)) > R + 1e-9:
            continue
        if sign_of_real(z * conjugate(z) - R * R) <= 0 and contains(spec, z):
            out.add(z)
    return out


@pytest.mark.parametrize("n,R,B", [(8, 2, 5), (5, Fraction(3, 2), 5), (12, Fraction(3, 2), 4),
                                   (10, Fraction(3, 2), 5), (4, 3, 4), (3, 2, 3)])
def test_patch_matches_box_scan(n, R, B):
    spec = default_spec(n)
    got = generate_patch(spec, R).points
    want = box_scan(spec, R, B)
    assert got == want


def test_ammann_beenker_counts():
    AB = ammann_beenker()
    assert [len(generate_patch(AB, R)) for R in (2, 4, 8)] == [17, 57, 241]


def test_gaussian_disc():
    assert len(generate_patch(lattice_spec(4), Fraction(3, 2))) == 9


def test_patch_is_eightfold_symmetric():
    P = generate_patch(ammann_beenker(), 4).points
    assert {zeta(8) * z for z in P} == P


def test_patch_center_and_translation():
    t = CycNum(4, [Fraction(1, 2), 0])
    spec = lattice_spec(4, t)
    P = generate_patch(spec, 1, center=t)
    assert t in P and len(P) == 5


def test_unsupported_order():
    with pytest.raises(UnsupportedOrderError, match="unsupported order"):
        default_spec(7)
    with pytest.raises(ValueError):
        ModelSetSpec(8, 1, ammann_beenker().window)  # star residue must be a nontrivial unit
    with pytest.raises(ValueError):
        ModelSetSpec(8, 3, None)


@pytest.mark.parametrize("n", SUPPORTED_ORDERS)
def test_spec_json_round_trip(n):
    spec = default_spec(n)
    back = spec_from_json(spec_to_json(spec))
    assert back == spec
    assert generate_patch(back, 2).points == generate_patch(spec, 2).points


def test_spec_presets_from_json():
    assert spec_from_json({"n": 8, "window": {"preset": "ammann-beenker"}}) == ammann_beenker()
    assert spec_from_json({"n": 12, "window": {"preset": "regular"}}) == regular_window_spec(12)
    with pytest.raises(ValueError):
        spec_from_json({"n": 8, "window": {"preset": "penrose"}})


def test_pointset_json_round_trip():
    P = generate_patch(ammann_beenker(), 3)
    Q = PointSet.from_json(P.to_json())
    assert Q == P and Q.to_json() == P.to_json()


@pytest.mark.parametrize("n", [5, 8, 10, 12])
def test_pv_units(n):
    pv = find_pv_number(n)
    lam, c = pv.value, pv.conjugate
    assert lam.approx().real > 1 and abs(c.approx().real) < 1
    assert abs((lam * c).approx().real) == pytest.approx(1)


def test_pv_for_ammann_beenker_is_silver_mean():
    assert find_pv_number(8).value == 1 + zeta(8) + zeta(8, 7)


pts8 = st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4).map(lambda c: CycNum(8, c)),
                min_size=1, max_size=5)


@given(pts8)
def test_homothety_lands_in_open_window(F):
    AB = ammann_beenker()
    h = homothety_into(F, AB)
    for z in F:
        w = h(z)
        assert contains(AB, w)
        assert window_locate(AB, star(w - AB.translation, AB)) == INSIDE


@given(st.lists(st.tuples(st.fractions(-3, 3, max_denominator=4), st.fractions(-3, 3, max_denominator=4)),
                min_size=1, max_size=5))
def test_homothety_clears_denominators_on_lattice(xy):
    F = [CycNum(4, [x, y]) for x, y in xy]
    h = homothety_into(F, lattice_spec(4))
    assert all(h(z).is_integral() for z in F)
