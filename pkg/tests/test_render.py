import re
import xml.etree.ElementTree as ET

import pytest

from quasitomo.cyclotomic import CycNum
from quasitomo.modelset import ammann_beenker, generate_patch
from quasitomo.render import RenderSpec, render_svg


def test_svg_parses_and_counts_markers():
    P = generate_patch(ammann_beenker(), 2)
    pts = P.sorted()
    svg = render_svg(P, RenderSpec(highlights=[pts[:3], pts[3:5]]))
    root = ET.fromstring(svg)
    ns = "{http://www.w3.org/2000/svg}"
    assert len(root.findall(f".//{ns}circle")) == len(P) + 3
    assert len(root.findall(f".//{ns}rect")) == 2


def test_svg_is_deterministic():
    P = generate_patch(ammann_beenker(), 3)
    a = render_svg(P, RenderSpec(window=ammann_beenker()))
    b = render_svg(list(reversed(P.sorted())), RenderSpec(window=ammann_beenker()))
    assert a == b and "window" in a


def test_render_spec_validation():
    with pytest.raises(ValueError):
        RenderSpec(scale=0)
    with pytest.raises(ValueError):
        RenderSpec(highlights=[[], [], []])


def test_empty_set_renders():
    assert render_svg([]).startswith("<svg")
    assert not re.search(r'[" ]-0[" ]', render_svg([CycNum(4, [0, 0])]))
