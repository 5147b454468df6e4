"""An eightfold model set: cut out a patch and draw it with its window.

Run:  python3 demos/02_ammann_beenker_patch.py  (writes ammann_beenker.svg)
"""
from collections import Counter

from quasitomo.modelset import ammann_beenker, generate_patch
from quasitomo.render import RenderSpec, render_svg

AB = ammann_beenker()
for R in (2, 4, 8, 16):
    P = generate_patch(AB, R)
    print(f"radius {R:2d}: {len(P):4d} points")

P = generate_patch(AB, 6)
# distance shells show the 8-fold symmetry
shells = Counter(round(abs(complex(z)), 6) for z in P)
print("first shells:", sorted(shells.items())[:6])

with open("ammann_beenker.svg", "w") as fh:
    fh.write(render_svg(P, RenderSpec(scale=30, window=AB)))
print("wrote ammann_beenker.svg")
