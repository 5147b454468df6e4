"""Pairs of sets that X-rays cannot separate.

Run:  python3 demos/04_ambiguous_pairs.py  (writes switching.svg, hexagon.svg)
"""
from quasitomo.cyclotomic import zeta
from quasitomo.geometry import make_direction
from quasitomo.modelset import ammann_beenker, homothety_into
from quasitomo.render import RenderSpec, render_svg
from quasitomo.unipoly import hexagon_for, witness_pair_from_polygon
from quasitomo.uniqueness import contiguous_pair, padded_hull, region_points, switching_pair
from quasitomo.xray import xrays_equal

AB = ammann_beenker()
U = [make_direction(v, 8) for v in (1, zeta(8), 1 + zeta(8))]

# switching components: one doubling per direction
F, G = switching_pair(U, AB)
print("switching pair sizes:", len(F), len(G), " equal X-rays:", xrays_equal(F, G, U))

# fill in the rest of a region; the complements share X-rays too
A, B = contiguous_pair(F, G, padded_hull(F.points | G.points, 8), AB, U)
print("contiguous pair sizes:", len(A), len(B), " equal X-rays:", xrays_equal(A, B, U))
with open("switching.svg", "w") as fh:
    fh.write(render_svg(A.points | B.points, RenderSpec(highlights=[F.sorted(), G.sorted()])))

# three directions are never enough for convex sets: a U-hexagon moved into the model set
H = hexagon_for(U, 8)
HP = H.map(homothety_into(list(H.vertices), AB))
amb = region_points(HP, AB)
C1, C2 = witness_pair_from_polygon(HP, U, amb)
print("convex witnesses:", len(C1), "points each; equal X-rays:", xrays_equal(C1, C2, U))
with open("hexagon.svg", "w") as fh:
    diff1, diff2 = C1.points - C2.points, C2.points - C1.points
    fh.write(render_svg(amb, RenderSpec(highlights=[diff1, diff2])))
print("wrote switching.svg and hexagon.svg")
print("hexagon vertices:", [complex(v) for v in HP.vertices][:2], "...")
