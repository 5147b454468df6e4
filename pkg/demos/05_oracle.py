"""Brute force as a referee: enumerate convex subsets of a patch and compare X-rays.

Run:  python3 demos/05_oracle.py   (about 20 seconds)
"""
import time

from quasitomo.cyclotomic import CycNum
from quasitomo.modelset import ammann_beenker, generate_patch
from quasitomo.presets import direction_set
from quasitomo.uniqueness import brute_force_determined

grid = [CycNum(4, [x, y]) for x in range(5) for y in range(5)]
slopes = [CycNum(4, c) for c in ([1, 0], [1, 1], [0, 1], [-1, 1])]
rep = brute_force_determined(grid, slopes, max_vertices=8)
print(f"5x5 grid, slopes 0,1,inf,-1: {rep.collision_count} colliding pairs among {rep.subsets_examined} subsets")
F, G = rep.collisions[0]
print("  e.g. sizes", len(F), len(G), "differing in", len(F.points ^ G.points), "points")

P = generate_patch(ammann_beenker(), 4)
U8 = direction_set("U8", 8)
for cap in (8, len(P)):
    t = time.time()
    rep = brute_force_determined(P, U8, max_vertices=cap)
    print(f"Ammann-Beenker radius 4 ({len(P)} points), U8, vertex cap {cap}: {rep.collision_count} collisions, "
          f"truncated={rep.truncated}, determined={rep.determined}, "
          f"{rep.subsets_examined} subsets in {time.time() - t:.1f}s")
