"""Which four directions pin down every convex set?  The cross ratio decides.

Run:  python3 demos/03_four_directions.py
"""
from quasitomo.cyclotomic import CycNum
from quasitomo.geometry import angle_sort, cross_ratio
from quasitomo.presets import direction_set
from quasitomo.unipoly import check_determination, search_cross_ratio

for name, n in [("U", 8), ("U'", 8), ("U''", 12), ("U5", 5), ("U8", 8), ("U10", 10), ("U12", 12)]:
    U = direction_set(name, n)
    v = check_determination(U, n)
    q = cross_ratio(*angle_sort(U))
    print(f"{name:4s} n={n:2d}  cross ratio {q.approx().real:.6f}  norm {str(v.norm):>6s}  -> {v.status}")

# the lattice slopes 0, 1, inf, -1 have cross ratio 2, a value some octagon realizes
slopes = [CycNum(4, c) for c in ([1, 0], [1, 1], [0, 1], [-1, 1])]
print("slopes 0,1,inf,-1:", check_determination(slopes, 4).status)
print("2 = f_m(d) for", search_cross_ratio(cross_ratio(*angle_sort(slopes)), 8))

# U12 is a cautionary case: its cross ratio is itself such a value
q12 = cross_ratio(*angle_sort(direction_set("U12", 12)))
print("U12 cross ratio found among f_m values:", search_cross_ratio(q12, 12))
