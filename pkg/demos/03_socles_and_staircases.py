"""
Socle types and monomial witnesses
==================================

The socle of A = R/I sits in degrees where relations live:
ST_i = beta_(i+2).  Which socle types occur for a given H is decided by
simple bounds, and a monomial ideal realizes each allowed one.
"""

import itertools

from betti_lab.applications import realize_socle, socle_feasible
from betti_lab.graded_ideal import invariants_of
from betti_lab.hilbert_betti import analyze_H, socle_bounds
from betti_lab.strata_lab import staircases_of

H = analyze_H([1, 2, 3, 4, 2, 1, 0])

print("staircases with Hilbert function", H)
for st in staircases_of(H):
    print(f"  rows={st.rows}  generators: {st}")

bounds = socle_bounds(H)
print("bounds on ST_i:", {i: b for i, b in bounds.items() if b != (0, 0)})

for ST in itertools.product(*(range(lo, hi + 1) for lo, hi in bounds.values())):
    assert socle_feasible(H, ST)
    I = realize_socle(H, ST)
    soc = {i: v for i, v in invariants_of(I).socle.items() if v}
    print(f"ST={ST[3:]} (from degree 3): {', '.join(map(str, I.minimal_generators()))}   socle {soc}")

print("ST_4 = 3 allowed?", socle_feasible(H, (0, 0, 0, 0, 3, 1)))
