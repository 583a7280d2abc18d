"""
Intersecting level ideals
=========================

A subspace V of forms of degree j gives a level algebra.  Intersecting
general level ideals, the Hilbert function of the intersection is the
termwise sum capped by u+1.
"""

import random

from betti_lab.algebra_core import FieldSpec
from betti_lab.applications import LevelSpec, intersect_levels, intersection_report, sample_level
from betti_lab.hilbert_betti import analyze_H

F = FieldSpec.prime(10007)

# a single level ideal: V of dimension 2 in R_4
L = sample_level(LevelSpec(4, 2), F, random.Random(0))
print("one level ideal:", analyze_H(L.hilbert_values()))

# two of them
res = intersect_levels([LevelSpec(4, 2), LevelSpec(4, 2)], F, seed=1)
print("intersection:", res.H, " predicted", res.expected)

# mixed socle degrees
res = intersect_levels([LevelSpec(6, 3), LevelSpec(4, 1)], F, seed=2)
print("j=6,4:", res.H, " predicted", res.expected)
print("tau(I_u):", res.tau, "  tau(V_i):", res.tau_levels)

rep = intersection_report([LevelSpec(4, 2), LevelSpec(4, 2)], F, 100, seed=0)
print(f"100 trials: Hilbert function matches in {rep.h_hits}")
