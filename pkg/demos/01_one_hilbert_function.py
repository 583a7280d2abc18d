"""
One Hilbert function, two strata
================================

H = (1,2,3,3,1,0) has a five dimensional family G(H) of graded ideals.
We read off its invariants, build ideals in the standard chart and watch
the rank of theta_4 drop on a codimension two locus.
"""

from betti_lab.algebra_core import FieldSpec
from betti_lab.graded_ideal import alignment_of, chart_ideal, invariants_of, parameter_positions, theta_matrix
from betti_lab.hilbert_betti import analyze_H, build_lattice, dim_moduli

F = FieldSpec.prime(10007)
H = analyze_H([1, 2, 3, 3, 1, 0])
print("H =", H, " mu =", H.mu, " s =", H.s)
print("alignment K =", alignment_of(H))
print("dim G(H) =", dim_moduli(H))

# the lattice of Betti strata, one node per tau vector
for node in build_lattice(H).nodes:
    t = node.triple
    print(f"  eta={node.eta}  beta={t.beta_seq()}  tau={t.tau_seq()}  codim={node.codim}")

# chart coordinates (a,b,c,d,e) sit at these (generator, tail) positions
print("parameters at", parameter_positions(H))

# a generic point of the chart
I = chart_ideal(H, [1, 2, 3, 4, 5], F)
print("generic point: tau =", invariants_of(I).tau, " rank theta_4 =", theta_matrix(I, 4).rank())

# the rank one locus c = e^3, d = -e^2
for e in (1, 2, 3):
    I = chart_ideal(H, [0, 0, e**3, -(e**2), e], F)
    N = theta_matrix(I, 4)
    print(f"e={e}: N_4 = {N.entries}  rank {N.rank()}  beta = {invariants_of(I).triple.beta_seq()}")

# at the origin we get the monomial ideal
M = chart_ideal(H, [0] * 5, F)
print("origin:", ", ".join(str(g) for g in M.minimal_generators()))
