"""
Counting ideals over finite fields
==================================

Every ideal of G(H)(F_q) is enumerated and sorted by stratum.  The counts
are polynomials in q; their degrees are the stratum dimensions.
"""

import time

from betti_lab.hilbert_betti import analyze_H, dim_moduli
from betti_lab.strata_lab import beta_max_count, fit_counting_polynomials, format_poly, staircases_of, stratum_census

H = analyze_H([1, 2, 3, 3, 1, 0])
primes = [5, 7, 11, 13, 17, 19]

censuses = []
for q in primes:
    t0 = time.perf_counter()
    c = stratum_census(H, q)
    censuses.append(c)
    print(f"q={q:2d}: {c.total:9d} ideals  {dict(c.counts)}  ({time.perf_counter() - t0:.1f}s)")

fit = fit_counting_polynomials(censuses)
for eta, coeffs in sorted(fit.polys.items()):
    print(f"eta={eta}: {format_poly(coeffs)}   degree {fit.degrees[eta]}")

# the beta_max stratum is a product of projective spaces
top = max(fit.polys)
print("beta_max at q=23:", fit.predict(top, 23), "==", beta_max_count(H, 23))

# summing the polynomials at q=1 counts the affine cells, one per monomial ideal
print("sum at q=1:", sum(fit.predict(eta, 1) for eta in fit.polys), " staircases:", sum(1 for _ in staircases_of(H)))
print("dim G(H) =", dim_moduli(H))
