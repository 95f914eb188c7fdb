"""The polynomial remembers the whole graph.

With subset-sum-distinct labels (powers of two), every monomial names one
spanning forest, so the polynomial hands over the full forest family: the
labels are the exponents of the single-edge coefficient, each exponent
decomposes uniquely into a label subset, and each magnitude is the
forest's component-size product.  Realizing a graph with exactly that
family is then a finite search, unique up to isomorphism.
"""
import random

from graphspectra import (decode_forest_family, is_isomorphic,
                          reconstruct_from_polynomial, spectral_polynomial)
from graphspectra.catalog import (cospectral_pair_graphs,
                                  random_connected_graph, with_powers_of_two)

g1, g2 = cospectral_pair_graphs()
dp = with_powers_of_two(g1)
P = spectral_polynomial(dp)
fam = decode_forest_family(P)
print("decoded labels:", fam.labels)
print("decoded spanning trees:", len(fam.families[1]))
print("decoded single edges:  ", len(fam.families[g1.n - 1]))

h = reconstruct_from_polynomial(P)
print("\nreconstructed graph:", sorted(h.edges))
print("isomorphic to the hidden one:", is_isomorphic(h, g1))
print("isomorphic to its cospectral twin:", is_isomorphic(h, g2))

print("\nrandom round trips:")
rng = random.Random(7)
for trial in range(5):
    g = random_connected_graph(rng.randint(3, 7), rng)
    back = reconstruct_from_polynomial(
        spectral_polynomial(with_powers_of_two(g)))
    print(f"  n={g.n} m={g.m:2d}: reconstructed isomorphic ->",
          is_isomorphic(g, back))
