"""Two graphs the ordinary Laplacian spectrum cannot tell apart.

The catalog ships the smallest bridgeless pair of non-isomorphic graphs
with identical Laplacian characteristic polynomials.  Giving one edge in
each graph the symbolic weight Y^2 (all others Y) produces bivariate
polynomials det(X*I - L(Y)) that no longer agree: the extra variable
remembers enough structure to tell the graphs apart, already in the
lowest-degree homogeneous part.
"""
from graphspectra import (evaluate_y, is_isomorphic, spectral_polynomial,
                          tangent_cone)
from graphspectra.catalog import cospectral_pair, cospectral_pair_graphs

g1, g2 = cospectral_pair_graphs()
print("left graph: ", sorted(g1.edges))
print("right graph:", sorted(g2.edges))
print("isomorphic? ", is_isomorphic(g1, g2))

dp1, dp2 = cospectral_pair()
P1 = spectral_polynomial(dp1)
P2 = spectral_polynomial(dp2)

print("\nUnivariate collapse at Y = 1 (the plain Laplacian):")
c1, c2 = evaluate_y(P1, 1), evaluate_y(P2, 1)
print("  charpoly(left)  =", c1.format("X"))
print("  equal to right? ", c1 == c2)

print("\nBivariate polynomials:")
print("  P_left == P_right ?", P1 == P2)
diff = [(c, i, k) for c, i, k in P1.monomials()
        if c != P2.coefficient(i).coefficient(k)]
print("  first monomials where they differ:",
      sorted(diff, key=lambda t: (t[1] + t[2]))[:4])

T1, T2 = tangent_cone(P1), tangent_cone(P2)
print("\nTangent cones (lowest homogeneous parts, degree %d):" % T1.degree)
print("  equal?", T1 == T2)
print("  left :", T1.format())
print("  right:", T2.format())
