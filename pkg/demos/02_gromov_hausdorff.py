"""
Exact Gromov-Hausdorff distances
================================

Solve small instances exactly, compare with the cheap bounds, and check the
two Lipschitz statements: passing to U(.) and multiplying by a fixed factor
never increase the distance.
"""
from ultragh import (
    distortion,
    gh_bounds,
    gh_exact,
    grid_segment,
    polygon_vertices,
    product_l1,
    random_euclidean,
    random_ultrametric,
    subdominant,
)

###############################################################################
# Regular polygons on one circle
# ------------------------------

for n, m in [(3, 4), (4, 6), (5, 6)]:
    P, Q = polygon_vertices(n, 1), polygon_vertices(m, 1)
    r = gh_exact(P, Q)
    b = gh_bounds(P, Q)
    print(f"{n}-gon vs {m}-gon: d_GH = {r.value:.6f}   bounds [{b.lower:.6f}, {b.upper:.6f}]"
          f"   nodes {r.nodes_explored}")
    assert distortion(r.witness, P, Q) == 2 * r.value

###############################################################################
# Ultrametrization is 1-Lipschitz
# -------------------------------

X, Y = random_euclidean(6, 2, seed=3), random_euclidean(6, 3, seed=8)
UX, UY = subdominant(X).space, subdominant(Y).space
print("d_GH(X, Y)       =", gh_exact(X, Y).value)
print("d_GH(U(X), U(Y)) =", gh_exact(UX, UY).value)

###############################################################################
# Multiplying ultrametric spaces by a fine grid
# ---------------------------------------------
# The distance is kept up to the grid step.

U1, U2 = random_ultrametric(3, seed=5), random_ultrametric(3, seed=6)
base = gh_exact(U1, U2).value
for step in (0.5, 0.25):
    A = grid_segment(1, step)
    print(f"step {step}: d_GH(U1, U2) = {base}, d_GH(U1 x A, U2 x A) = "
          f"{gh_exact(product_l1(U1, A), product_l1(U2, A)).value}")
