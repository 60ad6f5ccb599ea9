"""
Ultrametrization of finite metric spaces
========================================

Compute the subdominant ultrametric U(X) of a few spaces, check that it is
the identity on ultrametric spaces, and watch the product formula
U(X x Y) = U(X) x_inf U(Y) hold entry by entry.
"""
import numpy as np

from ultragh import (
    bottleneck,
    geometric_progression,
    grid_segment,
    is_ultrametric,
    product_l1,
    product_linf,
    random_euclidean,
    random_ultrametric,
    subdominant,
    ultrametric_defect,
)

###############################################################################
# A geometric progression
# -----------------------
# Every u value is the largest gap a chain has to cross.

X = geometric_progression(2, 5)
U = subdominant(X)
print("points:", X.labels)
print("U(X):")
print(U.dist)
print("ultrametric defect of X:", ultrametric_defect(X), "-> of U(X):", ultrametric_defect(U.space))

###############################################################################
# The bottleneck grows with the truncation
# ----------------------------------------
# diam U of {2, 4, ..., 2**N} is the last gap 2**N - 2**(N-1), unbounded in N.

for N in range(2, 11):
    print(f"N = {N:2d}  diam U = {bottleneck(geometric_progression(2, N)):g}")

###############################################################################
# Fixed points
# ------------

V = random_ultrametric(8, seed=4)
print("ultrametric input:", is_ultrametric(V), " U(V) == V:", subdominant(V).space.equals(V))

###############################################################################
# Product formula
# ---------------

A = random_euclidean(4, 2, seed=1)
B = grid_segment(1, 0.25)
left = subdominant(product_l1(A, B)).dist
right = product_linf(subdominant(A).space, subdominant(B).space).dist
print("U(A x B) equals U(A) x_inf U(B):", np.array_equal(left, right))
