"""
Kuratowski embedding and sampled D_t
====================================

Embed a space isometrically into the max-norm space, join nearby points by
segments, and certify that the result is within t/2 of the original in the
Gromov-Hausdorff sense.
"""
import numpy as np

from ultragh import (
    bottleneck,
    distortion,
    dt_connectivity_check,
    dt_correspondence,
    embed,
    random_euclidean,
    sample_dt,
)
from ultragh.kuratowski import sup_distances

X = random_euclidean(5, 2, seed=12)

###############################################################################
# The embedding is an isometry
# ----------------------------

e = embed(X, basepoint=0)
print("max |sup-distance - d| =", np.abs(sup_distances(e.coords) - X.dist).max())

###############################################################################
# Sample D_t at the bottleneck scale
# ----------------------------------

t = bottleneck(X)
dt = sample_dt(X, t, step=t / 4)
R = dt_correspondence(X, dt)
print(f"t = {t:.4f}: {dt.space.n} sampled points, distortion of R = {distortion(R, X, dt.space):.4f}")
print("chain connected at step t/4:", dt_connectivity_check(X, t, t / 4))
print("below the bottleneck:", dt_connectivity_check(X, 0.9 * t, t / 4))
