"""Exit criteria, one test per criterion.

Each test prints a single PASS/FAIL line; the lines are repeated in the
terminal summary.  Instance counts, tolerances and time budgets are fixed
here and are not tuned after the fact.
"""

import itertools
import time

import numpy as np
import pytest

from ultragh import (
    FiniteMetricSpace,
    ProductMetricTable,
    bottleneck,
    check_dominates_linf,
    check_fair,
    diameter,
    distortion,
    dt_connectivity_check,
    dt_correspondence,
    geometric_progression,
    gh_exact,
    grid_segment,
    is_ultrametric,
    min_connecting_scale,
    minimax_closure_oracle,
    product_l1,
    product_linf,
    random_euclidean,
    random_ultrametric,
    sample_dt,
    subdominant,
    ultrametric_defect,
    validate_metric,
)
from ultragh.generators import random_points
from ultragh.gh import gh_by_enumeration

from conftest import ACCEPTANCE_LINES, random_space

pytestmark = pytest.mark.acceptance

SLACK = 1e-12


def report(tag, title, ok, detail, elapsed, budget):
    within = elapsed < budget
    status = "PASS" if ok and within else "FAIL"
    line = f"[{status}] {tag} {title}: {detail}; {elapsed:.2f}s (budget {budget:g}s)"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line
    assert within, line


def U(X):
    return subdominant(X).space


def test_ac01_oracle_equivalence():
    rng = np.random.default_rng(101)
    start = time.perf_counter()
    mismatches = 0
    for k in range(500):
        kind = ("euclidean", "ultrametric")[k % 2]
        X = random_space(rng, 8, kinds=(kind,))
        if not np.array_equal(subdominant(X).dist, minimax_closure_oracle(X)):
            mismatches += 1
    report("AC1", "U equals minimax closure oracle", mismatches == 0,
           f"{mismatches}/500 mismatches", time.perf_counter() - start, 5)


def test_ac02_fixed_points_and_idempotence():
    rng = np.random.default_rng(102)
    start = time.perf_counter()
    fixed_fail = idem_fail = 0
    for _ in range(200):
        X = random_ultrametric(int(rng.integers(1, 11)), int(rng.integers(2**32)))
        if not U(X).equals(X):
            fixed_fail += 1
    for _ in range(200):
        X = random_space(rng, 10)
        once = U(X)
        if not U(once).equals(once):
            idem_fail += 1
    report("AC2", "U fixes ultrametrics, U o U = U", fixed_fail == idem_fail == 0,
           f"fixed-point failures {fixed_fail}/200, idempotence failures {idem_fail}/200",
           time.perf_counter() - start, 2)


def test_ac03_solver_matches_enumeration():
    rng = np.random.default_rng(103)
    start = time.perf_counter()
    pool = [random_space(rng, 3) for _ in range(30)]
    pairs = list(itertools.product(pool, repeat=2))
    sizes = [(2, 6), (6, 2), (3, 4), (4, 3), (2, 5), (5, 2), (3, 3), (2, 4), (4, 2), (1, 7)]
    for k in range(20):
        n, m = sizes[k % len(sizes)]
        pairs.append((random_space(rng, n, n_min=n), random_space(rng, m, n_min=m)))
    bad = 0
    for X, Y in pairs:
        r = gh_exact(X, Y)
        expected = gh_by_enumeration(X, Y)
        witness_ok = r.exact and abs(distortion(r.witness, X, Y) - 2 * r.value) <= SLACK
        if not witness_ok or abs(r.value - expected) > SLACK:
            bad += 1
    report("AC3", "gh_exact equals enumeration minimum", bad == 0,
           f"{bad}/{len(pairs)} disagreements (900 pool pairs + 20 with |X||Y|<=12)",
           time.perf_counter() - start, 60)


def test_ac04_ultrametrization_is_one_lipschitz():
    rng = np.random.default_rng(104)
    start = time.perf_counter()
    bad = 0
    for _ in range(100):
        X, Y = random_space(rng, 5), random_space(rng, 5)
        if gh_exact(X, Y).value + SLACK < gh_exact(U(X), U(Y)).value:
            bad += 1
    report("AC4", "d_GH(X,Y) >= d_GH(U(X),U(Y))", bad == 0,
           f"{bad}/100 violations", time.perf_counter() - start, 120)


def random_fair_table(X, Y, rng):
    """A fair metric between the max and Manhattan products.

    Off-slice entries are raised from ``max(d_X, d_Y)`` by a random mix of a
    scaled ``min(d_X, d_Y)`` and an l^p combination; slice entries are the
    factor distances verbatim.
    """
    n, m = X.n, Y.n
    dx = np.repeat(np.repeat(X.dist, m, axis=0), m, axis=1)
    dy = np.tile(Y.dist, (n, n))
    hi, lo = np.maximum(dx, dy), np.minimum(dx, dy)
    p = rng.uniform(1, 6)
    lp = hi * (1 + (lo / np.where(hi > 0, hi, 1)) ** p) ** (1 / p)
    w = rng.uniform()
    rho = np.maximum(w * (hi + rng.uniform() * lo) + (1 - w) * lp, hi)
    xi, yj = np.repeat(np.arange(n), m), np.tile(np.arange(m), n)
    on_slice = (xi[:, None] == xi[None, :]) | (yj[:, None] == yj[None, :])
    rho[on_slice] = (dx + dy)[on_slice]
    return ProductMetricTable(X, Y, rho)


def test_ac05_product_formula():
    rng = np.random.default_rng(105)
    start = time.perf_counter()
    bad_l1 = bad_fair = 0
    for _ in range(100):
        while True:
            X, Y = random_space(rng, 6), random_space(rng, 6)
            if X.n * Y.n <= 36:
                break
        if not np.array_equal(U(product_l1(X, Y)).dist, product_linf(U(X), U(Y)).dist):
            bad_l1 += 1
    for _ in range(50):
        X, Y = random_space(rng, 6, n_min=2), random_space(rng, 6, n_min=2)
        table = random_fair_table(X, Y, rng)
        valid = validate_metric(table.rho).ok and check_fair(table, 0.0) and check_dominates_linf(table, 0.0)
        same = np.array_equal(U(table.to_space()).dist, product_linf(U(X), U(Y)).dist)
        if not (valid and same):
            bad_fair += 1
    report("AC5", "U(X x_rho Y) = U(X) x_linf U(Y)", bad_l1 == bad_fair == 0,
           f"l1 failures {bad_l1}/100, fair-table failures {bad_fair}/50",
           time.perf_counter() - start, 10)


def test_ac06_product_is_one_lipschitz():
    rng = np.random.default_rng(106)
    start = time.perf_counter()
    bad = 0
    for _ in range(30):
        X, Y, A = random_space(rng, 3), random_space(rng, 3), random_space(rng, 2)
        if gh_exact(product_l1(X, A), product_l1(Y, A)).value > gh_exact(X, Y).value + SLACK:
            bad += 1
    report("AC6", "d_GH(XxA, YxA) <= d_GH(X,Y)", bad == 0,
           f"{bad}/30 violations", time.perf_counter() - start, 120)


def test_ac07_product_isometric_on_ultrametrics():
    rng = np.random.default_rng(107)
    start = time.perf_counter()
    bad = checks = 0
    grids = [(step, grid_segment(1, step)) for step in (0.5, 0.25)]
    # the 3-point reading of the same scale
    grids.append((0.25, grid_segment(0.5, 0.25)))
    for _ in range(20):
        Ua = random_ultrametric(int(rng.integers(1, 4)), int(rng.integers(2**32)))
        Ub = random_ultrametric(int(rng.integers(1, 4)), int(rng.integers(2**32)))
        base = gh_exact(Ua, Ub).value
        for step, A in grids:
            r = gh_exact(product_l1(Ua, A), product_l1(Ub, A))
            checks += 1
            if not (r.exact and base - step <= r.value <= base + SLACK):
                bad += 1
    report("AC7", "d_GH(U,U') - step <= d_GH(UxA,U'xA) <= d_GH(U,U')", bad == 0,
           f"{bad}/{checks} violations (grids of 3, 5 and 3 points)",
           time.perf_counter() - start, 300)


def _adversarial(points, t, rng):
    """Spaces within roughly t/8 of the Euclidean space on ``points``."""
    n, dim = points.shape
    out = []
    # move each point by at most t/16, so distances move by at most t/8
    noise = rng.normal(size=points.shape)
    noise *= (t / 16) * rng.uniform(size=(n, 1)) / np.linalg.norm(noise, axis=1, keepdims=True)
    out.append(FiniteMetricSpace.from_points(points + noise))
    # add a constant to every off-diagonal distance
    base = FiniteMetricSpace.from_points(points)
    shift = rng.uniform(0, t / 8)
    out.append(FiniteMetricSpace.from_matrix(base.dist + shift * (1 - np.eye(n))))
    # split one point into two at distance s
    k = int(rng.integers(n))
    s = rng.uniform(t / 64, t / 8)
    d = np.zeros((n + 1, n + 1))
    d[:n, :n] = base.dist
    d[n, :n] = d[:n, n] = base.dist[k] + s
    d[n, k] = d[k, n] = s
    out.append(FiniteMetricSpace.from_matrix(d))
    return out


def test_ac08_ultrametrics_closed():
    rng = np.random.default_rng(108)
    start = time.perf_counter()
    in_regime = from_uniform = bad = 0
    tried = 0
    for _ in range(100):
        X, Y = random_space(rng, 5, n_min=3), random_space(rng, 5)
        t = ultrametric_defect(X)
        if t > 0 and gh_exact(X, Y).value < t / 4:
            from_uniform += 1
            in_regime += 1
            bad += ultrametric_defect(Y) <= 0
    while in_regime < 100 + from_uniform:
        tried += 1
        n = int(rng.integers(3, 5))
        points = random_points(n, int(rng.integers(1, 4)), int(rng.integers(2**32)))
        X = FiniteMetricSpace.from_points(points)
        t = ultrametric_defect(X)
        if t <= 0:
            continue
        for Y in _adversarial(points, t, rng):
            if gh_exact(X, Y).value < t / 4:
                in_regime += 1
                bad += ultrametric_defect(Y) <= 0
    report("AC8", "gh < defect/4 forces a non-ultrametric neighbour", bad == 0,
           f"{bad}/{in_regime} violations ({from_uniform} uniform + {in_regime - from_uniform} adversarial pairs in regime)",
           time.perf_counter() - start, 120)


def test_ac09_sampled_dt():
    rng = np.random.default_rng(109)
    start = time.perf_counter()
    bad_dis = bad_conn = 0
    for k in range(50):
        X = random_space(rng, 5, n_min=2)
        t = bottleneck(X) if k % 2 == 0 else diameter(X)
        dt = sample_dt(X, t, t / 4)
        R = dt_correspondence(X, dt)
        if distortion(R, X, dt.space) > t + SLACK:
            bad_dis += 1
        c = bottleneck(X)
        if not dt_connectivity_check(X, c, c / 4):
            bad_conn += 1
    report("AC9", "dis(R) <= t for sampled D_t; D_c chain connected", bad_dis == bad_conn == 0,
           f"distortion failures {bad_dis}/50, connectivity failures {bad_conn}/50",
           time.perf_counter() - start, 30)


def test_ac10_identities_and_progression():
    rng = np.random.default_rng(110)
    start = time.perf_counter()
    bad = 0
    for _ in range(300):
        X = random_space(rng, 10)
        if not (min_connecting_scale(X) == bottleneck(X) == diameter(U(X))):
            bad += 1
    values = [bottleneck(geometric_progression(2, N)) for N in range(2, 11)]
    expected = [2.0**N - 2.0 ** (N - 1) for N in range(2, 11)]
    growing = all(a < b for a, b in zip(values, values[1:]))
    report("AC10", "scale identities; bottleneck of q_2 truncations", bad == 0 and values == expected and growing,
           f"{bad}/300 identity failures, q_2 bottlenecks {values}",
           time.perf_counter() - start, 5)


def test_ac11_pseudometric_laws():
    rng = np.random.default_rng(111)
    start = time.perf_counter()
    asym = tri = 0
    for _ in range(50):
        X, Y, Z = (random_space(rng, 4) for _ in range(3))
        xy, yx = gh_exact(X, Y).value, gh_exact(Y, X).value
        yz, xz = gh_exact(Y, Z).value, gh_exact(X, Z).value
        asym += xy != yx
        tri += xz > xy + yz + SLACK
    report("AC11", "GH symmetric and satisfies the triangle inequality", asym == tri == 0,
           f"asymmetric {asym}/50, triangle violations {tri}/50",
           time.perf_counter() - start, 180)
