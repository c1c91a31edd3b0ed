import math

import numpy as np
import pytest

import rrcr
from rrcr.errors import Disconnected, EmptyOrFull, NotRegular, SetTooLarge
from rrcr.sampler import RngSeed

from conftest import complete, cycle
from oracle_utils import exact_lambda


def k4_times_k4():
    # Cartesian product of two K4s: 6-regular, extremes +2 and -2 tie in
    # magnitude below the top eigenvalue, exercising the squared-operator path
    edges = []
    for a in range(4):
        for b in range(4):
            v = 4 * a + b
            for bb in range(4):
                if bb != b:
                    edges.append((v, 4 * a + bb))
            for aa in range(4):
                if aa != a:
                    edges.append((v, 4 * aa + b))
    return rrcr.from_edge_list(16, [(u, v) for u, v in edges if u < v])


def test_lambda_k4(k4):
    est = rrcr.lambda_estimate(k4)
    assert est.converged
    assert abs(est.lambda_hat - 1.0) < 1e-8


def test_lambda_c6(c6):
    est = rrcr.lambda_estimate(c6)
    assert est.converged
    assert abs(est.lambda_hat - 2.0) < 1e-6


def test_lambda_squared_operator_path():
    g = k4_times_k4()
    est = rrcr.lambda_estimate(g)
    assert est.converged
    assert abs(est.lambda_hat - 2.0) < 1e-6


def test_exact_oracle_known_spectra(k4, c6, cube):
    from oracle_utils import exact_eigenvalues
    assert sorted(round(x) for x in exact_eigenvalues(k4)) == [-1, 3]
    assert sorted(round(x) for x in exact_eigenvalues(c6)) == [-2, -1, 1, 2]
    assert sorted(round(x) for x in exact_eigenvalues(cube)) == [-3, -1, 1, 3]
    for g, expected in ((k4, 1.0), (c6, 2.0), (cube, 3.0)):
        assert abs(exact_lambda(g) - expected) < 1e-9


def test_lambda_matches_exact_oracle_small():
    graphs = [complete(4), complete(5), cycle(5), cycle(6), cycle(8),
              rrcr.from_edge_list(6, [(u, v + 3) for u in range(3) for v in range(3)])]
    for j in range(6):
        graphs.append(rrcr.sample_uniform_tiny(8, 3, RngSeed(j)))
        graphs.append(rrcr.sample_uniform_tiny(6, 2, RngSeed(j)))
    for g in graphs:
        if math.isinf(rrcr.diameter(g)):
            continue
        est = rrcr.lambda_estimate(g)
        assert abs(est.lambda_hat - exact_lambda(g)) < 1e-6, g


def test_lambda_errors(two_triangles):
    with pytest.raises(NotRegular):
        rrcr.lambda_estimate(rrcr.from_edge_list(3, [(0, 1)]))
    with pytest.raises(Disconnected):
        rrcr.lambda_estimate(two_triangles)


def test_lambda_no_convergence_flag(c6):
    est = rrcr.lambda_estimate(c6, max_iters=1)
    assert not est.converged
    assert est.iterations == 1


def test_mixing_full_sets(petersen):
    rep = rrcr.mixing_discrepancy(petersen, range(10), range(10), lam=2.0)
    assert rep.e_count == 2 * petersen.m
    assert rep.deviation == 0.0
    assert rep.ok


def test_mixing_c6_alternating(c6):
    rep = rrcr.mixing_discrepancy(c6, [0, 2, 4], [1, 3, 5], lam=2.0)
    assert rep.e_count == 6
    assert rep.deviation == pytest.approx(3.0)
    assert rep.bound == pytest.approx(6.0)
    assert rep.ok


def test_mixing_overlap_convention(k4):
    # K3 inside K4? use a triangle directly: overlap edges count twice
    g = complete(3)
    rep = rrcr.mixing_discrepancy(g, [0, 1], [1, 2], lam=1.0)
    # ordered pairs: (0,1), (0,2), (1,2) -> 3
    assert rep.e_count == 3


def test_mixing_random_pairs_within_bound():
    g = rrcr.sample_regular(256, 8, RngSeed(21))
    lam = rrcr.lambda_estimate(g).lambda_hat
    rng = np.random.default_rng(3)
    for _ in range(100):
        a = rng.choice(256, size=int(rng.integers(1, 256)), replace=False)
        b = rng.choice(256, size=int(rng.integers(1, 256)), replace=False)
        assert rrcr.mixing_discrepancy(g, a, b, lam).ok


def test_mixing_not_regular():
    with pytest.raises(NotRegular):
        rrcr.mixing_discrepancy(rrcr.from_edge_list(3, [(0, 1)]), [0], [1], 1.0)


def test_histogram_k4(k4):
    assert rrcr.degree_histogram_into_set(k4, [0]) == {1: 3}


def test_histogram_c6_antipodal(c6):
    assert rrcr.degree_histogram_into_set(c6, [0, 3]) == {1: 4}


def test_histogram_sums(petersen):
    hist = rrcr.degree_histogram_into_set(petersen, [0, 1, 2])
    assert sum(hist.values()) == 7
    edge_count = sum(s * c for s, c in hist.items())
    rep = rrcr.mixing_discrepancy(petersen, [0, 1, 2], list(range(3, 10)), lam=2.0)
    assert edge_count == rep.e_count


def test_histogram_spread_at_half_occupancy():
    # half the vertices as the target set: no single neighbour-count bucket
    # may blow past 10n/ln(l) with l = |U| d / n
    n, d = 1024, 16
    g = rrcr.sample_regular(n, d, RngSeed(40))
    into = list(range(n // 2))
    hist = rrcr.degree_histogram_into_set(g, into)
    occupancy = len(into) * d / n
    assert max(hist.values()) <= 10 * n / math.log(occupancy)
    assert sum(hist.values()) == n - len(into)


def test_histogram_guards(c6):
    with pytest.raises(EmptyOrFull):
        rrcr.degree_histogram_into_set(c6, [])
    with pytest.raises(EmptyOrFull):
        rrcr.degree_histogram_into_set(c6, range(6))


def test_sphere_growth_vacuous_small_degree(c6):
    # at d=2 the factor 1 - 100c - 4 ln(2)/2 is negative for every c > 0:
    # all in-range radii pass vacuously
    rep = rrcr.sphere_growth_check(c6, [0], c=0.4)
    assert rep.growth_factor < 0
    assert rep.all_ok
    assert len(rep.records) >= 1
    assert all(rec.vacuous for rec in rep.records)


def test_sphere_growth_set_too_large(c6):
    with pytest.raises(SetTooLarge):
        rrcr.sphere_growth_check(c6, [0, 1, 2, 3], c=0.4)


def test_sphere_growth_regime():
    g = rrcr.sample_regular(4096, 12, RngSeed(17))
    rep = rrcr.sphere_growth_check(g, [0], c=0.004)
    assert rep.all_ok
    assert len(rep.records) >= 1


def test_sphere_growth_non_vacuous():
    g = rrcr.sample_regular(8192, 24, RngSeed(18))
    rep = rrcr.sphere_growth_check(g, [0], c=0.004)
    assert rep.growth_factor > 0
    assert len(rep.records) >= 1
    assert not any(rec.vacuous for rec in rep.records)
    assert rep.all_ok


def test_statistics_are_permutation_invariant(petersen):
    perm = np.random.default_rng(9).permutation(10)
    h = rrcr.apply_permutation(petersen, perm)
    assert rrcr.lambda_estimate(petersen).lambda_hat == pytest.approx(
        rrcr.lambda_estimate(h).lambda_hat, abs=1e-9)
    a, b = [0, 1, 2], [3, 4, 5]
    rep1 = rrcr.mixing_discrepancy(petersen, a, b, 2.0)
    rep2 = rrcr.mixing_discrepancy(h, perm[a], perm[b], 2.0)
    assert rep1.e_count == rep2.e_count
