import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orlicz_korn import rearrange as ra
from orlicz_korn import young
from orlicz_korn.rearrange import DegenerateInputError, SampledFunction
from orlicz_korn.young import DomainError, IndicatorYoung, PowerYoung


@pytest.fixture(scope="module")
def catalog():
    return young.load_catalog()


def _sf(values, weights=None):
    values = np.asarray(values, dtype=float)
    if weights is None:
        weights = np.full(values.shape, 1.0 / len(values))
    return SampledFunction(values, np.asarray(weights, dtype=float))


# ---------------------------------------------------------------------------
# rearrangement
# ---------------------------------------------------------------------------

def test_rearrangement_sorts():
    u = _sf([1.0, 3.0, 2.0], [1.0, 1.0, 1.0])
    r = ra.rearrangement(u)
    assert list(r.values) == [3.0, 2.0, 1.0]
    assert list(r.weights) == [1.0, 1.0, 1.0]


def test_rearrangement_constant_fixed_point():
    u = _sf([2.0] * 5)
    r = ra.rearrangement(u)
    assert np.array_equal(r.values, u.values)


def test_rearrangement_matches_distribution_function():
    # brute-force comparison of distribution functions at 50 thresholds
    rng = np.random.default_rng(42)
    u = _sf(rng.standard_normal(10_000), rng.uniform(0.5, 1.5, 10_000))
    r = ra.rearrangement(u)
    cuts = np.quantile(np.abs(u.values), np.linspace(0.01, 0.99, 50))
    for t in cuts:
        mu_u = np.sum(u.weights[np.abs(u.values) > t])
        mu_r = np.sum(r.weights[r.values > t])
        assert mu_u == pytest.approx(mu_r, rel=1e-12)


def test_rearrangement_carries_weights():
    u = _sf([5.0, -1.0], [0.25, 2.0])
    r = ra.rearrangement(u)
    assert list(r.values) == [5.0, 1.0]
    assert list(r.weights) == [0.25, 2.0]


# ---------------------------------------------------------------------------
# Luxemburg norms
# ---------------------------------------------------------------------------

def test_constant_on_unit_measure():
    u = _sf([3.0, 3.0], [0.5, 0.5])
    assert ra.norm(PowerYoung(2), u) == pytest.approx(3.0, rel=1e-9)


def test_indicator_is_essential_sup():
    u = _sf([1.0, -7.0, 4.0], [0.2, 0.5, 0.3])
    assert ra.norm(IndicatorYoung(1.0), u) == pytest.approx(7.0, rel=1e-10)


def test_modular_at_the_norm(catalog):
    rng = np.random.default_rng(0)
    for name in ("L1", "L2", "LlogL", "expL"):
        A = catalog[name]
        u = _sf(rng.standard_normal(64) * 3, rng.uniform(0.05, 0.4, 64))
        lx = ra.luxemburg(A, u)
        mod = float(np.sum(u.weights * A.value(np.abs(u.values) / lx.value)))
        assert mod <= 1.0 + 1e-9
        assert mod >= 1.0 - 1e-6


def test_zero_function():
    u = _sf([0.0, 0.0])
    assert ra.norm(PowerYoung(2), u) == 0.0


def test_equimeasurability_preserves_norm(catalog):
    rng = np.random.default_rng(7)
    names = ("L1", "L2", "LlogL", "expL", "Linf")
    for name in names:
        A = catalog[name]
        for _ in range(20):
            n = int(rng.integers(4, 300))
            u = _sf(rng.standard_normal(n) * rng.uniform(0.1, 8),
                    rng.uniform(0.01, 1.0, n))
            n1 = ra.norm(A, u)
            n2 = ra.norm(A, ra.rearrangement(u))
            assert n2 == pytest.approx(n1, rel=1e-8), name


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-50, 50), min_size=1, max_size=40),
       st.floats(0.1, 20.0))
def test_homogeneity(vals, c):
    A = PowerYoung(1.5)
    u = _sf(vals)
    assert ra.norm(A, _sf(np.asarray(vals) * c)) == pytest.approx(
        c * ra.norm(A, u), rel=1e-8, abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.floats(-20, 20), st.floats(-20, 20)),
                min_size=2, max_size=30))
def test_triangle_inequality(pairs):
    A = young.LinearLogYoung()
    a = _sf([p[0] for p in pairs])
    b = _sf([p[1] for p in pairs])
    s = _sf([p[0] + p[1] for p in pairs])
    assert ra.norm(A, s) <= ra.norm(A, a) + ra.norm(A, b) + 1e-8


def test_pointwise_monotonicity(catalog):
    rng = np.random.default_rng(5)
    w = rng.uniform(0.1, 1.0, 50)
    v = rng.standard_normal(50) * 4
    u = v * rng.uniform(0.0, 1.0, 50)
    for name in ("L2", "LlogL", "expL"):
        A = catalog[name]
        assert ra.norm(A, _sf(u, w)) <= ra.norm(A, _sf(v, w)) + 1e-10, name


def test_global_domination_gives_embedding_constant():
    # B(t) <= A(C t) globally => ||u||_B <= C ||u||_A
    A = PowerYoung(2)
    B = young.ScaledYoung(2.0, PowerYoung(2))
    v = young.dominates(A, B, near_infinity=False)
    assert v.holds
    rng = np.random.default_rng(9)
    for _ in range(10):
        u = _sf(rng.standard_normal(40), rng.uniform(0.1, 1.0, 40))
        assert ra.norm(B, u) <= v.witness_constant * ra.norm(A, u) * (1 + 1e-9)


def test_near_infinity_embedding_bounded(catalog):
    # A dominates B near infinity and |Omega| < inf: the norm ratio stays
    # bounded over a random suite (constant depends on t0 and the measure)
    A, B = catalog["LlogL"], catalog["L1"]
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(25):
        u = _sf(rng.standard_normal(60) * rng.uniform(0.1, 30),
                rng.uniform(0.01, 0.5, 60))
        na, nb = ra.norm(A, u), ra.norm(B, u)
        if na > 0:
            worst = max(worst, nb / na)
    assert worst < 50.0


# ---------------------------------------------------------------------------
# Hoelder duality
# ---------------------------------------------------------------------------

def test_holder_square_pair_attains_two():
    u = _sf(np.linspace(0.5, 3.0, 20))
    r = ra.holder_check(PowerYoung(2), u, u)
    assert r == pytest.approx(2.0, rel=1e-8)
    assert r <= 2.0 + 1e-6


def test_holder_bounded_by_two(catalog):
    rng = np.random.default_rng(11)
    for name in ("L2", "LlogL", "expL", "L1", "L2_log"):
        A = catalog[name]
        for _ in range(15):
            n = int(rng.integers(3, 120))
            w = rng.uniform(0.02, 0.7, n)
            u = _sf(rng.standard_normal(n) * 2, w)
            v = _sf(rng.standard_normal(n) * 3, w)
            try:
                r = ra.holder_check(A, u, v)
            except DegenerateInputError:
                continue
            assert r <= 2.0 + 1e-6, name


def test_holder_zero_input_signals():
    u = _sf([1.0, 2.0])
    z = _sf([0.0, 0.0])
    with pytest.raises(DegenerateInputError):
        ra.holder_check(PowerYoung(2), u, z)


def test_mismatched_weights_rejected():
    u = _sf([1.0, 2.0], [0.5, 0.5])
    v = _sf([1.0, 2.0], [0.3, 0.7])
    with pytest.raises(DomainError):
        ra.holder_check(PowerYoung(2), u, v)
