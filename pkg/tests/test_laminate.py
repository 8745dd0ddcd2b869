import math
from fractions import Fraction

import numpy as np
import pytest

from orlicz_korn import fields, laminate, young
from orlicz_korn.laminate import (
    Matrix2, blowup_curve, build_laminate, build_laminate_recursive,
    exact_korn_l1_ratio, moment, realize_field,
)
from orlicz_korn.young import DomainError, PowerYoung


@pytest.fixture(scope="module")
def catalog():
    return young.load_catalog()


def _frob(M):
    arr = M.array if isinstance(M, Matrix2) else M
    return np.linalg.norm(arr, axis=(-2, -1))


# ---------------------------------------------------------------------------
# exact measure bookkeeping
# ---------------------------------------------------------------------------

def test_matrix2_flags():
    assert Matrix2.off_diagonal(1.0, 1.0).is_symmetric
    assert Matrix2.off_diagonal(1.0, -1.0).is_skew
    assert not Matrix2.off_diagonal(1.0, 0.5).is_symmetric


def test_order_zero_is_dirac():
    L = build_laminate(0, 2.0)
    assert len(L.atoms) == 1
    w, a, b = L.atoms[0]
    assert w == 1 and a == 1 and b == 1


def test_order_one_atoms():
    L = build_laminate(1, 1.0)
    atoms = {(a, b): w for w, a, b in L.atoms}
    assert atoms[(Fraction(1), Fraction(1))] == Fraction(1, 2)
    assert atoms[(Fraction(1, 2), Fraction(-1, 2))] == Fraction(1, 3)
    assert atoms[(Fraction(-1), Fraction(1))] == Fraction(1, 6)


def test_exact_mass_barycenter_atom_count():
    for m in range(13):
        L = build_laminate(m, 3.0)
        assert L.mass == 1
        a, b = L.barycenter_coeffs()
        assert a == Fraction(1, 2 ** m) and b == Fraction(1, 2 ** m)
        assert len(L.atoms) == 2 * m + 1


def test_recursion_matches_closed_form():
    for m in range(13):
        A = sorted(build_laminate(m, 1.0).atoms)
        B = sorted(build_laminate_recursive(m, 1.0).atoms)
        assert A == B


def test_skew_concentration():
    for m in (1, 4, 9):
        L = build_laminate(m, 1.5)
        sym_atoms = [(w, a, b) for w, a, b in L.atoms if a != -b]
        assert len(sym_atoms) == 1
        assert sym_atoms[0][1] == 1 and sym_atoms[0][2] == 1


# ---------------------------------------------------------------------------
# moments
# ---------------------------------------------------------------------------

def test_total_mass_moment():
    L = build_laminate(5, 0.7)
    assert moment(L, lambda M: 1.0) == pytest.approx(1.0, abs=1e-15)


def test_symmetric_part_moment_chain():
    # the symmetric-part first moment is controlled by 2^-m * 2 |G(t,t)|
    t = 1.0
    for m in range(1, 11):
        L = build_laminate(m, t)
        val = moment(L, lambda M: _frob(M.sym().array))
        bound = 2.0 ** (-m) * 2.0 * _frob(Matrix2.off_diagonal(t, t).array)
        assert val <= bound + 1e-14


def test_centered_first_moment_lower_bound():
    # the full first moment around the average grows like m 2^-m
    t = 1.0
    for m in range(2, 13):
        L = build_laminate(m, t)
        abar, bbar = L.barycenter_coeffs()
        val = moment(L, lambda M: _frob(
            M.array - Matrix2.off_diagonal(float(abar), float(bbar)).array))
        assert val >= 0.2 * m * 2.0 ** (-m)


# ---------------------------------------------------------------------------
# blow-up diagnostics
# ---------------------------------------------------------------------------

def test_blowup_linear_pair_grows(catalog):
    rows = blowup_curve(catalog["L1"], catalog["L1"], 10, 1.0)
    ratios = [r["ratio"] for r in rows]
    assert all(ratios[m + 1] > ratios[m] for m in range(2, 8))
    ms = np.arange(1, 11)
    ys = np.array(ratios[1:])
    A = np.vstack([ms, np.ones_like(ms)]).T
    coef, res, *_ = np.linalg.lstsq(A, ys, rcond=None)
    r2 = 1.0 - float(res[0]) / float(np.sum((ys - ys.mean()) ** 2))
    assert coef[0] > 0.1
    assert r2 > 0.95


def test_blowup_square_pair_bounded(catalog):
    rows = blowup_curve(catalog["L2"], catalog["L2"], 10, 1.0)
    ratios = [r["ratio"] for r in rows[1:]]
    assert max(ratios) <= min(ratios) * 1.05


def test_blowup_scale_doubling_control(catalog):
    rows = blowup_curve(catalog["L1"], catalog["L1"], 12, 1.0)
    for a, b in zip(rows[4:], rows[5:]):
        assert b["t_m"] <= 2.0 * a["t_m"] * (1 + 1e-12)


def test_blowup_order_zero_defined(catalog):
    rows = blowup_curve(catalog["L1"], catalog["L1"], 0, 1.0)
    assert len(rows) == 1
    assert rows[0]["ratio"] == 0.0


def test_blowup_rejects_indicator(catalog):
    with pytest.raises(DomainError):
        blowup_curve(catalog["Linf"], catalog["L1"], 3, 1.0)


# ---------------------------------------------------------------------------
# realization
# ---------------------------------------------------------------------------

def test_realization_order_zero_affine():
    real = realize_field(build_laminate(0, 1.0), 1.0, 8)
    u = real.as_grid_field(32)
    assert max(abs(c).max() for c in u.components) < 1e-12


def test_realization_moment_convergence_depth64():
    phis = {
        "full": lambda M: _frob(M),
        "square": lambda M: _frob(M) ** 2,
        "sym": lambda M: _frob(0.5 * ((M.array if isinstance(M, Matrix2) else M)
                                      + np.swapaxes(np.atleast_2d(
                                          M.array if isinstance(M, Matrix2) else M),
                                          -1, -2))),
    }
    for m in (1, 2, 3):
        L = build_laminate(m, 1.0)
        real = realize_field(L, 1.0, 64)
        for name, phi in phis.items():
            exact = moment(L, phi)
            realized = real.moment(phi)
            assert realized == pytest.approx(exact, rel=0.05), (m, name)


def test_realization_moment_improves_with_depth():
    L = build_laminate(1, 1.0)
    phi = lambda M: _frob(M)
    exact = moment(L, phi)
    gaps = [abs(realize_field(L, 1.0, d).moment(phi) - exact) for d in (8, 64)]
    assert gaps[1] < gaps[0]


def test_realization_ramp_layer_small():
    real = realize_field(build_laminate(3, 1.0), 1.0, 64)
    fracs = real.gradient_region_fractions()
    assert fracs["ramp"] <= 6.0 / 64.0


def test_realization_gradient_histogram():
    # sampled finite differences land near the atom values outside the ramps
    m = 1
    L = build_laminate(m, 1.0)
    real = realize_field(L, 1.0, 8)
    u = real.as_grid_field(1024)
    G = fields.gradient(u)
    avg = real.average
    vals = np.stack([np.stack([G.entries[i][j] for j in range(2)], -1)
                     for i in range(2)], -2) + avg
    atom_mats = [M.array for M in L.matrices()]
    d = np.min(np.stack([_frob(vals - am) for am in atom_mats]), axis=0)
    near = float(np.mean(d < 0.05 * _frob(atom_mats[0])))
    assert near > 0.8


def test_realization_boundary_zero():
    real = realize_field(build_laminate(2, 1.0), 1.0, 16)
    u = real.as_grid_field(256)
    assert u.boundary_flag and u.boundary_is_zero()


def test_sampled_korn_ratio_grows_then_exact_tracks(catalog):
    sampled = []
    for m in (1, 2):
        real = realize_field(build_laminate(m, 1.0), 1.0, 5)
        u = real.as_grid_field(1024)
        sampled.append(fields.korn_ratio(catalog["L1"], catalog["L1"], u,
                                         "zero_bc", "E"))
    assert sampled[1] > sampled[0]
    exact = [exact_korn_l1_ratio(m) for m in range(1, 9)]
    assert all(b > a for a, b in zip(exact, exact[1:]))
    assert sampled[0] == pytest.approx(exact[0], rel=0.15)
