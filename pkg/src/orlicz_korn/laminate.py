"""Exact laminates on 2x2 matrices, their blow-up diagnostics, and a
piecewise-affine field realization.

The measure family lives on off-diagonal matrices G(a, b) = [[0, a], [b, 0]].
Starting from a Dirac at G(t, t), each construction level splits off one
skew-leaning atom by a rank-one move in the b-coordinate (weight 1/3) and one
by a rank-one move in the a-coordinate (weight 1/4 of the remainder), leaving
half the mass on the previous-level measure; after m levels the average is
exactly G(t/2^m, t/2^m) and the atom count is 2m + 1.  All weights and atom
coordinates are kept as exact rationals (dyadic over 3 * 2^m), so the blow-up
diagnostics are immune to float cancellation at scale 2^-m.

The realization builds the classical nested sawtooth with transverse cutoff
ramps; every oscillation count exact-fits its interval, so the only
deviations from the ideal gradient distribution are the ramp layers of
measure O(1/depth), and the field's moments are computed by a recursion that
integrates those layers explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .fields import Grid, GridField
from .young import DomainError, YoungFunction

__all__ = ["Matrix2", "Laminate", "build_laminate", "build_laminate_recursive",
           "moment", "blowup_curve", "realize_field", "LaminateRealization",
           "korn_suite_fields"]

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class Matrix2:
    a11: float
    a12: float
    a21: float
    a22: float

    @classmethod
    def off_diagonal(cls, a: float, b: float) -> "Matrix2":
        return cls(0.0, float(a), float(b), 0.0)

    @property
    def array(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a21, self.a22]])

    def sym(self) -> "Matrix2":
        s = 0.5 * (self.a12 + self.a21)
        return Matrix2(self.a11, s, s, self.a22)

    @property
    def is_symmetric(self) -> bool:
        return self.a12 == self.a21

    @property
    def is_skew(self) -> bool:
        return self.a11 == 0.0 and self.a22 == 0.0 and self.a12 == -self.a21

    def norm(self) -> float:
        return math.hypot(math.hypot(self.a11, self.a12),
                          math.hypot(self.a21, self.a22))

    def __sub__(self, other):
        return Matrix2(self.a11 - other.a11, self.a12 - other.a12,
                       self.a21 - other.a21, self.a22 - other.a22)


@dataclass(frozen=True)
class Laminate:
    """Finitely supported probability measure on off-diagonal matrices.

    atoms are (weight, alpha, beta), all exact Fractions; the matrix of an
    atom is G(alpha * scale, beta * scale).
    """

    atoms: tuple
    order: int
    scale: float

    def matrices(self):
        return [Matrix2.off_diagonal(float(al) * self.scale, float(be) * self.scale)
                for _, al, be in self.atoms]

    def weights_float(self) -> np.ndarray:
        return np.array([float(w) for w, _, _ in self.atoms])

    @property
    def mass(self) -> Fraction:
        return sum((w for w, _, _ in self.atoms), Fraction(0))

    def barycenter_coeffs(self) -> tuple:
        a = sum((w * al for w, al, _ in self.atoms), Fraction(0))
        b = sum((w * be for w, _, be in self.atoms), Fraction(0))
        return a, b

    def average(self) -> Matrix2:
        a, b = self.barycenter_coeffs()
        return Matrix2.off_diagonal(float(a) * self.scale, float(b) * self.scale)


def build_laminate(m: int, t: float) -> Laminate:
    """Closed-form atom list: weight 2^-m at G(t, t) plus, for k = 1..m,
    weight (1/3) 2^(k-m) at G(2^-k t, -2^-k t) and (1/6) 2^(k-m) at
    G(-2^(1-k) t, 2^(1-k) t)."""
    if m < 0 or t <= 0:
        raise DomainError("need m >= 0 and t > 0")
    atoms = [(Fraction(1, 2 ** m), Fraction(1), Fraction(1))]
    for k in range(1, m + 1):
        wk = Fraction(2 ** k, 2 ** m)
        atoms.append((wk / 3, Fraction(1, 2 ** k), -Fraction(1, 2 ** k)))
        atoms.append((wk / 6, -Fraction(2, 2 ** k), Fraction(2, 2 ** k)))
    return Laminate(tuple(atoms), m, float(t))


def build_laminate_recursive(m: int, t: float) -> Laminate:
    """Same measure via the level recursion: at level j the previous measure
    keeps weight 1/2 and two skew atoms at scale 2^-j enter with weights 1/3
    and 1/6 (cross-check for the closed form)."""
    if m < 0 or t <= 0:
        raise DomainError("need m >= 0 and t > 0")
    atoms = {(Fraction(1), Fraction(1)): Fraction(1)}
    for j in range(1, m + 1):
        nxt = {}
        for key, w in atoms.items():
            nxt[key] = nxt.get(key, Fraction(0)) + w * Fraction(1, 2)
        a1 = (Fraction(1, 2 ** j), -Fraction(1, 2 ** j))
        a2 = (-Fraction(2, 2 ** j), Fraction(2, 2 ** j))
        nxt[a1] = nxt.get(a1, Fraction(0)) + Fraction(1, 3)
        nxt[a2] = nxt.get(a2, Fraction(0)) + Fraction(1, 6)
        atoms = nxt
    ordered = sorted(atoms.items(), key=lambda kv: (-kv[0][0], -kv[0][1]))
    return Laminate(tuple((w, al, be) for (al, be), w in ordered), m, float(t))


def moment(L: Laminate, Phi) -> float:
    """sum of w * Phi(atom matrix); weights exact, summed with fsum."""
    return math.fsum(float(w) * float(Phi(Matrix2.off_diagonal(
        float(al) * L.scale, float(be) * L.scale)))
        for w, al, be in L.atoms)


def _moment_vs_average(L: Laminate, f) -> float:
    """sum w * f(|coeff distance to barycenter|) with the distance computed
    in exact rationals before the float norm."""
    abar, bbar = L.barycenter_coeffs()
    total = []
    for w, al, be in L.atoms:
        d = math.hypot(float(al - abar), float(be - bbar)) * L.scale
        total.append(float(w) * f(d))
    return math.fsum(total)


def blowup_curve(A: YoungFunction, B: YoungFunction, m_max: int,
                 r: float) -> list:
    """Rows (m, t_m, sym_moment, full_moment, ratio) with t_m normalizing the
    symmetric-part moment: r^2 2^-m A(2 |G(t_m, t_m)|) = 1/2.

    For pairs violating the primal balance condition the ratio column grows
    without bound in m; for admissible pairs it stays bounded.
    """
    if not A.finite_valued:
        raise DomainError("the scale choice needs a finite-valued, invertible "
                          "function on the deviatoric side")
    rows = []
    for m in range(0, m_max + 1):
        target = 2.0 ** (m - 1) / r ** 2
        t_m = float(A.inverse(target)) / (2.0 * SQRT2)
        if not (t_m > 0 and math.isfinite(t_m)):
            raise DomainError(f"no finite scale solves the normalization at m={m}")
        L = build_laminate(m, t_m)
        abar, _ = L.barycenter_coeffs()
        sym = []
        full = []
        for w, al, be in L.atoms:
            # symmetric parts: only the G(t, t) atom is symmetric, the rest
            # are skew, so X^sym is either the atom itself or zero
            if al == -be:
                dsym = math.hypot(float(abar), float(abar)) * t_m
            else:
                dsym = math.hypot(float(al - abar), float(be - abar)) * t_m
            dfull = math.hypot(float(al - abar), float(be - abar)) * t_m
            sym.append(float(w) * float(A(np.asarray(dsym))))
            full.append(float(w) * float(B(np.asarray(dfull))))
        sym_m = math.fsum(sym)
        full_m = math.fsum(full)
        if sym_m > 0:
            ratio = full_m / sym_m
        else:
            ratio = 0.0 if full_m == 0.0 else math.inf
        rows.append({"m": m, "t_m": t_m, "sym_moment": sym_m,
                     "full_moment": full_m, "ratio": ratio})
    return rows


# ---------------------------------------------------------------------------
# realization as piecewise-affine fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Stage:
    axis: int          # oscillation axis (0 or 1)
    comp: int          # displacement component receiving the correction
    lam: float         # measure fraction of the split-off atom
    delta: float       # gradient jump entry (atom = parent + (1-lam)*delta*E)
    parent: np.ndarray # 2x2 average before this split
    atom: np.ndarray   # 2x2 split-off atom value
    period: float
    ramp: float        # transverse cutoff width
    osc_len: float     # oscillation interval length
    trans_len: float   # transverse interval length


def _plan_stages(m: int, t: float, r: float, depth: int) -> list:
    """Alternating-direction split plan; every period exact-fits its
    interval and each stage refines the transverse scale by ``depth``."""
    stages = []
    lx, ly = r, r
    for level in range(m, 0, -1):
        s = t * 2.0 ** (-level)
        # split 1: average G(s, s) -> atom G(s, -s) (w 1/3) + G(s, 2s)
        parent = np.array([[0.0, s], [s, 0.0]])
        atom = np.array([[0.0, s], [-s, 0.0]])
        lam, delta = 1.0 / 3.0, -3.0 * s
        n = max(1, round(lx / min(ly / depth, lx)))
        p = lx / n
        w = min(p / 4.0, ly / 8.0)
        stages.append(_Stage(0, 1, lam, delta, parent, atom, p, w, lx, ly))
        lx, ly = (1.0 - lam) * p, ly - 2.0 * w
        # split 2: average G(s, 2s) -> atom G(-2s, 2s) (w 1/4) + G(2s, 2s)
        parent = np.array([[0.0, s], [2.0 * s, 0.0]])
        atom = np.array([[0.0, -2.0 * s], [2.0 * s, 0.0]])
        lam, delta = 1.0 / 4.0, -4.0 * s
        n = max(1, round(ly / min(lx / depth, ly)))
        p = ly / n
        w = min(p / 4.0, lx / 8.0)
        stages.append(_Stage(1, 0, lam, delta, parent, atom, p, w, ly, lx))
        ly, lx = (1.0 - lam) * p, lx - 2.0 * w
    return stages


def _profile(eta: np.ndarray, lam: float, p: float) -> np.ndarray:
    """Sawtooth with slopes (1-lam) on the atom part and -lam on the rest."""
    split = lam * p
    return np.where(eta < split, (1.0 - lam) * eta, lam * (p - eta))


class LaminateRealization:
    """Nested-sawtooth displacement whose gradients realize the laminate.

    ``displacement`` evaluates v = u - average x (vanishing on the boundary);
    ``moment`` integrates Phi(grad u) over the square exactly up to the
    quadrature of the ramp layers; ``as_grid_field`` samples v on a grid.
    """

    def __init__(self, L: Laminate, r: float, depth: int):
        if L.order < 0 or depth < 4:
            raise DomainError("need order >= 0 and depth >= 4")
        self.laminate = L
        self.r = float(r)
        self.depth = int(depth)
        self.stages = _plan_stages(L.order, L.scale, r, depth)
        abar, bbar = L.barycenter_coeffs()
        self.average = np.array([[0.0, float(abar) * L.scale],
                                 [float(bbar) * L.scale, 0.0]])
        self.final = np.array([[0.0, L.scale], [L.scale, 0.0]])

    # -- pointwise displacement -------------------------------------------
    def displacement(self, x: np.ndarray, y: np.ndarray) -> tuple:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        vx = np.zeros_like(x)
        vy = np.zeros_like(x)
        xi = [x.copy(), y.copy()]
        active = np.ones(x.shape, dtype=bool)
        scale = np.ones(x.shape)
        for st in self.stages:
            d, tax = st.axis, 1 - st.axis
            eta = np.mod(xi[d], st.period)
            chi = np.clip(np.minimum(xi[tax], st.trans_len - xi[tax]) / st.ramp,
                          0.0, 1.0)
            phi = _profile(eta, st.lam, st.period)
            corr = np.where(active, scale * chi * phi * st.delta, 0.0)
            if st.comp == 0:
                vx += corr
            else:
                vy += corr
            legacy = eta >= st.lam * st.period
            core = (xi[tax] >= st.ramp) & (xi[tax] <= st.trans_len - st.ramp)
            active = active & legacy & core
            scale = np.where(active, scale * chi, scale)
            xi[d] = eta - st.lam * st.period
            xi[tax] = xi[tax] - st.ramp
        return vx, vy

    # -- moments of the realized gradient ----------------------------------
    def moment(self, Phi, quad: int = 48) -> float:
        """integral over (0, r)^2 of Phi(grad u), by exact region accounting
        plus midpoint quadrature over the ramp layers."""
        return self.r ** 2 * self._stage_moment(0, Phi, quad)

    def _stage_moment(self, j: int, Phi, quad: int) -> float:
        if j >= len(self.stages):
            return float(Phi(self.final))
        st = self.stages[j]
        kappa = 2.0 * st.ramp / st.trans_len
        atom_val = float(Phi(st.atom))
        legacy_val = self._stage_moment(j + 1, Phi, quad)
        core = (1.0 - kappa) * (st.lam * atom_val + (1.0 - st.lam) * legacy_val)
        # ramp layer: grad = parent + chi phi' R + chi' phi C over one period
        etas = (np.arange(quad) + 0.5) * (st.period / quad)
        xis = (np.arange(quad) + 0.5) * (st.ramp / quad)
        E, X = np.meshgrid(etas, xis, indexing="ij")
        chi = X / st.ramp
        dchi = 1.0 / st.ramp
        phi = _profile(E, st.lam, st.period)
        dphi = np.where(E < st.lam * st.period, 1.0 - st.lam, -st.lam)
        G = np.zeros(E.shape + (2, 2))
        G[..., :, :] = st.parent
        G[..., st.comp, st.axis] += chi * dphi * st.delta
        G[..., st.comp, 1 - st.axis] += dchi * phi * st.delta
        ramp_avg = float(np.mean(Phi(G)))
        return core + kappa * ramp_avg

    # -- gradient histogram ------------------------------------------------
    def gradient_region_fractions(self) -> dict:
        """Measure fractions of the clean atom regions vs ramp layers."""
        out = {"ramp": 0.0}
        weight = 1.0
        for k, st in enumerate(self.stages):
            kappa = 2.0 * st.ramp / st.trans_len
            out["ramp"] += weight * kappa
            out[f"atom_{k}"] = weight * (1.0 - kappa) * st.lam
            weight *= (1.0 - kappa) * (1.0 - st.lam)
        out["final"] = weight
        return out

    # -- sampling ------------------------------------------------------------
    def as_grid_field(self, cells: int = 512) -> GridField:
        grid = Grid.box((cells, cells), lengths=self.r, origin=(0.0, 0.0))
        X = grid.node_coords()
        vx, vy = self.displacement(X[0], X[1])
        for c in (vx, vy):
            c[0, :] = 0.0
            c[-1, :] = 0.0
            c[:, 0] = 0.0
            c[:, -1] = 0.0
        return GridField(grid, [vx, vy], boundary_flag=True)


def realize_field(L: Laminate, r: float, depth: int) -> LaminateRealization:
    """Realize the laminate as a Lipschitz displacement on (0, r)^2."""
    return LaminateRealization(L, r, depth)


def korn_suite_fields(m_max: int = 3, cells: int = 1024, depth: int = 5,
                      t: float = 1.0, r: float = 1.0) -> list:
    """Sampled laminate displacements for the Korn harness, m = 1..m_max."""
    out = []
    for m in range(1, m_max + 1):
        real = realize_field(build_laminate(m, t), r, depth)
        out.append(real.as_grid_field(cells))
    return out


def exact_korn_l1_ratio(m: int, depth: int = 64, t: float = 1.0,
                        r: float = 1.0) -> float:
    """||grad v||_1 / ||E v||_1 of the realized displacement, by the exact
    gradient-region quadrature (resolution-independent, so it tracks the
    blow-up to orders the sampled fields cannot resolve)."""
    real = realize_field(build_laminate(m, t), r, depth)
    avg = real.average

    def full(Ms):
        M = Ms.array if isinstance(Ms, Matrix2) else Ms
        return np.linalg.norm(M - avg, axis=(-2, -1))

    def symp(Ms):
        M = Ms.array if isinstance(Ms, Matrix2) else Ms
        S = 0.5 * (M + np.swapaxes(M, -1, -2)) - avg
        return np.linalg.norm(S, axis=(-2, -1))

    den = real.moment(symp)
    return real.moment(full) / den
