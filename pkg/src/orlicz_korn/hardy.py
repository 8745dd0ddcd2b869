"""Averaging and dual Hardy operators on step functions over (0, L).

Both operators are evaluated exactly on step functions (prefix sums, and
suffix sums with per-cell log weights); outputs are sampled at cell midpoints
and carry the original cell weights, so only the Luxemburg bisection
tolerance enters downstream norm ratios.

The empirical verification runs a fixed, versioned trial family (random
steps, power spikes, log spikes, certificate-derived profiles) and reports
the worst ratio per operator, plus a spike-sharpness sweep whose growth
witnesses unboundedness when the balance conditions fail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import balance, rearrange
from .rearrange import SampledFunction
from .young import DomainError, YoungFunction

__all__ = ["StepFunction", "HardyTrial", "HardyReport", "averaging_operator",
           "dual_operator", "verify_hardy", "rearrangement_reduction_check",
           "step_on_interval", "spike", "TRIAL_FAMILY_VERSION"]

TRIAL_FAMILY_VERSION = 1


@dataclass(frozen=True)
class StepFunction:
    """Step function on (0, L): value values[i] on (edges[i], edges[i+1])."""

    edges: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.edges, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if e.ndim != 1 or len(e) != len(v) + 1:
            raise DomainError("need len(edges) == len(values) + 1")
        if e[0] < 0 or np.any(np.diff(e) <= 0):
            raise DomainError("edges must be nonnegative and increasing")
        object.__setattr__(self, "edges", e)
        object.__setattr__(self, "values", v)

    @property
    def length(self) -> float:
        return float(self.edges[-1])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def midpoints(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    def sampled(self) -> SampledFunction:
        return SampledFunction(self.values, self.widths)


def step_on_interval(L: float, values, n: float | None = None) -> StepFunction:
    values = np.asarray(values, dtype=float)
    edges = np.linspace(0.0, L, len(values) + 1)
    return StepFunction(edges, values)


def _log_edges(L: float, inner: float, per_decade: int = 96) -> np.ndarray:
    """Geometric partition of (0, L) resolving scales down to ``inner``."""
    decades = max(1.0, math.log10(L / inner))
    n = int(decades * per_decade) + 1
    e = np.geomspace(inner, L, n)
    return np.concatenate(([0.0], e))


def spike(L: float, delta: float, per_decade: int = 96) -> StepFunction:
    """f = (1/delta) * indicator(0, delta) on a grid with a breakpoint at delta."""
    lo = _log_edges(delta, delta * 1e-3, per_decade)
    hi = np.geomspace(delta, L, int(math.log10(L / delta) * per_decade) + 2)[1:]
    edges = np.concatenate((lo, hi))
    vals = np.where(0.5 * (edges[:-1] + edges[1:]) <= delta, 1.0 / delta, 0.0)
    return StepFunction(edges, vals)


def averaging_operator(f: StepFunction) -> SampledFunction:
    """s -> (1/s) * integral_0^s f, exact at cell midpoints."""
    w = f.widths
    mids = f.midpoints
    prefix = np.concatenate(([0.0], np.cumsum(w * f.values)))
    upto_mid = prefix[:-1] + f.values * (mids - f.edges[:-1])
    return SampledFunction(upto_mid / mids, w)


def dual_operator(f: StepFunction) -> SampledFunction:
    """s -> integral_s^L f(r) dr / r, exact at cell midpoints (log weights)."""
    e = f.edges
    with np.errstate(divide="ignore"):
        logw = np.log(e[1:]) - np.log(np.maximum(e[:-1], 1e-320))
    cell_full = f.values * logw            # integral over each full cell
    suffix = np.concatenate((np.cumsum(cell_full[::-1])[::-1], [0.0]))
    mids = f.midpoints
    part = f.values * (np.log(e[1:]) - np.log(mids))
    return SampledFunction(suffix[1:] + part, f.widths)


@dataclass
class HardyTrial:
    f: SampledFunction
    L: float
    ratio_avg: float
    ratio_dual: float
    label: str = ""


@dataclass
class HardyReport:
    worst_avg: HardyTrial
    worst_dual: HardyTrial
    trials: list = field(default_factory=list)
    spike_sweep: list = field(default_factory=list)   # (delta, ratio_avg)
    sweep_growing: bool = False
    balance_holds: bool | None = None


def _trial_family(A: YoungFunction, B: YoungFunction, L: float, trials: int,
                  seed: int = 20240) -> list:
    """Versioned trial family: 64 random steps, 16 power spikes, 8 log
    spikes, plus profiles from balance failure certificates."""
    rng = np.random.default_rng(seed)
    fams = []
    n_random = min(64, max(1, trials))
    for i in range(n_random):
        n = int(rng.integers(8, 256))
        vals = np.abs(rng.standard_normal(n)) * rng.uniform(0.2, 5.0)
        fams.append((step_on_interval(L, vals), f"random_step_{i}"))
    for i, theta in enumerate(np.linspace(0.05, 0.92, 16)):
        edges = _log_edges(L, L * 1e-8)
        mids = 0.5 * (edges[:-1] + edges[1:])
        fams.append((StepFunction(edges, mids ** (-theta)), f"power_spike_{i}"))
    for i, k in enumerate(range(1, 9)):
        edges = _log_edges(L, L * 1e-8)
        mids = 0.5 * (edges[:-1] + edges[1:])
        fams.append((StepFunction(edges, np.log(L / mids) ** k), f"log_spike_{i}"))
    report = balance.check_balance(A, B)
    for cond in (report.primal, report.dual):
        for t in cond.failure_certificate[:4]:
            if t and math.isfinite(t) and t > 0:
                delta = max(min(L / 2.0, L / t), L * 1e-9)
                fams.append((spike(L, delta), f"certificate_{t:.3g}"))
    return fams


def _ratios(A, B, f: StepFunction) -> tuple:
    denom = rearrange.norm(A, f.sampled())
    if denom == 0.0:
        return 0.0, 0.0
    r_avg = rearrange.norm(B, averaging_operator(f)) / denom
    r_dual = rearrange.norm(B, dual_operator(f)) / denom
    return r_avg, r_dual


def verify_hardy(A: YoungFunction, B: YoungFunction, L: float = 1.0,
                 trials: int = 64, seed: int = 20240) -> HardyReport:
    """Worst Hardy-operator norm ratios over the fixed trial family, plus a
    spike-sharpness sweep diagnosing unboundedness."""
    if trials < 1:
        raise DomainError("need trials >= 1")
    report = balance.check_balance(A, B)
    out = []
    for f, label in _trial_family(A, B, L, trials, seed):
        ra, rd = _ratios(A, B, f)
        out.append(HardyTrial(f.sampled(), L, ra, rd, label))
    worst_avg = max(out, key=lambda t: t.ratio_avg)
    worst_dual = max(out, key=lambda t: t.ratio_dual)
    sweep = []
    for delta in 10.0 ** np.arange(-1, -6.51, -0.5):
        f = spike(L, delta * L)
        ra, _ = _ratios(A, B, f)
        sweep.append((float(delta * L), float(ra)))
    ratios = [r for _, r in sweep]
    growing = all(b > a * 1.02 for a, b in zip(ratios, ratios[1:]))
    return HardyReport(worst_avg, worst_dual, out, sweep, growing, report.holds)


def rearrangement_reduction_check(A: YoungFunction, B: YoungFunction,
                                  psi: StepFunction,
                                  growth_tol: float = 0.25) -> bool:
    """Check that the averaging-plus-dual majorant of a decreasing profile has
    a finite norm ratio against the profile, stable under sharpening.

    This operationalizes the reduction of the gradient estimate to the two
    one-dimensional operators: for a pair satisfying the balance conditions
    the constant depends only on the balance constant, so the ratio
    ||H psi + H* psi||_B / ||psi||_A stays put when psi is replaced by its
    measure-rescaled sharpening lam * psi(lam s).  A ratio that keeps growing
    along the sharpening sweep returns False.
    """
    if np.any(np.diff(psi.values) > 1e-12):
        raise DomainError("psi must be nonincreasing")
    if np.any(psi.values < 0):
        raise DomainError("psi must be nonnegative")

    def ratio(f: StepFunction) -> float:
        denom = rearrange.norm(A, f.sampled())
        if denom == 0.0:
            return 0.0
        h = averaging_operator(f)
        hd = dual_operator(f)
        combined = SampledFunction(h.values + hd.values, h.weights)
        return rearrange.norm(B, combined) / denom

    def sharpened(lam: float) -> StepFunction:
        # concentrate the profile toward 0 on the same interval (0, L)
        edges = np.concatenate((psi.edges / lam, [psi.length]))
        values = np.concatenate((psi.values * lam, [0.0]))
        return StepFunction(edges, values)

    r1 = ratio(psi)
    if r1 == 0.0:
        return True
    r4 = ratio(sharpened(4.0))
    r16 = ratio(sharpened(16.0))
    if not (math.isfinite(r4) and math.isfinite(r16)):
        return False
    slope = (r16 - r4) / math.log(4.0)
    return slope <= max(growth_tol, 0.02 * r1)
