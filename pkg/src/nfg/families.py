"""Parametric two-mode families and comparison measures.

The symmetric squeezed thermal states (SSTS) form a two-parameter family
with standard form a = b = 1 + 2*n_bar and c = -d = 2*mu*sqrt(n_bar*(1+n_bar));
mu = 1 gives the two-mode squeezed vacuum.  For this family the correlation
measure, the geometric discord D_G and the average-distance measure Q all
have closed forms, implemented here in rearranged shapes that survive
n_bar up to ~1e13 without catastrophic cancellation:

with t = 1 + 2*n_bar, eps = 1/t^2, u = mu^2, us = u*(1 - eps) and
P = (1-mu)(1+mu) + u*eps  (an exact rewrite of 1 - us):

    nfg = us * (P + Q) / (2 Q^2),            Q = 1 - us/2
    dg  = 6 us eps / (P (2 + sqrt(W)) (1 + sqrt(W))),   W = (4 - 3u) + 3u*eps
    q   = 2 n_bar u / ((1 + 2 n_bar (1-mu)(1+mu)) (1 + 2 n_bar))

Every factor is positive and bounded away from cancellation on the whole
parameter range, so the values degrade gracefully to the n_bar -> infinity
limits (eps -> 0) instead of losing digits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import GaussianState, StandardFormParams, state_from_params

__all__ = [
    "SstsParams",
    "SweepGrid",
    "SweepRow",
    "dg_ssts",
    "nfg_ssts",
    "nfg_ssts_limit",
    "q_ssts",
    "ssts",
    "sweep",
    "tmsv",
]


@dataclass(frozen=True)
class SstsParams:
    """Symmetric squeezed thermal state parameters.

    ``n_bar`` is the mean photon number of each reduced mode, ``mu`` the
    mixing parameter: 0 gives a product of thermal states, 1 the two-mode
    squeezed vacuum.
    """

    n_bar: float
    mu: float

    def __post_init__(self):
        if not (np.isfinite(self.n_bar) and self.n_bar >= 0.0):
            raise ValueError(f"n_bar must be finite and >= 0, got {self.n_bar}")
        if not (np.isfinite(self.mu) and 0.0 <= self.mu <= 1.0):
            raise ValueError(f"mu must lie in [0, 1], got {self.mu}")


def ssts(p: SstsParams) -> GaussianState:
    """The symmetric squeezed thermal state as a zero-mean (1+1)-mode state."""
    a = 1.0 + 2.0 * p.n_bar
    c = 2.0 * p.mu * np.sqrt(p.n_bar * (1.0 + p.n_bar))
    return state_from_params(StandardFormParams(a, a, c, -c))


def tmsv(r: float) -> GaussianState:
    """Two-mode squeezed vacuum with squeeze parameter r >= 0.

    Diagonal entries cosh(2r), cross block diag(sinh 2r, -sinh 2r); equals
    ssts(n_bar = sinh^2 r, mu = 1).
    """
    if not (np.isfinite(r) and r >= 0.0):
        raise ValueError(f"squeeze parameter must be finite and >= 0, got {r}")
    ch, sh = np.cosh(2.0 * r), np.sinh(2.0 * r)
    return state_from_params(StandardFormParams(ch, ch, sh, -sh))


def _split(p: SstsParams) -> tuple[float, float, float, float]:
    """Common stable ingredients (eps, u, us, P) of the closed forms."""
    t = 1.0 + 2.0 * p.n_bar
    eps = 1.0 / (t * t)
    u = p.mu * p.mu
    us = u * (1.0 - eps)
    big_p = (1.0 - p.mu) * (1.0 + p.mu) + u * eps  # = 1 - us, cancellation-free
    return eps, u, us, big_p


def _nfg_from_us(us: float, big_p: float) -> float:
    q = 1.0 - 0.5 * us
    return us * (big_p + q) / (2.0 * q * q)


def nfg_ssts(p: SstsParams) -> float:
    """Correlation measure of the SSTS, closed form.

    Algebraically 1 - (1-us)^2/(1-us/2)^2 with us as in the module notes;
    evaluated as us*(P+Q)/(2Q^2), which is exact at mu = 0 and keeps full
    precision as n_bar -> infinity.
    """
    _, _, us, big_p = _split(p)
    return _nfg_from_us(us, big_p)


def dg_ssts(p: SstsParams) -> float:
    """Gaussian geometric discord of the SSTS, closed form.

    Algebraically 1/(t^2 - 4 mu^2 n(1+n)) - 9/(sqrt(4t^2 - 12 mu^2 n(1+n)) + t)^2
    with t = 1+2n; rearranged to the positive product in the module notes,
    whose factors never cancel (the raw difference loses all digits once the
    two terms agree to ~1e-16, which happens already at moderate n_bar).
    """
    eps, u, us, big_p = _split(p)
    root_w = np.sqrt((4.0 - 3.0 * u) + 3.0 * u * eps)
    return 6.0 * us * eps / (big_p * (2.0 + root_w) * (1.0 + root_w))


def q_ssts(p: SstsParams) -> float:
    """Average-distance measure of the SSTS, closed form.

    Algebraically 1/(1 + 2 n_bar (1-mu^2)) - 1/(1 + 2 n_bar), evaluated over
    the common denominator so nothing cancels.
    """
    n, u = p.n_bar, p.mu * p.mu
    omu = (1.0 - p.mu) * (1.0 + p.mu)
    return 2.0 * n * u / ((1.0 + 2.0 * n * omu) * (1.0 + 2.0 * n))


def nfg_ssts_limit(mu: float) -> float:
    """Large-n_bar limit of nfg_ssts: 1 - (1-mu^2)^2/(1-mu^2/2)^2, mu in (0,1).

    Shares the nfg_ssts code path at eps = 0, so finite-n_bar values converge
    to this limit to the last float digit.
    """
    if not (np.isfinite(mu) and 0.0 < mu < 1.0):
        raise ValueError(f"mu must lie in the open interval (0, 1), got {mu}")
    u = mu * mu
    return _nfg_from_us(u, (1.0 - mu) * (1.0 + mu))


@dataclass(frozen=True)
class SweepGrid:
    """Rectangular (n_bar, mu) grid specification with inclusive bounds."""

    n_bar_min: float
    n_bar_max: float
    n_bar_steps: int
    mu_min: float
    mu_max: float
    mu_steps: int

    def __post_init__(self):
        bounds = [self.n_bar_min, self.n_bar_max, self.mu_min, self.mu_max]
        if not all(np.isfinite(b) for b in bounds):
            raise ValueError("grid bounds must be finite")
        if self.n_bar_steps < 1 or self.mu_steps < 1:
            raise ValueError("grid needs at least one step per axis")
        if self.n_bar_max < self.n_bar_min or self.mu_max < self.mu_min:
            raise ValueError("grid bounds must be monotone (max >= min)")


@dataclass(frozen=True)
class SweepRow:
    """One grid point with all measures and their pairwise differences."""

    n_bar: float
    mu: float
    nfg: float
    dg: float
    q: float
    nfg_minus_dg: float
    nfg_minus_q: float


def sweep(grid: SweepGrid) -> list[SweepRow]:
    """Evaluate all closed forms on the grid, n_bar outer, mu inner.

    The difference columns are computed from the value columns of the same
    row, so they agree with them exactly.
    """
    n_axis = np.linspace(grid.n_bar_min, grid.n_bar_max, grid.n_bar_steps)
    mu_axis = np.linspace(grid.mu_min, grid.mu_max, grid.mu_steps)
    rows = []
    for n in n_axis:
        for mu in mu_axis:
            p = SstsParams(float(n), float(mu))
            nfg, dg, q = nfg_ssts(p), dg_ssts(p), q_ssts(p)
            rows.append(SweepRow(p.n_bar, p.mu, nfg, dg, q, nfg - dg, nfg - q))
    return rows
