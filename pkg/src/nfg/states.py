"""Phase-space representation of Gaussian states and symplectic utilities.

Conventions used throughout the package:

* quadrature ordering is (q1, p1, q2, p2, ...);
* covariance matrices (CMs) hold the symmetrized second moments
  ``gamma_kl = <{R_k - <R_k>, R_l - <R_l>}>`` in dimensionless units, so the
  vacuum CM is the identity;
* a CM is physical iff ``Gamma + i*Delta >= 0``, equivalently all of its
  symplectic eigenvalues are >= 1 (for symmetric positive-definite Gamma);
* Gaussian unitaries act as ``Gamma -> S Gamma S^T``, ``d -> S d + m`` with
  ``S`` symplectic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as la

__all__ = [
    "DEFAULT_TOL",
    "GaussianState",
    "GaussianUnitary",
    "StandardFormParams",
    "ValidationReport",
    "WilliamsonDecomposition",
    "apply_gaussian_unitary",
    "blocks",
    "is_symplectic",
    "standard_form",
    "state_from_params",
    "symplectic_form",
    "validate_cm",
    "williamson",
]

#: Default validation tolerance, relative to max|Gamma|.  Double-precision
#: eigen-solves on the small (<= 8x8) matrices handled here are accurate to
#: a few ulps of the matrix scale, so 1e-9 leaves a wide safety margin.
DEFAULT_TOL = 1e-9


def symplectic_form(n: int) -> np.ndarray:
    """Return the 2n x 2n symplectic form, a direct sum of [[0,1],[-1,0]]."""
    if n < 1:
        raise ValueError("mode count must be a positive integer")
    j = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return la.block_diag(*([j] * n))


def _as_square_even(m, name: str) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {m.shape}")
    if m.shape[0] == 0 or m.shape[0] % 2 != 0:
        raise ValueError(f"{name} must have even positive dimension, got {m.shape[0]}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a covariance-matrix physicality check."""

    symmetric: bool
    symplectic_eigenvalues: np.ndarray  # descending
    positive_definite: bool
    physical: bool


def validate_cm(gamma, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check whether `gamma` is a physical covariance matrix.

    The verdict combines three tests: symmetry within ``tol`` (relative to
    max|Gamma|), positive definiteness, and min symplectic eigenvalue
    >= 1 - tol*scale.  Together these are equivalent to Gamma + i*Delta >= 0.
    Symplectic eigenvalues are the moduli of the eigenvalues of i*Delta*Gamma,
    reported once each, in descending order.
    """
    g = _as_square_even(gamma, "covariance matrix")
    scale = max(1.0, float(np.abs(g).max()))
    symmetric = float(np.abs(g - g.T).max()) <= tol * scale
    gs = 0.5 * (g + g.T)
    delta = symplectic_form(g.shape[0] // 2)
    moduli = np.sort(np.abs(np.linalg.eigvals(delta @ gs)))
    nus = moduli[::2][::-1]  # pairs collapse to one entry each, descending
    positive_definite = bool(np.linalg.eigvalsh(gs)[0] > 0.0)
    physical = bool(
        symmetric and positive_definite and nus[-1] >= 1.0 - tol * scale
    )
    nus = nus.copy()
    nus.flags.writeable = False
    return ValidationReport(symmetric, nus, positive_definite, physical)


def is_symplectic(s, tol: float = DEFAULT_TOL) -> bool:
    """True iff max|S Delta S^T - Delta| <= tol."""
    s = _as_square_even(s, "matrix")
    delta = symplectic_form(s.shape[0] // 2)
    return bool(np.abs(s @ delta @ s.T - delta).max() <= tol)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class GaussianState:
    """A Gaussian state: covariance matrix, mean vector, and an A|B partition.

    ``cm`` is 2(n_a+n_b) x 2(n_a+n_b) with the block layout
    ``[[A, C], [C^T, B]]`` where A covers the first 2*n_a rows.  ``mean``
    defaults to zero.  Construction validates physicality and freezes the
    arrays; instances are immutable and safe to share between threads.
    """

    cm: np.ndarray
    n_a: int
    n_b: int
    mean: np.ndarray | None = None

    def __post_init__(self):
        if self.n_a < 0 or self.n_b < 0 or self.n_a + self.n_b < 1:
            raise ValueError("need n_a, n_b >= 0 with at least one mode in total")
        g = _as_square_even(self.cm, "covariance matrix")
        dim = 2 * (self.n_a + self.n_b)
        if g.shape[0] != dim:
            raise ValueError(
                f"covariance matrix is {g.shape[0]}x{g.shape[0]}, "
                f"expected {dim}x{dim} for {self.n_a}+{self.n_b} modes"
            )
        mean = np.zeros(dim) if self.mean is None else np.asarray(self.mean, float)
        if mean.shape != (dim,):
            raise ValueError(f"mean must have length {dim}, got {mean.shape}")
        if not np.all(np.isfinite(mean)):
            raise ValueError("mean has non-finite entries")
        report = validate_cm(g)
        if not report.physical:
            raise ValueError(
                "covariance matrix is not physical "
                f"(symmetric={report.symmetric}, "
                f"positive_definite={report.positive_definite}, "
                f"min symplectic eigenvalue={report.symplectic_eigenvalues[-1]:.6g})"
            )
        object.__setattr__(self, "cm", _frozen(g))
        object.__setattr__(self, "mean", _frozen(mean))

    @property
    def n_modes(self) -> int:
        return self.n_a + self.n_b

    def displaced(self, shift) -> "GaussianState":
        """Same state with the mean shifted by `shift`."""
        return GaussianState(self.cm, self.n_a, self.n_b, self.mean + np.asarray(shift, float))


def blocks(state: GaussianState) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return copies of the (A, B, C) blocks of the covariance matrix.

    A and B are the covariance matrices of the reduced states on the two
    subsystems; C holds the cross correlations.
    """
    k = 2 * state.n_a
    g = state.cm
    return g[:k, :k].copy(), g[k:, k:].copy(), g[:k, k:].copy()


@dataclass(frozen=True)
class GaussianUnitary:
    """Phase-space action of a Gaussian unitary: Gamma -> S Gamma S^T, d -> S d + m."""

    s: np.ndarray
    m: np.ndarray | None = None

    def __post_init__(self):
        s = _as_square_even(self.s, "symplectic matrix")
        if not is_symplectic(s, tol=1e-8):
            raise ValueError("matrix does not satisfy S Delta S^T = Delta")
        m = np.zeros(s.shape[0]) if self.m is None else np.asarray(self.m, float)
        if m.shape != (s.shape[0],) or not np.all(np.isfinite(m)):
            raise ValueError("displacement must be a finite vector matching S")
        object.__setattr__(self, "s", _frozen(s))
        object.__setattr__(self, "m", _frozen(m))


def apply_gaussian_unitary(state: GaussianState, u: GaussianUnitary, side: str = "global") -> GaussianState:
    """Apply a Gaussian unitary to one side of the partition, or globally.

    For side "A" or "B" the other block of the covariance matrix is carried
    over untouched (bit for bit).  The output is revalidated on construction.
    """
    ka = 2 * state.n_a
    dim = state.cm.shape[0]
    s, m = u.s, u.m
    if side == "global":
        if s.shape[0] != dim:
            raise ValueError("unitary dimension does not match the state")
        return GaussianState(s @ state.cm @ s.T, state.n_a, state.n_b, s @ state.mean + m)
    if side not in ("A", "B"):
        raise ValueError("side must be 'A', 'B' or 'global'")
    nside = ka if side == "A" else dim - ka
    if s.shape[0] != nside:
        raise ValueError(f"unitary dimension {s.shape[0]} does not match side {side}")
    a, b, c = state.cm[:ka, :ka], state.cm[ka:, ka:], state.cm[:ka, ka:]
    g = np.empty_like(state.cm)
    mean = state.mean.copy()
    if side == "A":
        g[:ka, :ka] = s @ a @ s.T
        g[:ka, ka:] = s @ c
        g[ka:, :ka] = g[:ka, ka:].T
        g[ka:, ka:] = b
        mean[:ka] = s @ state.mean[:ka] + m
    else:
        g[:ka, :ka] = a
        g[:ka, ka:] = c @ s.T
        g[ka:, :ka] = g[:ka, ka:].T
        g[ka:, ka:] = s @ b @ s.T
        mean[ka:] = s @ state.mean[ka:] + m
    return GaussianState(g, state.n_a, state.n_b, mean)


@dataclass(frozen=True)
class WilliamsonDecomposition:
    """Symplectic diagonalization S Gamma S^T = diag(nu_1, nu_1, ..., nu_n, nu_n)."""

    s: np.ndarray
    nus: np.ndarray  # descending
    degeneracy_flag: bool


def williamson(gamma, degeneracy_tol: float = 1e-8) -> WilliamsonDecomposition:
    """Williamson decomposition of a positive-definite covariance matrix.

    Returns a symplectic S with ``S Gamma S^T = direct_sum(nu_i * I_2)``, with
    the symplectic eigenvalues ``nu_i`` sorted in descending order.

    The computation sandwiches the symplectic form between the inverse square
    root of Gamma: ``W = Gamma^{-1/2} Delta Gamma^{-1/2}`` is skew-symmetric,
    and its real Schur form is block diagonal with 2x2 blocks
    ``[[0, 1/nu], [-1/nu, 0]]`` (each block is one conjugate pair of the
    equivalent Hermitian eigenproblem).  After fixing block orientations and
    order, ``S = D^{1/2} O^T Gamma^{-1/2}`` is symplectic by construction.
    This route is stable for positive-definite input and needs no special
    casing for degenerate spectra.

    ``degeneracy_flag`` is set when two consecutive eigenvalues agree within
    ``degeneracy_tol`` (relative); downstream optimizers use it to report that
    their stabilizer search set may be incomplete.
    """
    g = _as_square_even(gamma, "covariance matrix")
    g = 0.5 * (g + g.T)
    n = g.shape[0] // 2
    evals, evecs = np.linalg.eigh(g)
    if evals[0] <= 0.0:
        raise ValueError("covariance matrix must be positive definite")
    root_inv = (evecs * evals**-0.5) @ evecs.T
    w = root_inv @ symplectic_form(n) @ root_inv
    w = 0.5 * (w - w.T)
    t, z = la.schur(w, output="real")
    b = np.empty(n)
    for i in range(n):
        bi = t[2 * i, 2 * i + 1]
        if bi < 0.0:  # swap the pair to flip the block orientation
            z[:, [2 * i, 2 * i + 1]] = z[:, [2 * i + 1, 2 * i]]
            bi = -bi
        b[i] = bi
    nus = 1.0 / b
    order = np.argsort(-nus, kind="stable")
    nus = nus[order]
    cols = np.empty_like(z)
    for k, i in enumerate(order):
        cols[:, 2 * k : 2 * k + 2] = z[:, 2 * i : 2 * i + 2]
    s = np.repeat(np.sqrt(nus), 2)[:, None] * (cols.T @ root_inv)
    degenerate = bool(
        np.any(np.abs(np.diff(nus)) <= degeneracy_tol * np.maximum(nus[:-1], 1.0))
    ) if n > 1 else False
    return WilliamsonDecomposition(_frozen(s), _frozen(nus), degenerate)


@dataclass(frozen=True)
class StandardFormParams:
    """Two-mode standard form parameters (a, b, c, d).

    The corresponding covariance matrix is ``[[a*I, diag(c,d)], [diag(c,d), b*I]]``
    with a, b >= 1, ab - 1 >= max(c^2, d^2) and the canonical orientation
    c >= |d|.
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        a, b, c, d = self.a, self.b, self.c, self.d
        if not all(np.isfinite([a, b, c, d])):
            raise ValueError("standard-form parameters must be finite")
        scale = max(1.0, abs(a), abs(b))
        tol = DEFAULT_TOL * scale
        if a < 1.0 - tol or b < 1.0 - tol:
            raise ValueError(f"need a, b >= 1, got a={a}, b={b}")
        if a * b - 1.0 < c * c - tol * scale or a * b - 1.0 < d * d - tol * scale:
            raise ValueError("parameters violate ab - 1 >= max(c^2, d^2)")
        if c < abs(d) - tol:
            raise ValueError(f"canonical orientation requires c >= |d|, got c={c}, d={d}")


def state_from_params(p: StandardFormParams) -> GaussianState:
    """Build the zero-mean (1+1)-mode state with the standard-form CM of `p`."""
    g = np.diag([p.a, p.a, p.b, p.b]).astype(float)
    g[0, 2] = g[2, 0] = p.c
    g[1, 3] = g[3, 1] = p.d
    return GaussianState(g, 1, 1)


def _williamson_2x2(a: np.ndarray) -> tuple[np.ndarray, float]:
    """Single-mode Williamson: symplectic s with s a s^T = nu*I, nu = sqrt(det a)."""
    nu = float(np.sqrt(np.linalg.det(a)))
    if a[0, 1] == 0.0 and a[1, 0] == 0.0:
        lam = np.array([a[0, 0], a[1, 1]])
        q = np.eye(2)
    else:
        lam, q = np.linalg.eigh(0.5 * (a + a.T))
        if np.linalg.det(q) < 0.0:
            q = q * np.array([1.0, -1.0])  # keep det +1 so s is symplectic
    return np.diag(np.sqrt(nu / lam)) @ q.T, nu


def standard_form(state: GaussianState) -> tuple[StandardFormParams, np.ndarray, np.ndarray]:
    """Reduce a (1+1)-mode state to its two-mode standard form.

    Returns ``(params, s_a, s_b)`` where the local symplectics satisfy
    ``(s_a ⊕ s_b) Gamma (s_a ⊕ s_b)^T = [[a*I, diag(c,d)], [diag(c,d)^T, b*I]]``.

    Algorithm: Williamson-diagonalize the A and B blocks with local
    symplectics, then diagonalize the resulting cross block with a two-sided
    rotation (an SVD with both factors forced into SO(2), which pushes any
    sign onto the second diagonal entry).  This lands on c = sigma_1 >= |d|
    with d carrying the sign of det C.  Inputs already in standard form come
    back with exactly identity locals.
    """
    if state.n_a != 1 or state.n_b != 1:
        raise ValueError("standard form is defined for (1+1)-mode states")
    g = state.cm
    s_a, a = _williamson_2x2(g[:2, :2])
    s_b, b = _williamson_2x2(g[2:, 2:])
    ct = s_a @ g[:2, 2:] @ s_b.T
    if ct[0, 1] == 0.0 and ct[1, 0] == 0.0 and ct[0, 0] >= abs(ct[1, 1]):
        c, d = float(ct[0, 0]), float(ct[1, 1])
    else:
        u, sig, vt = np.linalg.svd(ct)
        du = float(np.linalg.det(u))
        dv = float(np.linalg.det(vt))  # det(V) = det(V^T)
        s_a = np.diag([1.0, du]) @ u.T @ s_a
        s_b = np.diag([1.0, dv]) @ vt @ s_b
        c, d = float(sig[0]), float(du * dv * sig[1])
    return StandardFormParams(a, b, c, d), s_a, s_b
