"""The general 2x2 PT-symmetric qubit Hamiltonian and its propagator.

Parameterized by four real numbers (r, s, t, xi) plus an energy scale J and a
dimensionless evolution parameter tau:

    H = J * [[r + t cos(xi) - i s sin(xi),  i s cos(xi) + t sin(xi)],
             [i s cos(xi) + t sin(xi),      r - t cos(xi) + i s sin(xi)]]

The spectrum is real for s^2 < t^2 (the unbroken regime) with energies
J(r +/- t cos(alpha)) where sin(alpha) = s/t; the two eigenvectors coalesce at
alpha = +/-pi/2. The propagator U = exp(-i H tau / J) is non-unitary for s != 0
but always has |det U| = 1 because the trace of H is real.

Closed forms downstream use the coordinates (alpha, xi, t1) with
t1 = t * tau * cos(alpha); `PTParams.from_effective` builds the canonical
representative (r=0, t=1, J=1) for a given (alpha, xi, t1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import as_matrix, expm_reference

__all__ = [
    "BrokenPhaseError",
    "PTParams",
    "PTEigensystem",
    "build_hamiltonian",
    "alpha_of",
    "phase_of",
    "eigensystem",
    "propagator",
    "pt_symmetry_check",
    "find_parity_angle",
]

# |mu*tau| below this uses the series limit of sin(mu tau)/mu
_SERIES_CUTOFF = 1e-6


class BrokenPhaseError(ValueError):
    """Raised when an operation requires a real spectrum but s^2 >= t^2."""


@dataclass(frozen=True)
class PTParams:
    """Hamiltonian parameter record; all fields dimensionless except J."""

    r: float
    s: float
    t: float
    xi: float
    J: float = 1.0
    tau: float = 0.0

    def __post_init__(self):
        if self.J == 0:
            raise ValueError("energy scale J must be nonzero")

    @classmethod
    def from_effective(cls, alpha: float, xi: float, t1: float) -> "PTParams":
        """Canonical params for the (alpha, xi, t1) coordinates: r=0, t=1, J=1."""
        if abs(alpha) >= np.pi / 2:
            raise BrokenPhaseError(
                f"alpha={alpha} is at or beyond the exceptional point pi/2"
            )
        return cls(r=0.0, s=float(np.sin(alpha)), t=1.0, xi=float(xi),
                   J=1.0, tau=float(t1) / float(np.cos(alpha)))

    @property
    def t1(self) -> float:
        """Effective evolution coordinate t * tau * cos(alpha)."""
        return self.t * self.tau * float(np.cos(alpha_of(self)))


@dataclass(frozen=True)
class PTEigensystem:
    alpha: float
    e_plus: float
    e_minus: float
    v_plus: np.ndarray
    v_minus: np.ndarray


def build_hamiltonian(p: PTParams) -> np.ndarray:
    cx, sx = np.cos(p.xi), np.sin(p.xi)
    return p.J * np.array(
        [
            [p.r + p.t * cx - 1j * p.s * sx, 1j * p.s * cx + p.t * sx],
            [1j * p.s * cx + p.t * sx, p.r - p.t * cx + 1j * p.s * sx],
        ]
    )


def alpha_of(p: PTParams) -> float:
    """alpha = arcsin(s/t) on the principal branch [-pi/2, pi/2].

    Note (t, alpha) and (-t, pi - alpha) describe the same Hamiltonian; only
    t*cos(alpha) and s enter the formulas downstream.
    """
    if p.t == 0:
        raise ValueError("alpha is undefined for t = 0")
    ratio = p.s / p.t
    if abs(ratio) > 1:
        raise BrokenPhaseError(
            f"|s| > |t| (s={p.s}, t={p.t}): complex spectrum, no real alpha"
        )
    return float(np.arcsin(ratio))


def phase_of(p: PTParams, *, tol: float = 1e-12) -> str:
    """Spectral regime: 'unbroken', 'exceptional', or 'broken'."""
    gap = p.t * p.t - p.s * p.s
    scale = max(p.t * p.t, p.s * p.s, 1.0)
    if gap > tol * scale:
        return "unbroken"
    if gap < -tol * scale:
        return "broken"
    return "exceptional"


def eigensystem(p: PTParams) -> PTEigensystem:
    """Energies from the closed form, eigenvectors from a direct numeric solve.

    Requires the unbroken regime. Eigenvectors are unit-norm under the plain
    Dirac inner product; they are not orthogonal to each other and their
    overlap approaches 1 toward the exceptional point.
    """
    regime = phase_of(p)
    if regime != "unbroken":
        raise BrokenPhaseError(f"eigensystem requires the unbroken regime, got {regime}")
    alpha = alpha_of(p)
    e_plus = p.J * (p.r + p.t * np.cos(alpha))
    e_minus = p.J * (p.r - p.t * np.cos(alpha))

    h = build_hamiltonian(p)
    vals, vecs = np.linalg.eig(h)
    order = np.argsort(vals.real)
    v_minus = vecs[:, order[0]]
    v_plus = vecs[:, order[1]]
    if p.t * np.cos(alpha) * p.J < 0:
        v_plus, v_minus = v_minus, v_plus
    v_plus = v_plus / np.linalg.norm(v_plus)
    v_minus = v_minus / np.linalg.norm(v_minus)

    for e, v in ((e_plus, v_plus), (e_minus, v_minus)):
        residual = np.linalg.norm(h @ v - e * v)
        if residual > 1e-10 * max(1.0, np.abs(vals).max()):
            raise ArithmeticError(f"eigenpair residual {residual:.3e} exceeds tolerance")
    return PTEigensystem(alpha=float(alpha), e_plus=float(e_plus),
                         e_minus=float(e_minus), v_plus=v_plus, v_minus=v_minus)


def propagator(p: PTParams) -> np.ndarray:
    """Closed-form U = exp(-i H tau / J).

    U = e^{-i r tau} [cos(mu tau) I - i (sin(mu tau)/mu) (H/J - r I)] with
    mu = sqrt(t^2 - s^2). In the broken regime mu is imaginary and the same
    expression continues analytically (cos -> cosh growth); at mu ~ 0 the
    ratio sin(mu tau)/mu is replaced by its series tau (1 - (mu tau)^2 / 6).
    """
    mu = np.sqrt(complex(p.t * p.t - p.s * p.s))
    x = mu * p.tau
    if abs(x) < _SERIES_CUTOFF:
        ratio = p.tau * (1.0 - x * x / 6.0)
    else:
        ratio = np.sin(x) / mu
    h_reduced = build_hamiltonian(p) / p.J - p.r * np.eye(2)
    u = np.cos(x) * np.eye(2) - 1j * ratio * h_reduced
    return np.exp(-1j * p.r * p.tau) * u


def propagator_reference(p: PTParams) -> np.ndarray:
    """Oracle: the same propagator via the generic matrix exponential."""
    return expm_reference(-1j * build_hamiltonian(p) * (p.tau / p.J))


def _parity(phi: float) -> np.ndarray:
    c, s = np.cos(phi), np.sin(phi)
    return np.array([[c, s], [s, -c]])


def pt_symmetry_check(h, phi_tilde: float, tol: float) -> bool:
    """True iff P(phi) conj(h) P(phi) equals h entrywise within tol,
    where P(phi) = [[cos phi, sin phi], [sin phi, -cos phi]] and conjugation
    plays the role of time reversal."""
    m = as_matrix(h)
    if m.shape != (2, 2):
        raise ValueError("pt_symmetry_check expects a 2x2 matrix")
    par = _parity(phi_tilde)
    return bool(np.abs(par @ np.conj(m) @ par - m).max() <= tol)


def find_parity_angle(h, *, resolution: float = 1e-3, refine: bool = True):
    """Search [0, pi) for the parity angle that makes h PT-symmetric.

    Scans a grid of the given resolution for the angle minimizing the
    symmetry residual, then (by default) polishes it by ternary search.
    Returns the angle, or None when even the best residual is far from zero
    relative to the matrix scale. No closed-form relation between the angle
    and the Hamiltonian parameters is assumed.
    """
    m = as_matrix(h)
    scale = max(1.0, float(np.abs(m).max()))

    def residual(phi: float) -> float:
        par = _parity(phi)
        return float(np.abs(par @ np.conj(m) @ par - m).max())

    grid = np.arange(0.0, np.pi, resolution)
    values = [residual(phi) for phi in grid]
    best = int(np.argmin(values))
    phi, res = float(grid[best]), values[best]
    # a true symmetry angle missed by at most half a grid step leaves a
    # residual of order scale * resolution
    if res > 4.0 * scale * resolution:
        return None
    if refine:
        lo, hi = phi - resolution, phi + resolution
        for _ in range(200):
            m1 = lo + (hi - lo) / 3
            m2 = hi - (hi - lo) / 3
            if residual(m1) <= residual(m2):
                hi = m2
            else:
                lo = m1
            if hi - lo < 1e-15:
                break
        phi = (lo + hi) / 2 % np.pi
    return phi
