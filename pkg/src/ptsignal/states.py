"""Shared pure states: Bell pair, generalized GHZ / W families, a
basis-rotated GHZ family, and arbitrary user-supplied 3-qubit states.

Qubit ordering is A (x) B (x) C with A, the locally evolved party, most
significant: |abc> sits at index 4a + 2b + c.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import as_matrix, partial_trace

__all__ = ["StateSpec", "make_state", "density", "reduced", "FAMILIES"]

FAMILIES = ("bell", "ghz", "w", "rotated-ghz", "custom")


@dataclass(frozen=True)
class StateSpec:
    """Tagged description of the shared state.

    theta weighs the two branches for ghz / rotated-ghz and the W split;
    phi splits the middle W branch; (x, y) are the rotation angles of the
    rotated-ghz basis. Angles are unrestricted reals in radians; the
    canonical reporting range for theta is [0, pi/2].
    """

    family: str
    theta: float = 0.0
    phi: float = 0.0
    x: float = 0.0
    y: float = 0.0
    amplitudes: tuple = field(default=None)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}, expected one of {FAMILIES}")
        if self.family == "custom" and self.amplitudes is None:
            raise ValueError("custom states need an amplitudes vector")

    @property
    def n_parties(self) -> int:
        return 2 if self.family == "bell" else 3


def _rotated_basis(x: float, y: float):
    # orthonormal pair; at x = 0, y = 0 it is the computational basis
    k0 = np.array([np.cos(x / 2), np.exp(1j * y) * np.sin(x / 2)])
    k1 = np.array([-np.sin(x / 2), np.exp(1j * y) * np.cos(x / 2)])
    return k0, k1


def make_state(spec: StateSpec) -> np.ndarray:
    """Amplitude vector in computational-basis ordering, unit Dirac norm."""
    th, ph = spec.theta, spec.phi
    if spec.family == "bell":
        return np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    if spec.family == "ghz":
        v = np.zeros(8, dtype=complex)
        v[0b000] = np.cos(th)
        v[0b111] = np.sin(th)
        return v
    if spec.family == "w":
        v = np.zeros(8, dtype=complex)
        v[0b001] = np.sin(th) * np.cos(ph)
        v[0b010] = np.sin(th) * np.sin(ph)
        v[0b100] = np.cos(th)
        return v
    if spec.family == "rotated-ghz":
        k0, k1 = _rotated_basis(spec.x, spec.y)
        branch0 = np.kron(k0, np.kron(k0, k0))
        branch1 = np.kron(k1, np.kron(k1, k1))
        return np.cos(th) * branch0 + np.sin(th) * branch1
    # custom
    amps = np.asarray(spec.amplitudes, dtype=complex).reshape(-1)
    if amps.size != 8:
        raise ValueError(f"custom state needs 8 amplitudes, got {amps.size}")
    norm = np.linalg.norm(amps)
    if norm == 0:
        raise ValueError("custom state amplitudes are all zero")
    return amps / norm


def parse_custom_amplitudes(text: str) -> tuple:
    """Parse 16 whitespace-separated reals (8 re/im pairs) into amplitudes."""
    parts = text.split()
    if len(parts) != 16:
        raise ValueError(f"expected 16 real numbers (8 re/im pairs), got {len(parts)}")
    vals = [float(p) for p in parts]
    return tuple(complex(vals[2 * k], vals[2 * k + 1]) for k in range(8))


def density(psi) -> np.ndarray:
    """Rank-1 projector |psi><psi|."""
    v = np.asarray(psi, dtype=complex).reshape(-1)
    if abs(np.linalg.norm(v) - 1.0) > 1e-12:
        raise ValueError("density() expects a unit-norm state vector")
    return np.outer(v, v.conj())


def reduced(rho, keep) -> np.ndarray:
    """Partial trace down to attached qubit subsets for 2- or 3-qubit states."""
    rho = as_matrix(rho)
    n = {4: 2, 8: 3}.get(rho.shape[0])
    if n is None:
        raise ValueError(f"expected a 4x4 or 8x8 density matrix, got dim {rho.shape[0]}")
    return partial_trace(rho, [2] * n, keep)
