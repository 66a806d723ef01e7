"""Dense complex linear algebra for small (2/4/8-dimensional) matrices.

Everything here operates on plain numpy complex arrays. The eigenvalue and
matrix-exponential routines are deliberately self-contained reference
implementations: they serve as oracles for the closed-form expressions in the
rest of the package, so they must not share code with the things they check.
"""

from __future__ import annotations

import numpy as np

HERMITICITY_TOL = 1e-10
OFF_DIAGONAL_TARGET = 1e-14


def as_matrix(a) -> np.ndarray:
    """Coerce to a square complex ndarray."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(a.T)


def tensor(*ops) -> np.ndarray:
    """Kronecker product of one or more operators, left factor most significant."""
    if not ops:
        raise ValueError("tensor() needs at least one operator")
    out = as_matrix(ops[0])
    for op in ops[1:]:
        out = np.kron(out, as_matrix(op))
    return out


def partial_trace(rho, subsystem_dims, keep) -> np.ndarray:
    """Trace out every subsystem not listed in `keep`.

    subsystem_dims lists the local dimensions in tensor order (first factor
    most significant); keep is a collection of subsystem indices. The kept
    subsystems stay in their original relative order.
    """
    rho = as_matrix(rho)
    dims = list(subsystem_dims)
    n = len(dims)
    if int(np.prod(dims)) != rho.shape[0]:
        raise ValueError(
            f"subsystem dims {dims} do not multiply to matrix dim {rho.shape[0]}"
        )
    keep = sorted(set(keep))
    if not keep or any(k < 0 or k >= n for k in keep):
        raise ValueError(f"keep={keep} is not a nonempty subset of 0..{n - 1}")

    reshaped = rho.reshape(dims + dims)
    # row index letters a.., column letters: reuse the row letter on traced
    # subsystems so einsum contracts them.
    row = [chr(ord("a") + i) for i in range(n)]
    col = [row[i] if i not in keep else chr(ord("a") + n + i) for i in range(n)]
    out_rows = [row[i] for i in keep]
    out_cols = [col[i] for i in keep]
    spec = "".join(row + col) + "->" + "".join(out_rows + out_cols)
    d_keep = int(np.prod([dims[i] for i in keep]))
    return np.einsum(spec, reshaped).reshape(d_keep, d_keep)


def _require_hermitian(a: np.ndarray, tol: float) -> np.ndarray:
    dev = np.abs(a - dagger(a)).max()
    if dev > tol:
        raise ValueError(f"matrix is not Hermitian (deviation {dev:.3e} > {tol:.1e})")
    return a


def _off_diagonal_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt((np.abs(off) ** 2).sum()))


def hermitian_eigenvalues(h, *, tol: float = HERMITICITY_TOL,
                          max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, ascending.

    Rejects inputs whose Hermiticity deviation exceeds `tol` rather than
    symmetrizing them. Iterates full sweeps until the off-diagonal Frobenius
    norm is at or below OFF_DIAGONAL_TARGET.
    """
    a = _require_hermitian(as_matrix(h), tol).copy()
    n = a.shape[0]
    if n == 1:
        return np.array([a[0, 0].real])

    # rotations below a fraction of the target are not worth applying
    skip = OFF_DIAGONAL_TARGET / (4 * n * n)
    for _ in range(max_sweeps):
        if _off_diagonal_norm(a) <= OFF_DIAGONAL_TARGET:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                z = a[p, q]
                az = abs(z)
                if az <= skip:
                    continue
                phase = z / az
                app, aqq = a[p, p].real, a[q, q].real
                tau = (aqq - app) / (2 * az)
                # smaller-angle root of t^2 + 2*tau*t - 1 = 0
                if tau >= 0:
                    t = 1.0 / (tau + np.hypot(1.0, tau))
                else:
                    t = -1.0 / (-tau + np.hypot(1.0, tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # unitary: column p mixes with phase, column q stays real
                col_p = c * phase * a[:, p] - s * a[:, q]
                col_q = s * phase * a[:, p] + c * a[:, q]
                a[:, p], a[:, q] = col_p, col_q
                row_p = c * np.conj(phase) * a[p, :] - s * a[q, :]
                row_q = s * np.conj(phase) * a[p, :] + c * a[q, :]
                a[p, :], a[q, :] = row_p, row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
    return np.sort(np.diag(a).real)


def trace_norm(a, *, tol: float = HERMITICITY_TOL) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.abs(hermitian_eigenvalues(a, tol=tol)).sum())


def expm_reference(a, *, order: int = 20) -> np.ndarray:
    """Matrix exponential by scaling-and-squaring with a truncated Taylor series.

    `order` is the Taylor truncation order after scaling the input below
    norm 1/2; doubling it changes the result by well under 1e-12 relative,
    which is how the routine is validated.
    """
    m = as_matrix(a)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix exponential of non-finite input")
    norm = np.linalg.norm(m, 1)
    squarings = 0
    if norm > 0.5:
        squarings = int(np.ceil(np.log2(norm / 0.5)))
        m = m / (2.0 ** squarings)
    out = np.eye(m.shape[0], dtype=complex)
    term = np.eye(m.shape[0], dtype=complex)
    for k in range(1, order + 1):
        term = term @ m / k
        out = out + term
    for _ in range(squarings):
        out = out @ out
    return out
