"""Dense matrix primitives: products, norms, and a cyclic-Jacobi eigensolver.

Matrices are plain 2-D float64 numpy arrays.  ``as_matrix`` / ``symmetrize``
are the validating constructors: every public entry point of the package
accepts anything array-like and normalizes it here, so the numerical code can
assume finite, well-shaped input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels

#: Hard cap on Jacobi sweeps before the eigensolver gives up.
MAX_JACOBI_SWEEPS = 100

#: Default absolute threshold on the largest off-diagonal entry.
DEFAULT_EIG_TOL = 1e-12

#: Absolute tolerance under which an almost-symmetric matrix is symmetrized
#: rather than rejected.
SYMMETRY_TOL = 1e-12


class JacobiConvergenceError(RuntimeError):
    """Eigensolver ran out of sweeps; ``offdiag`` holds the leftover residual."""

    def __init__(self, offdiag: float, sweeps: int):
        super().__init__(
            f"Jacobi eigensolver did not converge after {sweeps} sweeps; "
            f"largest off-diagonal entry is {offdiag:.3e}"
        )
        self.offdiag = offdiag
        self.sweeps = sweeps


def as_matrix(a) -> np.ndarray:
    """Validate and convert to a 2-D float64 array with finite entries."""
    out = np.asarray(a, dtype=np.float64)
    if out.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={out.ndim}")
    if out.shape[0] < 1 or out.shape[1] < 1:
        raise ValueError(f"matrix dimensions must be positive, got {out.shape}")
    if not np.all(np.isfinite(out)):
        raise ValueError("matrix entries must be finite (no NaN/Inf)")
    return np.ascontiguousarray(out)


def symmetrize(a, tol: float = SYMMETRY_TOL) -> np.ndarray:
    """Return the exactly symmetric average of ``a`` and its transpose.

    Accepts square matrices whose asymmetry ``max|a_ij - a_ji|`` is at most
    ``tol``; anything worse is rejected rather than silently averaged away.
    """
    out = as_matrix(a)
    if out.shape[0] != out.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {out.shape}")
    gap = float(np.abs(out - out.T).max())
    if gap > tol:
        raise ValueError(f"matrix is not symmetric: max|a_ij - a_ji| = {gap:.3e} > {tol:.1e}")
    return (out + out.T) * 0.5


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues sorted ascending; column k of ``vectors`` pairs with ``values[k]``."""

    values: np.ndarray
    vectors: np.ndarray


def multiply(a, b) -> np.ndarray:
    """Matrix product with an explicit shape check."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply {a.shape[0]}x{a.shape[1]} by {b.shape[0]}x{b.shape[1]}")
    return a @ b


def gram(x) -> np.ndarray:
    """X'X, symmetrized exactly so that entry (i,j) == entry (j,i) bit-for-bit."""
    x = as_matrix(x)
    g = x.T @ x
    return (g + g.T) * 0.5


def transpose_multiply(x, m) -> np.ndarray:
    """X'M without forming the transpose of X explicitly."""
    x = as_matrix(x)
    m = as_matrix(m)
    if x.shape[0] != m.shape[0]:
        raise ValueError(
            f"row counts differ: pattern is {x.shape[0]}x{x.shape[1]}, "
            f"model is {m.shape[0]}x{m.shape[1]}"
        )
    return x.T @ m


def entrywise_max_abs(a) -> float:
    """Largest absolute entry."""
    return float(np.abs(as_matrix(a)).max())


def infinity_norm(a) -> float:
    """Maximum row sum of absolute values."""
    return float(np.abs(as_matrix(a)).sum(axis=1).max())


def frobenius_distance(a, b) -> float:
    """Square root of the summed squared entry differences."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def scaled_eig_tol(a) -> float:
    """Off-diagonal threshold proportional to the magnitude of ``a``.

    An absolute threshold cannot be met by matrices with large entries (the
    rotations keep reintroducing rounding noise at ``eps * max|a|`` scale), so
    internal callers scale the default by the largest entry.
    """
    return DEFAULT_EIG_TOL * max(1.0, entrywise_max_abs(a))


def symmetric_eigen(a, tol: float = DEFAULT_EIG_TOL) -> EigenDecomposition:
    """Full eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.

    Sweeps run until the largest absolute off-diagonal entry drops below
    ``tol``; raises :class:`JacobiConvergenceError` if that does not happen
    within ``MAX_JACOBI_SWEEPS`` sweeps.
    """
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    w = symmetrize(a)
    n = w.shape[0]
    q = np.eye(n)
    sweeps, off = kernels.jacobi_sweeps(w, q, float(tol), MAX_JACOBI_SWEEPS)
    if off >= tol:
        raise JacobiConvergenceError(off, sweeps)
    values = np.diag(w).copy()
    order = np.argsort(values, kind="stable")
    return EigenDecomposition(values=values[order], vectors=q[:, order])


def spectral_norm(a) -> float:
    """Largest absolute eigenvalue of a symmetric matrix.

    Rejects inputs whose asymmetry exceeds ``SYMMETRY_TOL``; every residual
    this package feeds in is symmetric by construction.
    """
    s = symmetrize(a)
    eig = symmetric_eigen(s, tol=scaled_eig_tol(s))
    return float(np.abs(eig.values).max())
