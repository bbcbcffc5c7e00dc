"""Scale factors that place the spectrum of alpha * Z inside (0, 2).

Three choices are provided: the optimal factor (needs the extreme
eigenvalues), a trace-based factor, and a Gershgorin/diagonal factor that
reads only one column-sum pass off the matrix.  Each comes in a diagnostics
flavour (reports the rescaled eigenvalue farthest from 1 and the resulting
contraction) and a value-only fast path.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .linalg import (
    EigenDecomposition,
    infinity_norm,
    scaled_eig_tol,
    symmetric_eigen,
    symmetrize,
)


class ScaleFactorKind(enum.Enum):
    """The three scale-factor families, in their CLI/CSV token spelling."""

    OPTIMAL = "alpha0"
    TRACE = "alpha1"
    GERSHGORIN = "alpha2"

    @classmethod
    def from_token(cls, token: str) -> "ScaleFactorKind":
        for kind in cls:
            if kind.value == token:
                return kind
        raise ValueError(f"unknown scale factor token {token!r}")

    @property
    def token(self) -> str:
        return self.value


@dataclass(frozen=True)
class ScaleDiagnostics:
    """A scale factor plus the convergence geometry it induces.

    ``omega`` is the eigenvalue of alpha*Z most different from 1;
    ``contraction`` is |1 - omega|, the factor squared away per iteration.
    """

    alpha: float
    kind: ScaleFactorKind
    omega: float
    contraction: float


def _diagnostics(alpha: float, kind: ScaleFactorKind, lam_min: float, lam_max: float) -> ScaleDiagnostics:
    mu_low = alpha * lam_min
    mu_high = alpha * lam_max
    # The extreme rescaled eigenvalues are the only candidates for "most
    # different from 1"; break ties toward the smaller one.  The optimal
    # factor makes the tie mathematically exact, so compare with slack to
    # keep rounding noise from flipping the choice.
    omega = mu_low if abs(1.0 - mu_low) >= abs(1.0 - mu_high) - 1e-12 else mu_high
    return ScaleDiagnostics(alpha=alpha, kind=kind, omega=omega, contraction=abs(1.0 - omega))


def alpha_optimal_bounds(lam_min: float, lam_max: float) -> ScaleDiagnostics:
    """Optimal factor 2/(lam_max + lam_min) from known extreme eigenvalues."""
    if not lam_min > 0.0:
        raise ValueError(f"matrix is not positive definite: smallest eigenvalue {lam_min}")
    if lam_max < lam_min:
        raise ValueError("lam_max must be at least lam_min")
    alpha = 2.0 / (lam_max + lam_min)
    return _diagnostics(alpha, ScaleFactorKind.OPTIMAL, lam_min, lam_max)


def alpha_optimal(eig: EigenDecomposition) -> ScaleDiagnostics:
    """Optimal factor from a full eigendecomposition (ascending eigenvalues)."""
    values = np.asarray(eig.values, dtype=np.float64)
    return alpha_optimal_bounds(float(values[0]), float(values[-1]))


def alpha_trace_value(z) -> float:
    """Trace-based factor 2/trace(Z); touches only the diagonal."""
    z = symmetrize(z)
    tr = float(np.trace(z))
    if not tr > 0.0:
        raise ValueError(f"matrix is not positive definite: trace = {tr}")
    return 2.0 / tr


def alpha_gershgorin_value(z) -> float:
    """Diagonal/row-sum factor 2/(min z_ii + max_i sum_j |z_ij|)."""
    z = symmetrize(z)
    denom = float(np.diag(z).min()) + infinity_norm(z)
    if not denom > 0.0:
        raise ValueError(f"matrix is not positive definite: scale denominator = {denom}")
    return 2.0 / denom


def _diagnosed(z, alpha: float, kind: ScaleFactorKind) -> ScaleDiagnostics:
    z = symmetrize(z)
    eig = symmetric_eigen(z, tol=scaled_eig_tol(z))
    return _diagnostics(alpha, kind, float(eig.values[0]), float(eig.values[-1]))


def alpha_trace(z) -> ScaleDiagnostics:
    """Trace-based factor with eigensolver-backed diagnostics."""
    return _diagnosed(z, alpha_trace_value(z), ScaleFactorKind.TRACE)


def alpha_gershgorin(z) -> ScaleDiagnostics:
    """Gershgorin/diagonal factor with eigensolver-backed diagnostics."""
    return _diagnosed(z, alpha_gershgorin_value(z), ScaleFactorKind.GERSHGORIN)


def rescale(z, alpha: float) -> np.ndarray:
    """alpha * Z for alpha > 0; preserves symmetry exactly."""
    if not alpha > 0.0:
        raise ValueError(f"scale factor must be positive, got {alpha}")
    return symmetrize(z) * float(alpha)
