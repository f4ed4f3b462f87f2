"""Internal linear-algebra helpers.

Conventions used across the package:

* symmetry / identity checks are relative to the spectral norm (RTOL),
* positive definiteness is relative to the largest eigenvalue (PD_TOL),
* inverses of covariance matrices are realized as Cholesky-based solves.
"""
from __future__ import annotations

import numpy as np
import scipy.linalg as sla

from .errors import DimensionMismatch, NotPositiveDefinite, SingularBlock

# Relative tolerance for symmetry and matrix-identity residuals.
RTOL = 1e-9
# Relative tolerance for strict positive definiteness.
PD_TOL = 1e-10


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Return `m` as a float64 2-D square array."""
    a = np.asarray(m, dtype=float)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {a.shape}")
    return a


def spectral_norm(m: np.ndarray) -> float:
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def sym_residual(m: np.ndarray) -> float:
    """Max absolute asymmetry |m - m.T|."""
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m - m.T)))


def validate_symmetric(m, *, rtol: float = RTOL, name: str = "matrix") -> np.ndarray:
    """Validate symmetry within `rtol` of the spectral norm; return the
    exactly symmetrized copy."""
    a = as_matrix(m, name)
    scale = max(spectral_norm(a), 1.0)
    if sym_residual(a) > rtol * scale:
        raise ValueError(
            f"{name} is not symmetric: asymmetry {sym_residual(a):.3e} "
            f"exceeds {rtol:.1e} * spectral norm"
        )
    return 0.5 * (a + a.T)


def validate_spd(m, *, pd_tol: float = PD_TOL, rtol: float = RTOL,
                 name: str = "matrix") -> np.ndarray:
    """Validate symmetric positive definiteness; return the symmetrized copy.

    Strictness is relative: the smallest eigenvalue must exceed
    ``pd_tol * largest eigenvalue``.
    """
    a = validate_symmetric(m, rtol=rtol, name=name)
    w = np.linalg.eigvalsh(a)
    if w[-1] <= 0.0 or w[0] <= pd_tol * w[-1]:
        raise NotPositiveDefinite(
            f"{name} is not positive definite: eigenvalue range "
            f"[{w[0]:.6e}, {w[-1]:.6e}] fails the relative threshold {pd_tol:.1e}"
        )
    return a


def min_eigval(m: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(m)[0])


def chol_lower(m: np.ndarray, name: str = "matrix") -> np.ndarray:
    """Lower Cholesky factor, raising NotPositiveDefinite on failure."""
    try:
        return np.linalg.cholesky(m)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(f"{name} has no Cholesky factorization") from exc


def spd_solve(a: np.ndarray, b: np.ndarray, name: str = "matrix") -> np.ndarray:
    """Solve a @ x = b for SPD `a` via Cholesky (never an explicit inverse)."""
    try:
        c = sla.cho_factor(a, lower=True, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise SingularBlock(f"{name} is singular or not positive definite") from exc
    return sla.cho_solve(c, b, check_finite=False)


def logdet_spd(m: np.ndarray, name: str = "matrix") -> float:
    """log det of an SPD matrix via its Cholesky factor."""
    if m.shape[0] == 0:
        return 0.0
    factor = chol_lower(m, name)
    return float(2.0 * np.sum(np.log(np.diag(factor))))


def symmetrize(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.T)


def frozen(a: np.ndarray) -> np.ndarray:
    """Read-only float64 copy (values are immutable once constructed)."""
    out = np.array(a, dtype=float)
    out.setflags(write=False)
    return out


def check_same_shape(a: np.ndarray, b: np.ndarray, what: str = "matrices") -> None:
    if a.shape != b.shape:
        raise DimensionMismatch(f"{what} differ in shape: {a.shape} vs {b.shape}")
