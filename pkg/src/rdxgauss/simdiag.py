"""Simultaneous diagonalization of a symmetric positive-definite pair,
plus Loewner-order utilities.

For SPD matrices (sigma1, sigma2) there is a nonsingular congruence S with
S @ sigma1 @ S.T = I and S @ sigma2 @ S.T diagonal.  Combining S with the
eigendecomposition sigma1 = rotation.T @ diag(diag1) @ rotation gives the
joint diagonalizer V = diag(diag1)**0.5 @ S, which renders both matrices
diagonal under the same congruence.  The two diagonals drive every rate
formula in this package.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from ._linalg import PD_TOL, RTOL, frozen, spectral_norm, validate_spd, validate_symmetric
from .errors import DimensionMismatch, IllConditioned, NotPositiveDefinite

__all__ = [
    "JointDiagonalization",
    "whiten_diagonalize",
    "loewner_leq",
    "eigen_order_dominates",
]

# condition-number ceiling for the first matrix of the pair
COND_LIMIT = 1e12


@dataclass(frozen=True)
class JointDiagonalization:
    """Result of simultaneously diagonalizing an SPD pair (sigma1, sigma2).

    Attributes
    ----------
    whitener : ndarray
        Nonsingular S with S @ sigma1 @ S.T = I and
        S @ sigma2 @ S.T = diag(gen_eigvals).
    rotation : ndarray
        Orthogonal matrix whose rows are eigenvectors of sigma1, so that
        rotation.T @ diag(diag1) @ rotation = sigma1.
    diagonalizer : ndarray
        V = diag(diag1)**0.5 @ whitener; V @ sigma1 @ V.T = diag(diag1)
        and V @ sigma2 @ V.T = diag(diag2).
    diag1, diag2 : ndarray
        The two diagonals; diag2 = diag1 * gen_eigvals componentwise.
    gen_eigvals : ndarray
        Generalized eigenvalues of (sigma2, sigma1), sorted descending.

    Both ``diag1`` and ``gen_eigvals`` are descending; the componentwise
    pairing between them is the fixed convention of this construction (the
    pairing is not unique for the pair itself).
    """

    whitener: np.ndarray
    rotation: np.ndarray
    diagonalizer: np.ndarray
    diag1: np.ndarray
    diag2: np.ndarray
    gen_eigvals: np.ndarray

    def __post_init__(self):
        for field in ("whitener", "rotation", "diagonalizer",
                      "diag1", "diag2", "gen_eigvals"):
            object.__setattr__(self, field, frozen(getattr(self, field)))

    @property
    def dim(self) -> int:
        return self.diag1.shape[0]

    @property
    def ordering(self) -> str:
        return "descending"


def whiten_diagonalize(sigma1, sigma2, *, cond_limit: float = COND_LIMIT) -> JointDiagonalization:
    """Simultaneously diagonalize two SPD matrices of equal dimension.

    The whitener is built from the Cholesky factor sigma1 = L @ L.T and the
    symmetric eigendecomposition of inv(L) @ sigma2 @ inv(L).T, whose
    eigenvalues (descending) are the generalized eigenvalues of the pair.
    Ties are broken by the stable sort of the eigensolver; any orthonormal
    basis of an eigenspace is acceptable downstream.

    Raises
    ------
    NotPositiveDefinite
        Naming the offending matrix.
    IllConditioned
        If sigma1's condition number exceeds `cond_limit`.
    DimensionMismatch
        If the matrices differ in dimension.
    """
    s1 = validate_spd(sigma1, name="sigma1")
    s2 = validate_spd(sigma2, name="sigma2")
    if s1.shape != s2.shape:
        raise DimensionMismatch(f"dimension mismatch: {s1.shape} vs {s2.shape}")

    lam, vecs = np.linalg.eigh(s1)           # ascending
    if lam[0] <= 0.0:
        raise NotPositiveDefinite("sigma1 is not positive definite")
    if lam[-1] / lam[0] > cond_limit:
        raise IllConditioned(
            f"sigma1 condition number {lam[-1] / lam[0]:.3e} exceeds {cond_limit:.1e}"
        )
    diag1 = lam[::-1].copy()
    rotation = vecs[:, ::-1].T                # rows are eigenvectors, descending

    try:
        lower = np.linalg.cholesky(s1)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite("sigma1 has no Cholesky factorization") from exc
    linv = sla.solve_triangular(lower, np.eye(lower.shape[0]),
                                lower=True, check_finite=False)
    mid = linv @ s2 @ linv.T
    gam, q = np.linalg.eigh(0.5 * (mid + mid.T))
    if gam[0] <= 0.0:
        raise NotPositiveDefinite("sigma2 is not positive definite")
    gen_eigvals = gam[::-1].copy()
    whitener = q[:, ::-1].T @ linv

    diagonalizer = np.sqrt(diag1)[:, None] * whitener
    diag2 = diag1 * gen_eigvals

    return JointDiagonalization(
        whitener=whitener,
        rotation=rotation,
        diagonalizer=diagonalizer,
        diag1=diag1,
        diag2=diag2,
        gen_eigvals=gen_eigvals,
    )


def loewner_leq(a, b, tol: float = PD_TOL) -> bool:
    """True iff a is Loewner-dominated by b.

    The test is that the smallest eigenvalue of b - a is at least
    ``-tol * spectral_norm(b)``.
    """
    am = validate_symmetric(a, name="a")
    bm = validate_symmetric(b, name="b")
    if am.shape != bm.shape:
        raise DimensionMismatch(f"dimension mismatch: {am.shape} vs {bm.shape}")
    gap = bm - am
    return bool(np.linalg.eigvalsh(gap)[0] >= -tol * spectral_norm(bm))


def eigen_order_dominates(q1, q2, tol: float | None = None) -> bool:
    """True iff the descending eigenvalues of q1 dominate those of q2.

    For positive semidefinite q1 Loewner-above q2 this always holds; the
    converse is false in general, so this is the cheap necessary check.
    """
    a = validate_symmetric(q1, name="q1")
    b = validate_symmetric(q2, name="q2")
    if a.shape != b.shape:
        raise DimensionMismatch(f"dimension mismatch: {a.shape} vs {b.shape}")
    if tol is None:
        tol = RTOL * max(spectral_norm(a), spectral_norm(b), 1.0)
    ev1 = np.linalg.eigvalsh(a)[::-1]
    ev2 = np.linalg.eigvalsh(b)[::-1]
    return bool(np.all(ev1 >= ev2 - tol))
