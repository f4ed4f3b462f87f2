"""Joint Gaussian source/observation/side-information model.

A source vector x is observed at the encoder through y, while the decoder
holds a correlated signal z.  Everything downstream (rate bounds, test
channels, simulation) consumes the second-order description assembled here:
the joint covariance of (x, y, z), the conditional covariances of x given z
and given (y, z), and the linear-regression coefficients between the blocks.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._linalg import (
    PD_TOL,
    RTOL,
    as_matrix,
    frozen,
    min_eigval,
    spd_solve,
    spectral_norm,
    symmetrize,
    validate_spd,
    validate_symmetric,
)
from .errors import DimensionMismatch, SingularBlock

__all__ = [
    "JointModel",
    "ConditionalStats",
    "schur_conditional",
    "derive_stats",
    "random_instance",
    "noisy_observation_instance",
    "validate_symmetric",
    "validate_spd",
]


@dataclass(frozen=True)
class JointModel:
    """Second-order description of the jointly Gaussian triple (x, y, z).

    All blocks are covariance / cross-covariance matrices; the assembled
    joint covariance must be symmetric positive definite (full rank is
    assumed throughout, rank-deficient models are rejected rather than
    repaired).

    Attributes
    ----------
    cov_x, cov_y, cov_z : ndarray
        Marginal covariance blocks.
    cov_xy, cov_xz, cov_yz : ndarray
        Cross-covariance blocks, shaped (n_x, n_y), (n_x, n_z), (n_y, n_z).
    """

    cov_x: np.ndarray
    cov_y: np.ndarray
    cov_z: np.ndarray
    cov_xy: np.ndarray
    cov_xz: np.ndarray
    cov_yz: np.ndarray

    def __post_init__(self):
        cx = validate_spd(self.cov_x, name="cov_x")
        cy = validate_spd(self.cov_y, name="cov_y")
        cz = validate_spd(self.cov_z, name="cov_z")
        nx, ny, nz = cx.shape[0], cy.shape[0], cz.shape[0]
        cxy = np.atleast_2d(np.asarray(self.cov_xy, dtype=float))
        cxz = np.atleast_2d(np.asarray(self.cov_xz, dtype=float))
        cyz = np.atleast_2d(np.asarray(self.cov_yz, dtype=float))
        if cxy.shape != (nx, ny):
            raise DimensionMismatch(f"cov_xy must be {(nx, ny)}, got {cxy.shape}")
        if cxz.shape != (nx, nz):
            raise DimensionMismatch(f"cov_xz must be {(nx, nz)}, got {cxz.shape}")
        if cyz.shape != (ny, nz):
            raise DimensionMismatch(f"cov_yz must be {(ny, nz)}, got {cyz.shape}")
        for field, value in (("cov_x", cx), ("cov_y", cy), ("cov_z", cz),
                             ("cov_xy", cxy), ("cov_xz", cxz), ("cov_yz", cyz)):
            object.__setattr__(self, field, frozen(value))
        # the assembled joint covariance must itself be SPD
        validate_spd(self.joint(), name="joint covariance")

    @property
    def n_x(self) -> int:
        return self.cov_x.shape[0]

    @property
    def n_y(self) -> int:
        return self.cov_y.shape[0]

    @property
    def n_z(self) -> int:
        return self.cov_z.shape[0]

    def joint(self) -> np.ndarray:
        """Assembled (n_x + n_y + n_z)-dimensional covariance of (x, y, z)."""
        return np.block([
            [self.cov_x, self.cov_xy, self.cov_xz],
            [self.cov_xy.T, self.cov_y, self.cov_yz],
            [self.cov_xz.T, self.cov_yz.T, self.cov_z],
        ])


@dataclass(frozen=True)
class ConditionalStats:
    """Conditional covariances and regression coefficients derived from a
    JointModel.

    ``coef_x_from_y`` and ``coef_x_from_z`` are the coefficient blocks of the
    joint MMSE regression of x on (y, z); ``coef_y_from_z`` regresses y on z.
    Construction checks the gap identity

        coef_x_from_y @ cov_y_given_z @ coef_x_from_y.T
            == cov_x_given_z - cov_x_given_yz

    which ties the observation quality to the conditional-covariance gap.
    """

    cov_x_given_z: np.ndarray
    cov_x_given_yz: np.ndarray
    cov_y_given_z: np.ndarray
    coef_x_from_y: np.ndarray
    coef_x_from_z: np.ndarray
    coef_y_from_z: np.ndarray

    def __post_init__(self):
        cxz = validate_spd(self.cov_x_given_z, name="cov_x_given_z")
        cxyz = validate_spd(self.cov_x_given_yz, name="cov_x_given_yz")
        cyz = validate_spd(self.cov_y_given_z, name="cov_y_given_z")
        scale = max(spectral_norm(cxz), 1.0)
        if min_eigval(cxz - cxyz) < -PD_TOL * scale:
            raise ValueError(
                "cov_x_given_yz must be Loewner-dominated by cov_x_given_z"
            )
        c = np.atleast_2d(np.asarray(self.coef_x_from_y, dtype=float))
        gap = c @ cyz @ c.T - (cxz - cxyz)
        if spectral_norm(gap) > RTOL * scale:
            raise ValueError(
                f"gap identity violated: residual {spectral_norm(gap):.3e}"
            )
        for field in ("cov_x_given_z", "cov_x_given_yz", "cov_y_given_z",
                      "coef_x_from_y", "coef_x_from_z", "coef_y_from_z"):
            object.__setattr__(
                self, field,
                frozen(np.atleast_2d(np.asarray(getattr(self, field), dtype=float))),
            )

    @property
    def n_x(self) -> int:
        return self.cov_x_given_z.shape[0]

    @property
    def n_y(self) -> int:
        return self.cov_y_given_z.shape[0]


def _check_index_sets(dim: int, idx_target, idx_given) -> tuple[list, list]:
    ti = [int(i) for i in idx_target]
    gi = [int(i) for i in idx_given]
    for i in ti + gi:
        if not 0 <= i < dim:
            raise IndexError(f"index {i} out of range for dimension {dim}")
    if len(set(ti)) != len(ti) or len(set(gi)) != len(gi):
        raise IndexError("index sets must not contain duplicates")
    if set(ti) & set(gi):
        raise IndexError("target and given index sets must be disjoint")
    if not ti:
        raise IndexError("target index set is empty")
    return ti, gi


def schur_conditional(joint, idx_target, idx_given, *, pd_tol: float = PD_TOL):
    """Conditional covariance of one Gaussian block given another.

    Computes the Schur complement

        S[t,t] - S[t,g] @ inv(S[g,g]) @ S[g,t]

    of the joint covariance, i.e. the covariance of the target block after
    optimal linear estimation from the given block.

    Parameters
    ----------
    joint : array
        Symmetric positive-definite joint covariance.
    idx_target, idx_given : sequence of int
        Disjoint index sets selecting the two blocks.  An empty given set
        returns the plain target block.

    Raises
    ------
    SingularBlock
        If the given-block covariance fails the definiteness threshold.
    IndexError
        On out-of-range, duplicate or overlapping index sets.
    """
    j = validate_spd(joint, name="joint")
    ti, gi = _check_index_sets(j.shape[0], idx_target, idx_given)
    s_tt = j[np.ix_(ti, ti)]
    if not gi:
        return s_tt
    s_tg = j[np.ix_(ti, gi)]
    s_gg = j[np.ix_(gi, gi)]
    w = np.linalg.eigvalsh(s_gg)
    if w[0] <= pd_tol * max(w[-1], 0.0):
        raise SingularBlock(
            f"given-block covariance is singular (eigenvalues in "
            f"[{w[0]:.3e}, {w[-1]:.3e}])"
        )
    out = s_tt - s_tg @ spd_solve(s_gg, s_tg.T, name="given-block covariance")
    return symmetrize(out)


def derive_stats(model: JointModel) -> ConditionalStats:
    """Derive all conditional statistics the rate computations consume.

    Returns the conditional covariances of x given z, of x given (y, z) and
    of y given z together with the MMSE regression coefficients of x on
    (y, z) and of y on z.
    """
    nx, ny, nz = model.n_x, model.n_y, model.n_z
    j = model.joint()
    ix = list(range(nx))
    iy = list(range(nx, nx + ny))
    iz = list(range(nx + ny, nx + ny + nz))

    cov_x_given_z = schur_conditional(j, ix, iz)
    cov_x_given_yz = schur_conditional(j, ix, iy + iz)
    cov_y_given_z = schur_conditional(j, iy, iz)

    cross = np.hstack([model.cov_xy, model.cov_xz])
    block_yz = j[np.ix_(iy + iz, iy + iz)]
    coef = spd_solve(block_yz, cross.T, name="(y,z) covariance").T
    coef_x_from_y = coef[:, :ny]
    coef_x_from_z = coef[:, ny:]
    coef_y_from_z = spd_solve(model.cov_z, model.cov_yz.T, name="cov_z").T

    return ConditionalStats(
        cov_x_given_z=cov_x_given_z,
        cov_x_given_yz=cov_x_given_yz,
        cov_y_given_z=cov_y_given_z,
        coef_x_from_y=coef_x_from_y,
        coef_x_from_z=coef_x_from_z,
        coef_y_from_z=coef_y_from_z,
    )


def random_instance(n_x: int, n_y: int, n_z: int, seed: int) -> JointModel:
    """Random full-rank model, deterministic in `seed`.

    The joint covariance is built in factor form A @ A.T + 0.1 * I, which is
    positive definite by construction.
    """
    if min(n_x, n_y, n_z) < 1:
        raise DimensionMismatch("all dimensions must be >= 1")
    n = n_x + n_y + n_z
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n))
    j = a @ a.T + 0.1 * np.eye(n)
    sx = slice(0, n_x)
    sy = slice(n_x, n_x + n_y)
    sz = slice(n_x + n_y, n)
    return JointModel(
        cov_x=j[sx, sx], cov_y=j[sy, sy], cov_z=j[sz, sz],
        cov_xy=j[sx, sy], cov_xz=j[sx, sz], cov_yz=j[sy, sz],
    )


def noisy_observation_instance(cov_x, obs_map, obs_noise, side_map, side_noise) -> JointModel:
    """Model with y = H x + n1 observed at the encoder and z = K x + n2 at
    the decoder, the noises independent of each other and of x.

    Parameters
    ----------
    cov_x : array
        Source covariance (SPD).
    obs_map, side_map : array
        Measurement matrices H (n_y, n_x) and K (n_z, n_x).
    obs_noise, side_noise : array
        Noise covariances of n1 and n2 (SPD).
    """
    sx = validate_spd(cov_x, name="cov_x")
    n1 = validate_spd(obs_noise, name="obs_noise")
    n2 = validate_spd(side_noise, name="side_noise")
    h = np.atleast_2d(np.asarray(obs_map, dtype=float))
    k = np.atleast_2d(np.asarray(side_map, dtype=float))
    nx = sx.shape[0]
    if h.shape[1] != nx:
        raise DimensionMismatch(f"obs_map must have {nx} columns, got {h.shape}")
    if k.shape[1] != nx:
        raise DimensionMismatch(f"side_map must have {nx} columns, got {k.shape}")
    if n1.shape[0] != h.shape[0]:
        raise DimensionMismatch("obs_noise dimension does not match obs_map rows")
    if n2.shape[0] != k.shape[0]:
        raise DimensionMismatch("side_noise dimension does not match side_map rows")
    return JointModel(
        cov_x=sx,
        cov_y=symmetrize(h @ sx @ h.T) + n1,
        cov_z=symmetrize(k @ sx @ k.T) + n2,
        cov_xy=sx @ h.T,
        cov_xz=sx @ k.T,
        cov_yz=h @ sx @ k.T,
    )
