"""Qubit extremal channels and their Bloch-ball geometry.

A two-parameter family: axis multipliers 0 < nu1, nu2 <= 1 fix the third as
nu3 = nu1 * nu2, and the channel maps the Bloch ball onto an ellipsoid with
semi-axes (nu1, nu2, nu3) whose center is displaced along z by

    t3 = sqrt((1 - nu3)^2 - (nu1 - nu2)^2).

The two diagonal factors are D_1 = diag(a, b) and D_2 = sqrt(I - D_1^2)
with a = mu0 + mu3, b = mu0 - mu3 and

    mu0 = sqrt(1 + nu1 + nu2 + nu3) / 2,
    mu3 = sqrt(1 + nu3 - nu1 - nu2) / 2.

The 1/2 coefficients are forced by consistency: they give 2ab = nu1 + nu2
and a^2 + b^2 = 1 + nu3, which together produce the x-y multipliers and the
translation above.  (A coefficient 1/4 breaks both identities by a factor
of 4; see the tests.)  mu3 stays real on the whole domain because
1 + nu3 - nu1 - nu2 = (1 - nu1)(1 - nu2) >= 0, and a <= 1 follows from the
same factorization.

The raw pair {D_1, U D_2} produces multipliers (max(nu1, nu2), min(nu1,
nu2), nu3) when U = sigma_x.  To realize the requested order (nu1, nu2,
nu3) for every parameter pair, U switches to sigma_y when nu1 < nu2, which
swaps the roles of the x and y axes; it is the same channel up to the axis
relabeling the construction leaves free.  With a >= b the translation
points along +z.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import KrausChannel, apply_to_matrix
from .errors import ValidationError
from .extremal import build_extremal, complete_last_diagonal
from .linalg import ID2, PAULIS, SX, SY
from .states import DensityMatrix, bloch_to_rho, rho_to_bloch


@dataclass(frozen=True)
class NuParams:
    """Axis multipliers for the x and y Bloch axes, each in (0, 1]."""

    nu1: float
    nu2: float

    def __post_init__(self):
        for name in ("nu1", "nu2"):
            value = float(getattr(self, name))
            if not np.isfinite(value) or not 0.0 < value <= 1.0:
                raise ValidationError(f"{name} must lie in (0, 1], got {value}")
            object.__setattr__(self, name, value)

    @property
    def nu3(self) -> float:
        return self.nu1 * self.nu2


@dataclass(frozen=True)
class BlochAffine:
    """Affine action w -> t_lin @ w + t_vec on Bloch vectors."""

    t_lin: np.ndarray
    t_vec: np.ndarray

    def __post_init__(self):
        lin = np.asarray(self.t_lin, dtype=float)
        vec = np.asarray(self.t_vec, dtype=float)
        if lin.shape != (3, 3):
            raise ValueError(f"linear part must be 3x3, got {lin.shape}")
        if vec.shape != (3,):
            raise ValueError(f"translation must be length 3, got {vec.shape}")
        lin = lin.copy()
        vec = vec.copy()
        lin.setflags(write=False)
        vec.setflags(write=False)
        object.__setattr__(self, "t_lin", lin)
        object.__setattr__(self, "t_vec", vec)

    def transform(self, w) -> np.ndarray:
        w = np.asarray(w, dtype=float)
        if w.shape != (3,):
            raise ValueError(f"Bloch vector must be length 3, got {w.shape}")
        return self.t_lin @ w + self.t_vec


def nu_to_diagonals(p: NuParams) -> tuple[float, float]:
    """Entries (a, b) of the first diagonal factor for the (nu1, nu2) channel.

    Satisfies 2ab = nu1 + nu2 and a^2 + b^2 = 1 + nu1*nu2, with
    1 >= a >= b >= 0.
    """
    nu3 = p.nu3
    mu0 = 0.5 * np.sqrt(1.0 + p.nu1 + p.nu2 + nu3)
    mu3 = 0.5 * np.sqrt(max(1.0 + nu3 - p.nu1 - p.nu2, 0.0))
    a = min(mu0 + mu3, 1.0)
    b = mu0 - mu3
    return float(a), float(b)


def channel_from_nu(p: NuParams) -> KrausChannel:
    """Extremal qubit channel with Bloch multipliers (nu1, nu2, nu1*nu2)."""
    a, b = nu_to_diagonals(p)
    params = complete_last_diagonal(np.array([[a, b]]))
    u2 = SX if p.nu1 >= p.nu2 else SY
    return build_extremal(params, unitaries=[ID2.copy(), u2])


def bloch_affine(ch: KrausChannel) -> BlochAffine:
    """Affine Bloch-vector action of a qubit channel.

    t_lin[i, j] = Tr[sigma_i B(sigma_j)] / 2 and t_vec[i] =
    Tr[sigma_i B(I)] / 2, read off by applying the channel to the Pauli
    basis.
    """
    if ch.dim != 2:
        raise ValidationError(
            f"Bloch geometry needs a qubit channel, got dim {ch.dim}"
        )
    t_lin = np.empty((3, 3))
    t_vec = np.empty(3)
    image_id = apply_to_matrix(ch, ID2)
    for i, si in enumerate(PAULIS):
        t_vec[i] = 0.5 * np.trace(si @ image_id).real
        for j, sj in enumerate(PAULIS):
            t_lin[i, j] = 0.5 * np.trace(si @ apply_to_matrix(ch, sj)).real
    return BlochAffine(t_lin, t_vec)


def predicted_translation(p: NuParams) -> float:
    """Center displacement t3 of the image ellipsoid along z.

    t3 = sqrt((1 - nu3)^2 - (nu1 - nu2)^2) with nu3 = nu1*nu2; the radicand
    factors as (1 - nu1^2)(1 - nu2^2) and is non-negative on the domain.
    """
    nu3 = p.nu3
    radicand = (1.0 - nu3) ** 2 - (p.nu1 - p.nu2) ** 2
    return float(np.sqrt(max(radicand, 0.0)))


def ellipsoid_samples(
    p: NuParams, count: int, seed: int
) -> tuple[np.ndarray, np.ndarray]:
    """Push ``count`` Bloch-sphere points through the (nu1, nu2) channel.

    Inputs are uniform on the unit sphere (normalized Gaussians); outputs
    lie on the image ellipsoid.  Returns ``(w_in, w_out)`` as (count, 3)
    arrays, row i of one matching row i of the other.
    """
    if count < 1:
        raise ValueError(f"need count >= 1, got {count}")
    rng = np.random.default_rng(seed)
    w_in = rng.standard_normal((count, 3))
    norms = np.linalg.norm(w_in, axis=1, keepdims=True)
    # A zero draw is astronomically unlikely; resample rather than divide.
    while np.any(norms == 0.0):
        bad = norms[:, 0] == 0.0
        w_in[bad] = rng.standard_normal((int(bad.sum()), 3))
        norms = np.linalg.norm(w_in, axis=1, keepdims=True)
    w_in = w_in / norms
    affine = bloch_affine(channel_from_nu(p))
    w_out = w_in @ affine.t_lin.T + affine.t_vec[None, :]
    return w_in, w_out


def image_bloch(ch: KrausChannel, w) -> np.ndarray:
    """Bloch vector of the channel output on the state with Bloch vector w."""
    rho = bloch_to_rho(w)
    out = apply_to_matrix(ch, rho.mat)
    return rho_to_bloch(DensityMatrix(out))
