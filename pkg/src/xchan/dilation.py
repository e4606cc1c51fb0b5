"""Unitary system-environment realization of a channel.

A trace-preserving channel with operators {C_1 .. C_k} on an N-level system
embeds into a unitary u on the Nk-dimensional space system (x) environment:
with the environment started in the pure basis state |0>, the block of u
acting on sys (x) |0> is the isometry V = sum_i C_i (x) |i><0|, and

    B(rho) = Tr_env[u (rho (x) |0><0|) u^dag].

The remaining columns of u are free; they are filled by orthonormal
completion with a deterministic pivot (largest-remaining-norm standard
basis vector first), so the same channel always yields the same u.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import KrausChannel, check_trace_preserving
from .errors import NotTracePreservingError, ValidationError
from .linalg import as_complex, dagger, kron, partial_trace
from .states import DensityMatrix
from .tolerances import TOL_UNITARY


@dataclass(frozen=True)
class DilationModel:
    """Unitary u on sys (x) env with a pure initial environment state."""

    dim_sys: int
    dim_env: int
    u: np.ndarray
    env_state: int = 0

    def __post_init__(self):
        if self.dim_sys < 1 or self.dim_env < 1:
            raise ValueError("dimensions must be positive")
        if not 0 <= self.env_state < self.dim_env:
            raise ValueError(
                f"env_state {self.env_state} out of range for dim {self.dim_env}"
            )
        u = as_complex(self.u)
        total = self.dim_sys * self.dim_env
        if u.shape != (total, total):
            raise ValueError(
                f"unitary must be {total}x{total} for dims "
                f"({self.dim_sys}, {self.dim_env}), got {u.shape}"
            )
        res = float(np.max(np.abs(dagger(u) @ u - np.eye(total))))
        if res > TOL_UNITARY:
            raise ValidationError("u is not unitary", residual=res)
        u = u.copy()
        u.setflags(write=False)
        object.__setattr__(self, "u", u)


def stinespring(ch: KrausChannel) -> DilationModel:
    """Dilate a trace-preserving channel to a unitary model.

    The environment dimension equals the operator count k.  Column c*k of u
    (the image of basis state |c> (x) |0>) is column c of the isometry
    sum_i C_i (x) |i>; the other columns come from the deterministic
    orthonormal completion.

    Raises
    ------
    NotTracePreservingError
        If the completeness sum deviates, since then V is not an isometry.
    """
    tp = check_trace_preserving(ch)
    if not tp.ok:
        raise NotTracePreservingError(
            "dilation requires a trace-preserving channel", residual=tp.residual
        )
    n = ch.dim
    k = len(ch)
    basis_env = np.eye(k, dtype=complex)
    isometry = sum(
        kron(c, basis_env[:, [i]]) for i, c in enumerate(ch.kraus)
    )
    total = n * k
    u = np.zeros((total, total), dtype=complex)
    fixed = [c * k for c in range(n)]
    u[:, fixed] = isometry
    ortho = isometry.copy()
    free = [j for j in range(total) if j not in set(fixed)]
    for j in free:
        # Residual norm of basis vector e_t is 1 - the t-th row norm of the
        # orthonormal stack; pick the largest, ties to the lowest index.
        leftover = 1.0 - np.sum(np.abs(ortho) ** 2, axis=1)
        pick = int(np.argmax(leftover))
        col = -ortho @ np.conj(ortho[pick, :])
        col[pick] += 1.0
        # Re-orthogonalize once; single-pass Gram-Schmidt drifts.
        col = col - ortho @ (dagger(ortho) @ col)
        col = col / np.linalg.norm(col)
        u[:, j] = col
        ortho = np.column_stack([ortho, col])
    return DilationModel(dim_sys=n, dim_env=k, u=u)


def evolve_via_dilation(model: DilationModel, rho: DensityMatrix) -> DensityMatrix:
    """Apply Tr_env[u (rho (x) |e><e|) u^dag] for the model's pure env state.

    Raises
    ------
    ValueError
        If the state dimension does not match the model's system dimension.
    """
    if rho.dim != model.dim_sys:
        raise ValueError(
            f"state dim {rho.dim} does not match system dim {model.dim_sys}"
        )
    env = np.zeros((model.dim_env, model.dim_env), dtype=complex)
    env[model.env_state, model.env_state] = 1.0
    total = model.u @ kron(rho.mat, env) @ dagger(model.u)
    out = partial_trace(total, model.dim_sys, model.dim_env, over="env")
    out = 0.5 * (out + dagger(out))
    return DensityMatrix(out)


def kraus_from_dilation(model: DilationModel) -> KrausChannel:
    """Read the Kraus operators back out of a dilation.

    C_i[r, c] = u[r*k + i, c*k + e] where k is the environment dimension and
    e the initial environment state; inverse of ``stinespring`` up to the
    free columns.
    """
    n, k, e = model.dim_sys, model.dim_env, model.env_state
    blocks = model.u.reshape(n, k, n, k)
    ops = tuple(np.ascontiguousarray(blocks[:, i, :, e]) for i in range(k))
    return KrausChannel(ops)
