"""Dense complex linear algebra primitives for small matrices.

Everything operates on plain ``numpy`` arrays of ``complex128`` and is sized
for the dimensions this package works at (N <= 16): Kronecker products,
partial traces, Hermitian eigendecomposition, PSD square roots, SVD, and
numerical rank.  Eigenvalues and singular values are always returned in
descending order so downstream output is deterministic.
"""

from __future__ import annotations

from typing import Literal, Sequence

import numpy as np

from .errors import NotHermitianError, NotPSDError
from .tolerances import TOL_HERM, TOL_PSD, TOL_RANK

# Pauli basis.  SX, SY, SZ square to the identity and are traceless.
ID2 = np.eye(2, dtype=complex)
SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SY = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SZ = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = (SX, SY, SZ)


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return m.conj().T


def as_complex(m) -> np.ndarray:
    """Coerce to a 2-D complex128 array, rejecting NaN/Inf entries."""
    out = np.asarray(m, dtype=complex)
    if out.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={out.ndim}")
    if not np.all(np.isfinite(out.real)) or not np.all(np.isfinite(out.imag)):
        raise ValueError("matrix has non-finite entries")
    return out


def herm_residual(m: np.ndarray) -> float:
    """Maximum entry deviation from Hermiticity."""
    return float(np.max(np.abs(m - dagger(m)))) if m.size else 0.0


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, (ra*rb) x (ca*cb)."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def partial_trace(
    m: np.ndarray,
    dim_sys: int,
    dim_env: int,
    over: Literal["sys", "env"] = "env",
) -> np.ndarray:
    """Trace out one tensor factor of a (dim_sys*dim_env)-dimensional matrix.

    The composite ordering is system-first: index ``(s, e) -> s*dim_env + e``,
    matching ``kron(system_op, env_op)``.

    Parameters
    ----------
    m : np.ndarray
        Square matrix of dimension dim_sys * dim_env.
    dim_sys, dim_env : int
        Factor dimensions.
    over : "sys" | "env"
        Which factor to trace out; the result lives on the other one.
    """
    m = as_complex(m)
    dim = dim_sys * dim_env
    if m.shape != (dim, dim):
        raise ValueError(
            f"matrix shape {m.shape} does not match dim_sys*dim_env = {dim}"
        )
    blocks = m.reshape(dim_sys, dim_env, dim_sys, dim_env)
    if over == "env":
        return np.einsum("iaja->ij", blocks)
    if over == "sys":
        return np.einsum("aiaj->ij", blocks)
    raise ValueError(f"over must be 'sys' or 'env', got {over!r}")


def herm_eig(h: np.ndarray, tol: float = TOL_HERM) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvectors as columns, so
    ``h = V @ diag(w) @ V.conj().T``.

    Raises
    ------
    NotHermitianError
        If the input deviates from Hermiticity by more than ``tol``.
    """
    h = as_complex(h)
    if h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    res = herm_residual(h)
    if res > tol:
        raise NotHermitianError("matrix is not Hermitian", residual=res)
    w, v = np.linalg.eigh(h)
    return w[::-1].copy(), v[:, ::-1].copy()


def psd_sqrt(p: np.ndarray, tol: float = TOL_PSD) -> np.ndarray:
    """Hermitian PSD square root S with S @ S = p.

    Eigenvalues in ``[-tol, 0]`` are clamped to zero; anything below ``-tol``
    raises ``NotPSDError``.
    """
    w, v = herm_eig(p)
    low = float(w.min()) if w.size else 0.0
    if low < -tol:
        raise NotPSDError("matrix has a negative eigenvalue", residual=low)
    root = np.sqrt(np.clip(w, 0.0, None))
    s = (v * root) @ dagger(v)
    return 0.5 * (s + dagger(s))


def svd(m: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Singular value decomposition m = u @ diag(d) @ v.

    ``u`` and ``v`` are unitary and ``d`` is non-negative, descending.
    """
    u, d, v = np.linalg.svd(as_complex(m))
    return u, d, v


def matrix_rank(mats: Sequence[np.ndarray], tol_rank: float = TOL_RANK) -> int:
    """Numerical rank of a set of same-shaped matrices under vectorization.

    Counts singular values above ``tol_rank`` times the largest one.
    """
    if len(mats) == 0:
        raise ValueError("matrix_rank needs at least one matrix")
    shape = np.shape(mats[0])
    rows = []
    for m in mats:
        m = as_complex(m)
        if m.shape != shape:
            raise ValueError(f"matrix shape {m.shape} differs from {shape}")
        rows.append(m.ravel())
    s = np.linalg.svd(np.array(rows), compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol_rank * s[0]))
